#pragma once

// Phase encoding of real targets: U_G(2 pi a / 2^m) followed by the inverse
// QFT spreads the outcome over the Fejer distribution around a.

#include <vector>

namespace qdgas {

struct FejerDistribution {
    int m = 0;
    double a = 0.0;
    std::vector<double> probabilities;  // indexed by register value j
    /// Largest elementwise gap between the closed form and the simulation.
    double route_discrepancy = 0.0;
};

/// Closed form: p_j = |<G(2 pi j / 2^m), G(theta)>|^2 / 2^{2m}.
std::vector<double> fejer_closed_form(double a, int m);

/// Simulates H^m, U_G(2 pi a / 2^m), inverse QFT and reads the probabilities.
std::vector<double> fejer_simulated(double a, int m);

/// Computes both routes and throws std::logic_error if they disagree beyond
/// 1e-9.
FejerDistribution fejer_distribution(double a, int m);

/// Mass on the two integers nearest a (one integer when a is integral),
/// taken mod 2^m.
double two_nearest_mass(const FejerDistribution& d);

}  // namespace qdgas
