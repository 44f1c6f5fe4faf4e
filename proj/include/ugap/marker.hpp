#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "ugap/log2.hpp"
#include "ugap/spectra.hpp"

namespace ugap::marker {

// Path Laplacian with endpoint degree 1, minus one at the last diagonal entry.
struct MarkerMatrix {
    int w = 0;
    Eigen::MatrixXd matrix;
};

// Sweep falloff: f = C * (L + r).
struct FalloffSpec {
    std::int64_t C = 1;
    std::int64_t L = 1;
    std::int64_t r = 1;

    std::int64_t f() const;
    void validate() const;
};

struct Interval {
    double lower = 0;
    double upper = 0;
};

// Negative energy interval [-lower_mag, -upper_mag] kept as log2 magnitudes.
struct EdgeEnergy {
    Log2 lower_mag;
    Log2 upper_mag;
};

inline constexpr int kMaxSegmentF = 20;

MarkerMatrix delta_prime(int w);

// det(lambda I - delta_prime(w)) via the closed form; falls back to the
// tridiagonal recurrence near the branch points 0 and 4.
std::complex<double> char_poly_value(int w, std::complex<double> lambda);
double char_poly_recurrence(int w, double lambda);

Interval lambda_min_bounds(int w);
double lambda_min(int w);

EdgeEnergy edge_energy_bounds(const FalloffSpec& spec);

// Path-clock operator equal to delta_prime(f) followed by `padding` isolated
// zero-energy states.
HermitianOperator marker_segment_hamiltonian(const FalloffSpec& spec, int padding = 0);

// lambda_min of the segment operator plus the 1/2 boundary offset.
double segment_energy(const FalloffSpec& spec);

}  // namespace ugap::marker
