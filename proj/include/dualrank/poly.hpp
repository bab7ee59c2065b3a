#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace dualrank {

/// Real polynomial in one variable, coefficients in ascending degree.
struct Poly1 {
    std::vector<double> coefficients;
    int degree_bound{0};
    /// Magnitude of the data the polynomial was built from; the identically-zero
    /// test compares coefficients against kZeroPolyFloor * scale.
    double scale{1.0};

    double operator()(double x) const;
    double max_abs_coefficient() const;
    bool is_identically_zero() const;
};

inline constexpr double kZeroPolyFloor = 1e-10;
/// Eigenvalues of the companion matrix closer than this (relative) form one root.
inline constexpr double kRootClusterTol = 1e-4;

struct Root {
    double value{0.0};
    int multiplicity{1};
};

/// Interpolating polynomial of degree <= degree_bound (Vandermonde solve).
Poly1 poly_from_samples(const std::vector<double>& xs, const std::vector<double>& ys, int degree_bound);

/// Real roots inside [lo, hi], ascending, with multiplicity = cluster size.
/// Throws DegenerateLeaf if p is identically zero at its scale.
std::vector<Root> real_roots(const Poly1& p, std::pair<double, double> interval);

} // namespace dualrank
