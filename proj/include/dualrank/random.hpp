#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace dualrank {

using Rng = std::mt19937_64;

/// Seed for an independent stream; analyses at sample k use derive_seed(master, k)
/// so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

Eigen::VectorXd uniform_vector(Rng& rng, Eigen::Index size, double lo = -1.0, double hi = 1.0);
Eigen::VectorXd unit_vector(Rng& rng, Eigen::Index size);
Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign correction).
Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index size);

/// Q1 * diag(s) * Q2 with s in [0.5, 2]; condition number at most 4.
Eigen::MatrixXd random_invertible(Rng& rng, Eigen::Index size);

} // namespace dualrank
