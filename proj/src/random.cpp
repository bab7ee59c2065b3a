#include "dualrank/random.hpp"

#include <cmath>

namespace dualrank {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    // splitmix64 finalizer over the combined state
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Eigen::VectorXd uniform_vector(Rng& rng, Eigen::Index size, double lo, double hi)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd v(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        v[i] = dist(rng);
    }
    return v;
}

Eigen::MatrixXd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols)
{
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = dist(rng);
        }
    }
    return m;
}

Eigen::VectorXd unit_vector(Rng& rng, Eigen::Index size)
{
    Eigen::VectorXd v = gaussian_matrix(rng, size, 1).col(0);
    return v / v.norm();
}

Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index size)
{
    const Eigen::MatrixXd g = gaussian_matrix(rng, size, size);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(size, size);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < size; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) *= -1.0;
        }
    }
    return q;
}

Eigen::MatrixXd random_invertible(Rng& rng, Eigen::Index size)
{
    const Eigen::MatrixXd q1 = random_orthogonal(rng, size);
    const Eigen::MatrixXd q2 = random_orthogonal(rng, size);
    const Eigen::VectorXd s = uniform_vector(rng, size, 0.5, 2.0);
    return q1 * s.asDiagonal() * q2;
}

} // namespace dualrank
