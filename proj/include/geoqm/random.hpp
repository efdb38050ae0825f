// random.hpp: seeded, platform-stable random sampling of states and operators.
//
// std::normal_distribution is implementation-defined, so Gaussian variates are
// produced here by Box–Muller on top of mt19937_64 to keep sampled inputs (and
// therefore CLI outputs) identical across standard libraries.

#pragma once

#include "geoqm/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace geoqm {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream for work item `index` under a base seed.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    double uniform();                        // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    Complex complex_normal();                // E|z|^2 = 1

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Complex-Gaussian entries, normalized to unit norm. Components with
// |z_k| < min_modulus are resampled so sampled states avoid the measure-zero
// loci where some coordinate vanishes.
CVector random_state(Eigen::Index n, Rng& rng, double min_modulus = 1e-3);
RealPoint random_point(Eigen::Index n, Rng& rng, double min_modulus = 1e-3);
std::vector<RealPoint> sample_points(Eigen::Index n, std::size_t count, std::uint64_t seed);

// (G + G^†)/2 with complex-Gaussian G; exactly Hermitian entrywise.
HermitianOperator random_hermitian(Eigen::Index n, Rng& rng);
CMatrix random_complex_matrix(Eigen::Index n, Rng& rng);
RMatrix random_real_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
RMatrix random_antisymmetric(Eigen::Index n, Rng& rng);
RMatrix random_symmetric(Eigen::Index n, Rng& rng);

}  // namespace geoqm
