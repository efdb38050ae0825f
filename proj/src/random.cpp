#include "geoqm/random.hpp"

#include <cmath>
#include <numbers>

namespace geoqm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(seed) ^ (index + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CVector random_state(Eigen::Index n, Rng& rng, double min_modulus) {
    for (;;) {
        CVector z(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            do {
                z(k) = rng.complex_normal();
            } while (std::abs(z(k)) < min_modulus);
        }
        const double norm = z.norm();
        if (norm > 0.0) {
            z /= norm;
            return z;
        }
    }
}

RealPoint random_point(Eigen::Index n, Rng& rng, double min_modulus) {
    return RealPoint::from_complex(random_state(n, rng, min_modulus));
}

std::vector<RealPoint> sample_points(Eigen::Index n, std::size_t count, std::uint64_t seed) {
    std::vector<RealPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = Rng::stream(seed, i);
        out.push_back(random_point(n, rng));
    }
    return out;
}

CMatrix random_complex_matrix(Eigen::Index n, Rng& rng) {
    CMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) g(j, k) = rng.complex_normal();
    return g;
}

HermitianOperator random_hermitian(Eigen::Index n, Rng& rng) {
    const CMatrix g = random_complex_matrix(n, rng);
    CMatrix h(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        h(j, j) = Complex(g(j, j).real(), 0.0);
        for (Eigen::Index k = j + 1; k < n; ++k) {
            h(j, k) = 0.5 * (g(j, k) + std::conj(g(k, j)));
            h(k, j) = std::conj(h(j, k));
        }
    }
    return HermitianOperator(std::move(h));
}

RMatrix random_real_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    RMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < rows; ++j)
        for (Eigen::Index k = 0; k < cols; ++k) m(j, k) = rng.normal();
    return m;
}

RMatrix random_antisymmetric(Eigen::Index n, Rng& rng) {
    RMatrix m = RMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k) {
            m(j, k) = rng.normal();
            m(k, j) = -m(j, k);
        }
    return m;
}

RMatrix random_symmetric(Eigen::Index n, Rng& rng) {
    RMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j; k < n; ++k) {
            m(j, k) = rng.normal();
            m(k, j) = m(j, k);
        }
    return m;
}

}  // namespace geoqm
