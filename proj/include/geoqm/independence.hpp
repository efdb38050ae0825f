// independence.hpp: functional independence of quadratic observables under
// the pointwise product, and the dual-basis product playground.

#pragma once

#include "geoqm/types.hpp"

#include <string>
#include <vector>

namespace geoqm {

enum class Verdict { independent, dependent, borderline };

std::string to_string(Verdict v);

struct IndependenceReport {
    std::vector<std::string> functions;
    std::vector<RealPoint> sample_points;
    std::vector<int> jacobian_rank_per_point;
    std::vector<double> min_singular_value_per_point;
    int full_rank_count = 0;
    Verdict verdict = Verdict::borderline;
};

struct IndependenceOptions {
    // Relative threshold: singular values <= svd_tol * sigma_max count as zero.
    double svd_tol = 1e-8;
    double independent_fraction = 0.95;
    double dependent_fraction = 0.05;
};

// Rank of {df_{A_i}} at each sample; df_A(psi) is the realification of A psi.
IndependenceReport independence_test(const std::vector<HermitianOperator>& ops,
                                     const std::vector<RealPoint>& samples,
                                     const IndependenceOptions& opts = {},
                                     std::vector<std::string> names = {});

IndependenceReport independence_test(const std::vector<HermitianOperator>& ops,
                                     const std::vector<RealPoint>& samples, double svd_tol);

// c[j][k] = l_j l_k (l_k - l_j) over the ascending eigenvalues of A: the
// coefficient of zbar_j z_k dz_j ^ dzbar_k in df_A ^ df_{A^2} (eigenbasis).
RMatrix wedge_coefficients(const HermitianOperator& a);

// Dual-basis function: A_hat(e_jk) = e_jk(A) = <e_k, A e_j> = A(k, j).
class DualBasisFunction {
public:
    explicit DualBasisFunction(CMatrix op);

    Complex operator()(Eigen::Index j, Eigen::Index k) const { return op_(k, j); }
    Eigen::Index dim() const noexcept { return op_.rows(); }
    const CMatrix& op() const noexcept { return op_; }

    // Values on the full e_jk grid, indexed grid(j, k).
    CMatrix grid() const { return op_.transpose(); }

private:
    CMatrix op_;
};

enum class DualProduct { hadamard, composition };

DualBasisFunction dual_products(const CMatrix& a, const CMatrix& b, DualProduct kind);

}  // namespace geoqm
