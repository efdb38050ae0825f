#include "geoqm/independence.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>

namespace geoqm {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::independent: return "independent";
        case Verdict::dependent: return "dependent";
        case Verdict::borderline: return "borderline";
    }
    return "unknown";
}

IndependenceReport independence_test(const std::vector<HermitianOperator>& ops,
                                     const std::vector<RealPoint>& samples,
                                     const IndependenceOptions& opts,
                                     std::vector<std::string> names) {
    if (ops.size() < 2) throw std::invalid_argument("independence_test: need at least 2 operators");
    if (samples.empty()) throw std::invalid_argument("independence_test: empty sample set");
    if (samples.size() < 10) throw std::invalid_argument("independence_test: need at least 10 samples");
    if (!(opts.svd_tol > 0.0)) throw std::invalid_argument("independence_test: svd_tol must be positive");
    const Eigen::Index n = ops.front().dim();
    for (const auto& op : ops) {
        if (op.dim() != n) throw std::invalid_argument("independence_test: dimension mismatch");
    }
    if (names.empty()) {
        for (std::size_t i = 0; i < ops.size(); ++i) names.push_back("f" + std::to_string(i));
    } else if (names.size() != ops.size()) {
        throw std::invalid_argument("independence_test: names/ops size mismatch");
    }

    IndependenceReport rep;
    rep.functions = std::move(names);
    rep.sample_points = samples;
    const auto m = static_cast<Eigen::Index>(ops.size());
    for (const RealPoint& s : samples) {
        if (s.n() != n) throw std::invalid_argument("independence_test: sample dimension mismatch");
        const CVector z = s.to_complex();
        RMatrix grads(m, 2 * n);
        for (Eigen::Index i = 0; i < m; ++i) {
            grads.row(i) = realify(CVector(ops[static_cast<std::size_t>(i)].matrix() * z)).transpose();
        }
        Eigen::JacobiSVD<RMatrix> svd(grads);
        const RVector& sv = svd.singularValues();
        const double cutoff = opts.svd_tol * (sv.size() > 0 ? sv(0) : 0.0);
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > cutoff) ++rank;
        }
        rep.jacobian_rank_per_point.push_back(rank);
        rep.min_singular_value_per_point.push_back(sv.size() > 0 ? sv(sv.size() - 1) : 0.0);
        if (rank == m) ++rep.full_rank_count;
    }
    const double frac = static_cast<double>(rep.full_rank_count) / static_cast<double>(samples.size());
    if (frac >= opts.independent_fraction) {
        rep.verdict = Verdict::independent;
    } else if (frac <= opts.dependent_fraction) {
        rep.verdict = Verdict::dependent;
    } else {
        rep.verdict = Verdict::borderline;
    }
    return rep;
}

IndependenceReport independence_test(const std::vector<HermitianOperator>& ops,
                                     const std::vector<RealPoint>& samples, double svd_tol) {
    IndependenceOptions opts;
    opts.svd_tol = svd_tol;
    return independence_test(ops, samples, opts);
}

RMatrix wedge_coefficients(const HermitianOperator& a) {
    const RVector lam = Eigen::SelfAdjointEigenSolver<CMatrix>(a.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
    const Eigen::Index n = lam.size();
    RMatrix c(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) c(j, k) = lam(j) * lam(k) * (lam(k) - lam(j));
    return c;
}

DualBasisFunction::DualBasisFunction(CMatrix op) : op_(std::move(op)) {
    if (op_.rows() != op_.cols()) throw std::invalid_argument("DualBasisFunction: matrix must be square");
}

DualBasisFunction dual_products(const CMatrix& a, const CMatrix& b, DualProduct kind) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("dual_products: dimension mismatch");
    }
    switch (kind) {
        case DualProduct::hadamard: return DualBasisFunction(a.cwiseProduct(b));
        case DualProduct::composition: return DualBasisFunction(a * b);
    }
    throw std::invalid_argument("dual_products: unknown kind");
}

}  // namespace geoqm
