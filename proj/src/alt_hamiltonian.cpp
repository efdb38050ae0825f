#include "geoqm/alt_hamiltonian.hpp"

#include "geoqm/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace geoqm {

namespace {

void require_square(const RMatrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
    }
}

// Parametrizations: antisymmetric by entries (i<j), symmetric by entries (i<=j).
std::vector<RMatrix> antisymmetric_basis(Eigen::Index n) {
    std::vector<RMatrix> b;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            RMatrix e = RMatrix::Zero(n, n);
            e(i, j) = 1.0;
            e(j, i) = -1.0;
            b.push_back(std::move(e));
        }
    return b;
}

std::vector<RMatrix> symmetric_basis(Eigen::Index n) {
    std::vector<RMatrix> b;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            RMatrix e = RMatrix::Zero(n, n);
            e(i, j) = 1.0;
            e(j, i) = 1.0;
            b.push_back(std::move(e));
        }
    return b;
}

RMatrix combine(const std::vector<RMatrix>& basis, const RVector& c) {
    RMatrix out = RMatrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t i = 0; i < basis.size(); ++i) out += c(static_cast<Eigen::Index>(i)) * basis[i];
    return out;
}

Eigen::Map<const RVector> vec(const RMatrix& m) { return {m.data(), m.size()}; }

// argmin over symmetric H of |A - Lambda H|_F.
RMatrix solve_symmetric(const RMatrix& lambda, const RMatrix& a) {
    const auto basis = symmetric_basis(a.rows());
    RMatrix m(a.size(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const RMatrix col = lambda * basis[i];
        m.col(static_cast<Eigen::Index>(i)) = vec(col);
    }
    const RVector x = m.completeOrthogonalDecomposition().solve(RVector(vec(a)));
    return combine(basis, x);
}

// argmin over antisymmetric Lambda of |A - Lambda H|_F.
RMatrix solve_antisymmetric(const RMatrix& h, const RMatrix& a) {
    const auto basis = antisymmetric_basis(a.rows());
    if (basis.empty()) return RMatrix::Zero(a.rows(), a.cols());
    RMatrix m(a.size(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const RMatrix col = basis[i] * h;
        m.col(static_cast<Eigen::Index>(i)) = vec(col);
    }
    const RVector x = m.completeOrthogonalDecomposition().solve(RVector(vec(a)));
    return combine(basis, x);
}

double reciprocal_condition(const RMatrix& m) {
    Eigen::JacobiSVD<RMatrix> svd(m);
    const RVector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0.0;
    return s(s.size() - 1) / s(0);
}

// Sign convention: the first nonzero upper-triangular entry of Lambda is negative.
void fix_sign(RMatrix& w) {
    const RMatrix lambda = w.inverse();
    for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
            if (std::abs(lambda(i, j)) > 1e-12 * max_abs(lambda)) {
                if (lambda(i, j) > 0.0) w = -w;
                return;
            }
        }
}

Factorization from_inverse(const RMatrix& a, const RMatrix& w) {
    Factorization f;
    f.A = a;
    const RMatrix linv = w.inverse();
    f.Lambda = 0.5 * (linv - linv.transpose());
    const RMatrix h = w * a;
    f.H = 0.5 * (h + h.transpose());
    f.residual = max_abs(RMatrix(a - f.Lambda * f.H));
    return f;
}

int linearization_kernel_dim(const Factorization& f) {
    const auto ab = antisymmetric_basis(f.A.rows());
    const auto sb = symmetric_basis(f.A.rows());
    RMatrix m(f.A.size(), static_cast<Eigen::Index>(ab.size() + sb.size()));
    Eigen::Index c = 0;
    for (const auto& e : ab) m.col(c++) = vec(RMatrix(e * f.H));
    for (const auto& e : sb) m.col(c++) = vec(RMatrix(f.Lambda * e));
    Eigen::JacobiSVD<RMatrix> svd(m);
    const RVector& s = svd.singularValues();
    const double cutoff = 1e-8 * std::max(1.0, s.size() ? s(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > cutoff ? 1 : 0;
    return static_cast<int>(m.cols()) - rank;
}

}  // namespace

Factorization factorization_for(const RMatrix& a, const RMatrix& lambda) {
    require_square(a, "factorization_for");
    if (lambda.rows() != a.rows() || lambda.cols() != a.cols()) {
        throw std::invalid_argument("factorization_for: dimension mismatch");
    }
    if (max_abs(RMatrix(lambda + lambda.transpose())) > 1e-12 * std::max(1.0, max_abs(lambda))) {
        throw std::invalid_argument("factorization_for: Lambda must be antisymmetric");
    }
    Factorization f;
    f.A = a;
    f.Lambda = lambda;
    f.H = solve_symmetric(lambda, a);
    f.residual = max_abs(RMatrix(a - lambda * f.H));
    return f;
}

bool FactorizationFamily::contains(const RMatrix& lambda, double tol) const {
    if (inverse_basis.empty() || lambda.rows() != inverse_basis.front().rows()) return false;
    Eigen::FullPivLU<RMatrix> lu(lambda);
    if (!lu.isInvertible()) return false;
    const RMatrix w = lu.inverse();
    RMatrix b(w.size(), static_cast<Eigen::Index>(inverse_basis.size()));
    for (std::size_t i = 0; i < inverse_basis.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = vec(inverse_basis[i]);
    const RVector target = vec(w);
    const RVector coeffs = b.completeOrthogonalDecomposition().solve(target);
    return (b * coeffs - target).norm() <= tol * std::max(1.0, target.norm());
}

FactorizationFamily factorize(const RMatrix& a, const FactorizeOptions& opts) {
    require_square(a, "factorize");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("factorize: tol must be positive");
    const Eigen::Index n = a.rows();
    FactorizationFamily fam;

    // Null space of W -> W A + A^T W over antisymmetric W.
    const auto ab = antisymmetric_basis(n);
    if (!ab.empty()) {
        RMatrix c(a.size(), static_cast<Eigen::Index>(ab.size()));
        for (std::size_t i = 0; i < ab.size(); ++i) {
            c.col(static_cast<Eigen::Index>(i)) = vec(RMatrix(ab[i] * a + a.transpose() * ab[i]));
        }
        Eigen::JacobiSVD<RMatrix> svd(c, Eigen::ComputeFullV);
        const RVector& s = svd.singularValues();
        const double cutoff = 1e-9 * std::max(1.0, s.size() ? s(0) : 0.0);
        for (Eigen::Index k = 0; k < c.cols(); ++k) {
            if (k >= s.size() || s(k) <= cutoff) fam.inverse_basis.push_back(combine(ab, svd.matrixV().col(k)));
        }
    }

    if (!fam.inverse_basis.empty()) {
        const auto dim = static_cast<Eigen::Index>(fam.inverse_basis.size());
        RMatrix best;
        double best_rc = 0.0;
        for (int r = 0; r < std::max(1, opts.restarts); ++r) {
            RVector coeffs(dim);
            if (r == 0) {
                coeffs.setOnes();
            } else {
                Rng rng = Rng::stream(opts.seed, static_cast<std::uint64_t>(r));
                for (Eigen::Index i = 0; i < dim; ++i) coeffs(i) = rng.normal();
            }
            const RMatrix w = combine(fam.inverse_basis, coeffs);
            const double rc = reciprocal_condition(w);
            if (rc > best_rc) {
                best_rc = rc;
                best = w;
            }
        }
        if (best_rc > 1e-8) {
            fix_sign(best);
            fam.solutions.push_back(from_inverse(a, best));
            for (RMatrix w : fam.inverse_basis) {
                // A one-dimensional family is already represented by the particular solution.
                if (dim == 1 || reciprocal_condition(w) <= 1e-8) continue;
                fix_sign(w);
                fam.solutions.push_back(from_inverse(a, w));
            }
            fam.family_dimension = static_cast<int>(dim);
            std::erase_if(fam.solutions, [&](const Factorization& f) { return !(f.residual < opts.tol); });
            if (!fam.solutions.empty()) return fam;
        }
    }

    // Alternating least squares for singular Lambda.
    fam.singular_lambda = true;
    Factorization best;
    best.residual = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        Rng rng = Rng::stream(opts.seed, 1000 + static_cast<std::uint64_t>(r));
        RMatrix lambda = random_antisymmetric(n, rng);
        RMatrix h = RMatrix::Zero(n, n);
        double residual = std::numeric_limits<double>::infinity();
        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            h = solve_symmetric(lambda, a);
            lambda = solve_antisymmetric(h, a);
            const double scale = lambda.norm();
            if (scale == 0.0) break;
            lambda /= scale;
            h *= scale;
            const double next = max_abs(RMatrix(a - lambda * h));
            const bool stalled = residual - next <= 1e-15 * std::max(1.0, max_abs(a));
            residual = next;
            if (residual < 0.01 * opts.tol || stalled) break;
        }
        h = solve_symmetric(lambda, a);
        residual = max_abs(RMatrix(a - lambda * h));
        if (residual < best.residual) {
            best.A = a;
            best.Lambda = lambda;
            best.H = h;
            best.residual = residual;
        }
    }
    if (best.residual < opts.tol) {
        fam.family_dimension = linearization_kernel_dim(best);
        fam.solutions.push_back(std::move(best));
        return fam;
    }

    std::ostringstream diag;
    diag << "no factorization with residual < " << opts.tol << " (best " << best.residual << ")";
    const auto tr = odd_traces(a, 2);
    diag << "; odd traces:";
    for (double t : tr) diag << ' ' << t;
    if (!odd_traces_vanish(a, 2)) diag << " (nonzero odd trace obstructs A = Lambda H)";
    fam.diagnostics = diag.str();
    fam.family_dimension = 0;
    return fam;
}

FactorizationFamily factorize(const RMatrix& a, double tol) {
    FactorizeOptions opts;
    opts.tol = tol;
    return factorize(a, opts);
}

Transformed transform(const RMatrix& lambda, const RMatrix& h, const RMatrix& t) {
    require_square(t, "transform");
    if (lambda.rows() != t.rows() || h.rows() != t.rows() || lambda.cols() != t.cols() ||
        h.cols() != t.cols()) {
        throw std::invalid_argument("transform: dimension mismatch");
    }
    Eigen::JacobiSVD<RMatrix> svd(t);
    const RVector& s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-14 * s(0)) throw std::invalid_argument("transform: T is singular");
    Transformed out;
    out.cond = s(0) / s(s.size() - 1);
    const RMatrix tinv = t.partialPivLu().inverse();
    // Project away rounding so the outputs are exactly (anti)symmetric.
    const RMatrix l = t * lambda * t.transpose();
    const RMatrix k = tinv.transpose() * h * tinv;
    out.Lambda = 0.5 * (l - l.transpose());
    out.H = 0.5 * (k + k.transpose());
    return out;
}

DeformedPoisson deform_poisson(const RMatrix& lambda, const RMatrix& a, double lam) {
    require_square(a, "deform_poisson");
    if (lambda.rows() != a.rows() || lambda.cols() != a.cols()) {
        throw std::invalid_argument("deform_poisson: dimension mismatch");
    }
    if (!(std::abs(lam) <= kMaxDeformation)) {
        throw std::invalid_argument("deform_poisson: |lambda| must be <= 10");
    }
    DeformedPoisson out;
    const Factorization pre = factorization_for(a, lambda);
    out.precondition = pre.residual / std::max(1.0, max_abs(a));
    out.precondition_ok = out.precondition < 1e-9;

    const RMatrix e = (lam * a * a).exp();
    out.Lambda = e * lambda * e.transpose();
    const double ls = max_abs(out.Lambda);
    out.antisymmetry = ls > 0.0 ? max_abs(RMatrix(out.Lambda + out.Lambda.transpose())) / ls : 0.0;

    Eigen::FullPivLU<RMatrix> lu(out.Lambda);
    if (lu.isInvertible()) {
        out.H = lu.solve(a);
        const double hs = max_abs(out.H);
        out.h_symmetry = hs > 0.0 ? max_abs(RMatrix(out.H - out.H.transpose())) / hs : 0.0;
    }
    return out;
}

RMatrix deform_poisson_literal(const RMatrix& lambda, const RMatrix& a, double lam) {
    require_square(a, "deform_poisson_literal");
    const RMatrix e1 = (lam * a * a).exp();
    const RMatrix at = a.transpose();
    const RMatrix e2 = (-lam * at * at).exp();
    return e1 * lambda * e2;
}

std::vector<double> odd_traces(const RMatrix& a, int k_max) {
    require_square(a, "odd_traces");
    if (k_max < 0) throw std::invalid_argument("odd_traces: k_max must be >= 0");
    std::vector<double> out;
    const RMatrix a2 = a * a;
    RMatrix p = a;
    for (int k = 0; k <= k_max; ++k) {
        out.push_back(p.trace());
        p = p * a2;
    }
    return out;
}

bool odd_traces_vanish(const RMatrix& a, int k_max, double rel_tol) {
    const auto tr = odd_traces(a, k_max);
    const double norm = Eigen::JacobiSVD<RMatrix>(a).singularValues()(0);
    for (int k = 0; k <= k_max; ++k) {
        if (!(std::abs(tr[static_cast<std::size_t>(k)]) < rel_tol * std::pow(norm, 2 * k + 1)) &&
            tr[static_cast<std::size_t>(k)] != 0.0) {
            return false;
        }
    }
    return true;
}

TwoLevelFamily two_level_family(double a1, double a2) {
    if (a1 == 0.0 || a2 == 0.0 || !std::isfinite(a1) || !std::isfinite(a2)) {
        throw std::invalid_argument("two_level_family: coefficients must be finite and nonzero");
    }
    TwoLevelFamily f;
    f.a1 = a1;
    f.a2 = a2;
    RVector d(4);
    d << a1 * a1, a2 * a2, a1 * a1, a2 * a2;
    f.h = d.asDiagonal();
    f.g = d.asDiagonal();
    // dp_k ^ dq_k has omega(p_k, q_k) = 1.
    f.omega = RMatrix::Zero(4, 4);
    for (int k = 0; k < 2; ++k) {
        f.omega(2 + k, k) = d(k);
        f.omega(k, 2 + k) = -d(k);
    }
    f.Omega = -f.omega.inverse();
    return f;
}

}  // namespace geoqm
