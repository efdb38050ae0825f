#include "geoqm/observable_geometry.hpp"

#include "geoqm/finite_diff.hpp"
#include "geoqm/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geoqm {

namespace {

const Complex kI{0.0, 1.0};

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* who) {
    if (a.dim() != b.dim()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

void require_point_dim(const HermitianOperator& a, const RealPoint& psi, const char* who) {
    if (a.dim() != psi.n()) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

KahlerTriple standard_kahler(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("standard_kahler: n must be >= 1");
    const RMatrix I = RMatrix::Identity(n, n);
    const RMatrix Z = RMatrix::Zero(n, n);
    KahlerTriple k;
    k.n = n;
    // J = d/dp (x) dq - d/dq (x) dp
    k.J.resize(2 * n, 2 * n);
    k.J << Z, -I, I, Z;
    k.g = RMatrix::Identity(2 * n, 2 * n);
    // omega = dq ^ dp
    k.omega.resize(2 * n, 2 * n);
    k.omega << Z, I, -I, Z;
    k.G = RMatrix::Identity(2 * n, 2 * n);
    // Omega = d/dq ^ d/dp
    k.Omega = k.omega;
    return k;
}

KahlerDefects kahler_defects(const KahlerTriple& k) {
    const Eigen::Index m = 2 * k.n;
    const RMatrix I = RMatrix::Identity(m, m);
    KahlerDefects d;
    d.complex_structure = max_abs(k.J * k.J + I);
    // g(e_i, e_j) vs omega(e_i, J e_j) = (omega J)_{ij}
    d.compatibility = max_abs(k.g - k.omega * k.J);
    // omega(J e_i, e_j) = (J^T omega)_{ij}
    d.reversed_order = max_abs(k.g + k.J.transpose() * k.omega);
    d.antisymmetry = max_abs(k.omega + k.omega.transpose());
    d.min_metric_eigenvalue = Eigen::SelfAdjointEigenSolver<RMatrix>(k.g).eigenvalues().minCoeff();
    d.contravariant = std::max(max_abs(k.G * k.g - I), max_abs(k.Omega * k.omega + I));
    return d;
}

double metric(const KahlerTriple& k, const RVector& x, const RVector& y) { return x.dot(k.g * y); }

double symplectic(const KahlerTriple& k, const RVector& x, const RVector& y) {
    return x.dot(k.omega * y);
}

double quad_value(const HermitianOperator& a, const RealPoint& psi) {
    require_point_dim(a, psi, "quad_value");
    const CVector z = psi.to_complex();
    return 0.5 * z.dot(a.matrix() * z).real();
}

Complex quad_value(const CMatrix& m, const RealPoint& psi) {
    if (m.rows() != psi.n() || m.cols() != psi.n()) {
        throw std::invalid_argument("quad_value: dimension mismatch");
    }
    const CVector z = psi.to_complex();
    return 0.5 * z.dot(m * z);
}

double expectation_value(const HermitianOperator& a, const RealPoint& psi) {
    require_point_dim(a, psi, "expectation_value");
    const double norm2 = psi.norm_squared();
    if (norm2 == 0.0) throw std::domain_error("expectation_value: zero vector");
    const CVector z = psi.to_complex();
    return z.dot(a.matrix() * z).real() / norm2;
}

RVector quad_gradient(const HermitianOperator& a, const RealPoint& psi) {
    require_point_dim(a, psi, "quad_gradient");
    return realify(CVector(a.matrix() * psi.to_complex()));
}

CMatrix lie_product(const CMatrix& a, const CMatrix& b) { return (a * b - b * a) / kI; }

CMatrix jordan_product(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

QuadraticForm bracket(const HermitianOperator& a, const HermitianOperator& b, BracketKind kind) {
    require_same_dim(a, b, "bracket");
    switch (kind) {
        case BracketKind::riemann: return {jordan_product(a.matrix(), b.matrix())};
        case BracketKind::poisson: return {lie_product(a.matrix(), b.matrix())};
        case BracketKind::star: return {CMatrix(2.0 * a.matrix() * b.matrix())};
    }
    throw std::invalid_argument("bracket: unknown kind");
}

Complex contract_brackets(const KahlerTriple& k, const RVector& df_a, const RVector& df_b,
                          BracketKind kind) {
    const double g = df_a.dot(k.G * df_b);
    const double w = df_a.dot(k.Omega * df_b);
    switch (kind) {
        case BracketKind::riemann: return {g, 0.0};
        case BracketKind::poisson: return {w, 0.0};
        case BracketKind::star: return {g, w};
    }
    throw std::invalid_argument("contract_brackets: unknown kind");
}

double hs_inner(const CMatrix& a, const CMatrix& b) { return 0.5 * (a * b).trace().real(); }

double killing_defect(const PhaseFunction& f, const KahlerTriple& k,
                      const std::vector<RealPoint>& samples, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("killing_defect: step must be positive");
    const fd::ScalarField field = [&f](const RVector& x) { return f(RealPoint(x)); };
    double worst = 0.0;
    for (const RealPoint& s : samples) {
        if (s.n() != k.n) throw std::invalid_argument("killing_defect: sample dimension mismatch");
        // X_f = Omega df, so dX_f = Omega Hess(f); (L_X g) = dX^T g + g dX.
        const RMatrix dx = k.Omega * fd::hessian(field, s.coords(), step);
        const RMatrix lie = dx.transpose() * k.g + k.g * dx;
        worst = std::max(worst, max_abs(lie));
    }
    return worst;
}

// ---------------------------------------------------------------------------

namespace {

// Remove components along the orthonormal columns of q.
CVector project_out(const CMatrix& q, const CVector& x) {
    if (q.cols() == 0) return x;
    return x - q * (q.adjoint() * x);
}

// Orthonormalize candidates against each other (modified Gram–Schmidt),
// dropping vectors that have become numerically dependent.
CMatrix orthonormal_basis(const std::vector<CVector>& candidates, const CMatrix& deflated) {
    std::vector<CVector> basis;
    for (CVector v : candidates) {
        v = project_out(deflated, v);
        const double before = v.norm();
        if (before == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            for (const CVector& b : basis) v -= b * b.dot(v);
        }
        const double after = v.norm();
        if (after <= 1e-10 * before) continue;
        basis.push_back(v / after);
    }
    CMatrix out(candidates.front().size(), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = basis[j];
    return out;
}

struct SearchResult {
    CVector x;
    double value = 0;
    bool converged = false;
    int iterations = 0;
};

SearchResult minimize_on_complement(const CMatrix& a, const CMatrix& deflated, CVector x,
                                    double tol, int max_iterations) {
    SearchResult res;
    x = project_out(deflated, x);
    x.normalize();
    CVector direction = CVector::Zero(x.size());
    for (int it = 0; it <= max_iterations; ++it) {
        const CVector ax = a * x;
        const double e = x.dot(ax).real();
        const CVector r = project_out(deflated, ax - e * x);
        res.iterations = it;
        // |d e_A| on the unit sphere in realified coordinates is 2 |r|.
        if (2.0 * r.norm() < tol || it == max_iterations) {
            res.x = x;
            res.value = e;
            res.converged = 2.0 * r.norm() < tol;
            return res;
        }
        std::vector<CVector> cands{x, r};
        if (direction.norm() > 0.0) cands.push_back(direction);
        const CMatrix v = orthonormal_basis(cands, deflated);
        const CMatrix small = v.adjoint() * a * v;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (small + small.adjoint()));
        CVector next = v * es.eigenvectors().col(0);
        next = project_out(deflated, next);
        next.normalize();
        // Fix the U(1) phase so the previous-direction term stays meaningful.
        const Complex overlap = x.dot(next);
        if (std::abs(overlap) > 0.0) next *= std::conj(overlap) / std::abs(overlap);
        direction = next - x * x.dot(next);
        x = next;
    }
    return res;
}

}  // namespace

CriticalSpectrum critical_spectrum(const HermitianOperator& a, const CriticalSearchOptions& opts) {
    const Eigen::Index n = a.dim();
    const int trials = opts.trials == 0 ? static_cast<int>(2 * n) : opts.trials;
    if (trials < n) throw std::invalid_argument("critical_spectrum: trials must be >= dim");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("critical_spectrum: tol must be positive");

    CriticalSpectrum out;
    CMatrix found(n, 0);
    int starts = 0;
    while (found.cols() < n && starts < trials) {
        Rng rng = Rng::stream(opts.seed, static_cast<std::uint64_t>(starts));
        ++starts;
        const SearchResult sr =
            minimize_on_complement(a.matrix(), found, random_state(n, rng), opts.tol, opts.max_iterations);
        out.iterations += sr.iterations;
        if (!sr.converged) continue;

        CVector v = project_out(found, sr.x);
        v.normalize();
        found.conservativeResize(Eigen::NoChange, found.cols() + 1);
        found.col(found.cols() - 1) = v;

        CriticalPoint cp;
        const CVector av = a.matrix() * v;
        cp.value = v.dot(av).real();
        cp.vector = RealPoint::from_complex(v);
        cp.residual = (av - cp.value * v).norm();
        out.points.push_back(std::move(cp));
    }
    out.complete = found.cols() == n;

    std::sort(out.points.begin(), out.points.end(),
              [](const CriticalPoint& l, const CriticalPoint& r) { return l.value < r.value; });
    for (const CriticalPoint& cp : out.points) {
        if (!out.levels.empty() && std::abs(cp.value - out.levels.back().value) <= opts.merge_tol) {
            ++out.levels.back().multiplicity;
        } else {
            out.levels.push_back({cp.value, 1});
        }
    }
    return out;
}

CriticalSpectrum critical_spectrum(const HermitianOperator& a, int trials, double tol) {
    CriticalSearchOptions opts;
    opts.trials = trials;
    opts.tol = tol;
    return critical_spectrum(a, opts);
}

DualElement::DualElement(CMatrix m) : xi(std::move(m)) {
    if (xi.rows() != xi.cols()) throw std::invalid_argument("DualElement: matrix must be square");
    if (hermiticity_defect(xi) > kHermitianTol * std::max(1.0, max_abs(xi))) {
        throw std::invalid_argument("DualElement: matrix must be Hermitian");
    }
}

DualElement momentum_map(const RealPoint& psi) {
    const CVector z = psi.to_complex();
    return DualElement(z * z.adjoint());
}

double pairing(const DualElement& xi, const HermitianOperator& a) {
    if (xi.dim() != a.dim()) throw std::invalid_argument("pairing: dimension mismatch");
    return 0.5 * (xi.xi * a.matrix()).trace().real();
}

DualTensorValues dual_tensors(const HermitianOperator& a, const HermitianOperator& b,
                              const DualElement& xi) {
    require_same_dim(a, b, "dual_tensors");
    if (xi.dim() != a.dim()) throw std::invalid_argument("dual_tensors: dimension mismatch");
    const CMatrix& A = a.matrix();
    const CMatrix& B = b.matrix();
    DualTensorValues v;
    v.R = 0.5 * (xi.xi * (A * B + B * A)).trace().real();
    v.Lambda = ((xi.xi * (A * B - B * A)).trace() / (2.0 * kI)).real();
    return v;
}

}  // namespace geoqm
