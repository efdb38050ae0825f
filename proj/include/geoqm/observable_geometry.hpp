// observable_geometry.hpp: Kähler structure of a realified Hilbert space,
// quadratic observables, their brackets, Killing checks, critical-point
// spectra and the momentum map to u*(H).
//
// Conventions (hbar = 1):
//   f_A(psi)   = 1/2 <psi, A psi>
//   e_A(psi)   = <psi, A psi> / <psi, psi>
//   Lie        = (AB - BA) / i        (Hermitian result)
//   Jordan     = AB + BA
//   G + i Omega = 4 sum d/dz (x) d/dzbar, so that
//     G(df_A, df_B)     = f_{AB+BA}
//     Omega(df_A, df_B) = f_{(AB-BA)/i}
//     f_A * f_B         = 2 f_{AB}
//   <xi, A>    = 1/2 Tr(xi A)  (pairing on u*(H); mu(psi) = |psi><psi| pulls A back to f_A)

#pragma once

#include "geoqm/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace geoqm {

// Constant tensors of H_R in (q, p) coordinates. Covariant forms act as
// x^T M y; J acts on tangent vectors as J x.
struct KahlerTriple {
    Eigen::Index n = 0;
    RMatrix J;
    RMatrix g;
    RMatrix omega;
    RMatrix G;      // g^{-1}
    RMatrix Omega;  // Poisson tensor, -omega^{-1}
};

KahlerTriple standard_kahler(Eigen::Index n);

struct KahlerDefects {
    double complex_structure = 0;  // max |J^2 + I|
    double compatibility = 0;      // max |g(X,Y) - omega(X, JY)| over basis vectors
    double reversed_order = 0;     // max |g(X,Y) + omega(JX, Y)|, the sign of the other ordering
    double antisymmetry = 0;       // max |omega + omega^T|
    double min_metric_eigenvalue = 0;
    double contravariant = 0;      // max(|G g - I|, |Omega omega + I|)
};

KahlerDefects kahler_defects(const KahlerTriple& k);

// Bilinear evaluations of the covariant tensors.
double metric(const KahlerTriple& k, const RVector& x, const RVector& y);
double symplectic(const KahlerTriple& k, const RVector& x, const RVector& y);

// --- Quadratic observables -------------------------------------------------

double quad_value(const HermitianOperator& a, const RealPoint& psi);
// Complex-valued f_M = 1/2 <psi, M psi> for an arbitrary square M.
Complex quad_value(const CMatrix& m, const RealPoint& psi);
double expectation_value(const HermitianOperator& a, const RealPoint& psi);

// df_A in (q, p) coordinates: the realification of A psi.
RVector quad_gradient(const HermitianOperator& a, const RealPoint& psi);

struct QuadraticObservable {
    HermitianOperator op;

    double operator()(const RealPoint& psi) const { return quad_value(op, psi); }
    RVector gradient(const RealPoint& psi) const { return quad_gradient(op, psi); }
};

// Quadratic function psi -> 1/2 <psi, M psi>, complex-valued unless M is Hermitian.
struct QuadraticForm {
    CMatrix op;

    Complex operator()(const RealPoint& psi) const { return quad_value(op, psi); }
};

enum class BracketKind { riemann, poisson, star };

CMatrix lie_product(const CMatrix& a, const CMatrix& b);     // (AB - BA)/i
CMatrix jordan_product(const CMatrix& a, const CMatrix& b);  // AB + BA

// Operator route: AB+BA, (AB-BA)/i or 2AB.
QuadraticForm bracket(const HermitianOperator& a, const HermitianOperator& b, BracketKind kind);

// Tensor route at a point: G(df_A, df_B), Omega(df_A, df_B), or G + i Omega.
Complex contract_brackets(const KahlerTriple& k, const RVector& df_a, const RVector& df_b,
                          BracketKind kind);

// Hilbert–Schmidt pairing <A, B> = 1/2 Tr(AB) (real for Hermitian A, B).
double hs_inner(const CMatrix& a, const CMatrix& b);

// --- Killing test ----------------------------------------------------------

using PhaseFunction = std::function<double(const RealPoint&)>;

// max over samples of max|L_{X_f} g| where X_f = Omega(df) is built from a
// finite-difference Hessian of f. O(step^2) for quadratic f; exactly 0 for
// constant f.
double killing_defect(const PhaseFunction& f, const KahlerTriple& k,
                      const std::vector<RealPoint>& samples, double step = 1e-4);

// --- Critical points of e_A ------------------------------------------------

struct CriticalPoint {
    double value = 0;
    RealPoint vector;     // unit norm
    double residual = 0;  // |A psi - e_A(psi) psi|
};

struct CriticalLevel {
    double value = 0;
    int multiplicity = 0;
};

struct CriticalSpectrum {
    std::vector<CriticalPoint> points;  // ascending value
    std::vector<CriticalLevel> levels;  // values within 1e-8 merged
    bool complete = false;              // false when some search did not converge
    int iterations = 0;
};

struct CriticalSearchOptions {
    int trials = 0;            // random starts available in total; 0 -> 2 * dim
    double tol = 1e-10;        // target |grad e_A| on the sphere
    int max_iterations = 20000;
    std::uint64_t seed = 0;
    double merge_tol = 1e-8;
};

// Locates critical points of e_A on the unit sphere by projected gradient
// iteration (steepest descent with a Rayleigh–Ritz step on span{psi, grad,
// previous direction}), deflating each converged ray before the next search.
CriticalSpectrum critical_spectrum(const HermitianOperator& a, const CriticalSearchOptions& opts);
CriticalSpectrum critical_spectrum(const HermitianOperator& a, int trials, double tol);

// --- Momentum map ----------------------------------------------------------

// Element of u*(H) identified with a Hermitian matrix (checked on construction).
struct DualElement {
    explicit DualElement(CMatrix m);

    CMatrix xi;
    Eigen::Index dim() const { return xi.rows(); }
};

DualElement momentum_map(const RealPoint& psi);

// <xi, A> = 1/2 Tr(xi A); equals f_A(psi) at xi = mu(psi).
double pairing(const DualElement& xi, const HermitianOperator& a);

struct DualTensorValues {
    double R = 0;       // 1/2 Tr(xi (AB + BA))
    double Lambda = 0;  // 1/(2i) Tr(xi (AB - BA))
};

DualTensorValues dual_tensors(const HermitianOperator& a, const HermitianOperator& b,
                              const DualElement& xi);

}  // namespace geoqm
