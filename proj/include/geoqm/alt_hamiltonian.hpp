// alt_hamiltonian.hpp: alternative Hamiltonian descriptions A = Lambda H of a
// linear vector field x' = A x, with Lambda antisymmetric (Poisson tensor) and
// H symmetric (quadratic Hamiltonian x^T H x / 2).

#pragma once

#include "geoqm/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace geoqm {

struct Factorization {
    RMatrix A;
    RMatrix Lambda;
    RMatrix H;
    double residual = 0;  // max |A - Lambda H|
};

// Factorization with the given Lambda, if A = Lambda H admits a symmetric H.
Factorization factorization_for(const RMatrix& a, const RMatrix& lambda);

struct FactorizeOptions {
    double tol = 1e-10;
    int restarts = 20;
    int max_sweeps = 500;
    std::uint64_t seed = 0;
};

struct FactorizationFamily {
    // particular solution first, then one solution per family direction that
    // yields an invertible Lambda
    std::vector<Factorization> solutions;
    int family_dimension = 0;
    // Basis of {W antisymmetric : W A symmetric}; Lambda = W^-1 on the open
    // set where W is invertible.
    std::vector<RMatrix> inverse_basis;
    bool singular_lambda = false;  // solutions came from the alternating solver
    std::string diagnostics;

    bool empty() const noexcept { return solutions.empty(); }
    // True when Lambda^-1 lies in the span of inverse_basis (to tol).
    bool contains(const RMatrix& lambda, double tol = 1e-10) const;
};

// Invertible Lambda: W = Lambda^-1 solves the linear system W A + A^T W = 0,
// so the family is read off a null space exactly. Otherwise (odd dimension,
// or every W singular) alternating least squares with seeded restarts.
FactorizationFamily factorize(const RMatrix& a, const FactorizeOptions& opts = {});
FactorizationFamily factorize(const RMatrix& a, double tol);

struct Transformed {
    RMatrix Lambda;
    RMatrix H;
    double cond = 0;  // 2-norm condition number of T
};

// Lambda_T = T Lambda T^T, H_T = T^-T H T^-1.
Transformed transform(const RMatrix& lambda, const RMatrix& h, const RMatrix& t);

struct DeformedPoisson {
    RMatrix Lambda;              // e^{lambda A^2} Lambda e^{lambda (A^T)^2}
    RMatrix H;                   // Lambda_lambda^-1 A (empty when singular)
    double precondition = 0;     // max |A Lambda + Lambda A^T| / scale
    bool precondition_ok = false;
    double antisymmetry = 0;     // max |L + L^T| / max |L|
    double h_symmetry = 0;       // max |H - H^T| / max |H|
};

inline constexpr double kMaxDeformation = 10.0;

DeformedPoisson deform_poisson(const RMatrix& lambda, const RMatrix& a, double lam);

// e^{lambda A^2} Lambda e^{-lambda (A^T)^2}; identically Lambda whenever
// A Lambda + Lambda A^T = 0, kept for comparison.
RMatrix deform_poisson_literal(const RMatrix& lambda, const RMatrix& a, double lam);

// Tr A^{2k+1}, k = 0..k_max.
std::vector<double> odd_traces(const RMatrix& a, int k_max);

// |Tr A^{2k+1}| < 1e-9 ||A||_2^{2k+1} for all k <= k_max.
bool odd_traces_vanish(const RMatrix& a, int k_max, double rel_tol = 1e-9);

// h = a1^2 (p1^2 + q1^2) + a2^2 (p2^2 + q2^2) with its metric and symplectic
// form, coordinates (q1, q2, p1, p2).
struct TwoLevelFamily {
    double a1 = 1;
    double a2 = 1;
    RMatrix h;      // h(x) = x^T h x
    RMatrix g;      // a1^2 (dq1^2 + dp1^2) + a2^2 (dq2^2 + dp2^2)
    RMatrix omega;  // a1^2 dp1^dq1 + a2^2 dp2^dq2
    RMatrix Omega;  // -omega^-1

    double hamiltonian(const RVector& x) const { return x.dot(h * x); }
    RVector vector_field(const RVector& x) const { return Omega * (2.0 * h * x); }
};

TwoLevelFamily two_level_family(double a1, double a2);

}  // namespace geoqm
