// deformed_oscillator.hpp: truncated Fock ladder algebra, f-deformed
// oscillators A = a f(n), the q-deformation, the metric in which the deformed
// number states are orthonormal, and two-mode deformations.
//
// Postconditions involving commutators cover indices 0..D-2 only: the top
// basis state of a truncation breaks [a, a^dag] = I even for f = 1.

#pragma once

#include "geoqm/types.hpp"

#include <functional>
#include <utility>

namespace geoqm {

struct FockTruncation {
    Eigen::Index dim = 0;
    RMatrix a;      // a(k-1, k) = sqrt(k)
    RMatrix a_dag;
    RMatrix n_op;   // diag(0..D-1)
};

FockTruncation fock(Eigen::Index d);

// Deformation profile n -> f(n).
using Profile = std::function<double(int)>;

struct DeformedOscillator {
    FockTruncation base;
    RVector f_values;  // f(0)..f(D-1)
    RMatrix A;         // a f(n)
    RMatrix A_dag;     // f(n) a^dag
    RMatrix N_op;      // diag(n f(n)^2)
};

DeformedOscillator deform(const FockTruncation& base, const Profile& f);

// (n+1) f(n+1)^2 - n f(n)^2 for n = 0..D-2.
RVector deformed_commutator_closed_form(const DeformedOscillator& osc);

// --- q-deformation, q = e^hbar ----------------------------------------------

struct QProfileValue {
    double f = 0;
    double n_q = 0;
};

// n_q = sinh(n hbar)/sinh(hbar); f_n = sqrt(n_q / n), f_0 = sqrt(hbar / sinh hbar).
QProfileValue q_profile(double hbar, int n);
Profile q_deformation(double hbar);

// (1/hbar) asinh(n_q sinh hbar), the inverse of n -> n_q.
double inverse_number(double n_q, double hbar);

// H_q = (1/hbar) asinh(N sinh hbar) + 1/2 with N = diag(n_q).
HermitianOperator hq_operator(Eigen::Index d, double hbar);

// (N (cosh hbar - 1) + sqrt(N^2 sinh^2 hbar + 1)) as a diagonal: [A, A^dag] of
// the q-oscillator written through N.
RVector q_commutator_diagonal(Eigen::Index d, double hbar);

// --- Alternative Hermitian structure ----------------------------------------

struct DeformedMetric {
    Eigen::Index dim = 0;
    RVector m_diag;          // m_n = prod_{j<=n} f(j)^-2
    RVector normalization;   // c_n = prod_{j<=n} f(j); |N_n> = c_n |n>
};

DeformedMetric deformed_metric(const DeformedOscillator& osc);

// <N_n, N_m>_M.
RMatrix metric_gram(const DeformedMetric& m);

// <N_n | X | N_m>_M = m_n c_n X(n, m) c_m.
RMatrix metric_matrix_elements(const DeformedMetric& m, const RMatrix& x);

// Adjoint of x with respect to <.,.>_M: M^-1 x^T M.
RMatrix metric_adjoint(const DeformedMetric& m, const RMatrix& x);

// --- Two modes ----------------------------------------------------------------

enum class TwoModeKind { symmetric, broken };

// Product-space operators indexed (n_a, n_b) -> n_a * D + n_b.
std::pair<RMatrix, RMatrix> product_number_ops(Eigen::Index d);

HermitianOperator deform_2d(Eigen::Index d, const Profile& f, TwoModeKind mode);

}  // namespace geoqm
