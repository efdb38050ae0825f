// classical_integrability.hpp: action-angle models and their frequency
// ("conformal factor") functions, the harmonic and q-deformed classical
// oscillators, the Kepler action-angle chart, conformal flows on R^2,
// nilpotency of the linear flow, and the invariant tensors of the isotropic
// oscillator on R^4.
//
// Phase-space coordinates are (q_1..q_n, p_1..p_n) with {q_i, p_j} = delta_ij.

#pragma once

#include "geoqm/finite_diff.hpp"
#include "geoqm/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace geoqm {

// Wrap to (-pi, pi].
double wrap_angle(double x);

struct ActionAngleModel {
    std::string name;
    int n_dof = 0;
    std::function<double(const RVector&)> hamiltonian;
    std::function<RVector(const RVector&)> analytic_frequencies;  // may be empty
    // Actions must stay >= lower_bound componentwise when set (e.g. I >= 0).
    std::optional<RVector> lower_bound;
};

struct Frequencies {
    RVector nu;
    std::optional<RVector> finite_difference;  // present with analytic models
    bool one_sided = false;
    std::vector<std::string> warnings;
};

// nu_k = dH/dI_k: analytic when the model provides it (with a finite-difference
// cross-check), central differences otherwise, one-sided within `step` of the
// domain boundary.
Frequencies frequencies(const ActionAngleModel& model, const RVector& actions,
                        double step = fd::kDefaultStep);

// I_t = I_0, phi_t = wrap(phi_0 + t nu(I_0)).
std::pair<RVector, RVector> aa_flow(const ActionAngleModel& model, const RVector& i0,
                                    const RVector& phi0, double t);

// H = sum_k omega_k I_k.
ActionAngleModel harmonic_model(const RVector& omega);

struct HarmonicChart {
    RVector actions;
    RVector angles;
    std::vector<bool> angle_defined;  // false where q_k = p_k = 0
};

// I_k = (p_k^2 + omega_k^2 q_k^2) / (2 omega_k), phi_k = atan2(-p_k, omega_k q_k).
// The sign makes {phi_k, I_k} = 1 and phi_k advance at +omega_k along the flow.
HarmonicChart harmonic_chart(const RVector& x, const RVector& omega);
RVector inverse_harmonic_chart(const RVector& actions, const RVector& angles, const RVector& omega);

// Partial energies (p_k^2 + omega_k q_k^2) / 2 as printed for the harmonic
// example; canonical only at omega_k = 1.
RVector harmonic_partial_energies(const RVector& x, const RVector& omega);

// H = omega sum_k sinh(hbar I_k) / sinh(hbar), nu_k = omega hbar cosh(hbar I_k) / sinh(hbar).
ActionAngleModel q_classical(double hbar, double omega, int n_dof = 1);

// --- Kepler ---------------------------------------------------------------------

struct KeplerState {
    double r = 1;
    double theta = 1.5707963267948966;
    double phi = 0;
    double p_r = 0;
    double p_theta = 0;
    double p_phi = 1;
    double m = 1;
    double k = 1;
};

// p_r^2/2m + L^2/(2 m r^2) - k/r with L^2 = p_theta^2 + p_phi^2 / sin^2 theta.
double kepler_energy(const KeplerState& s);

struct KeplerChart {
    std::array<double, 3> J{};
    // Angle formulas need arcsin arguments in [-1, 1] (after 1e-10 clamping);
    // empty where they are not (e.g. circular or polar-limit orbits).
    std::array<std::optional<double>, 3> angles;
    double energy = 0;     // evaluated directly from the state
    double H = 0;          // -m k^2 / (2 (J1+J2+J3)^2)
    double nu = 0;         //  m k^2 / (J1+J2+J3)^3
    std::array<double, 3> frequencies{};
};

KeplerChart kepler_chart(const KeplerState& s);

// H(J) = -m k^2 / (2 (sum J)^2) with the analytic frequency m k^2 / (sum J)^3.
ActionAngleModel kepler_model(double m, double k);

// Forms as printed next to the chart: J1 with exponent -1, H = -m k^2/(sum J)^2,
// f = 2 m k^2 / (sum J)^3. For comparison tables only.
struct KeplerPrintedForms {
    double J1 = 0;
    double H = 0;
    double f = 0;
};
KeplerPrintedForms kepler_printed_forms(const KeplerState& s);

// --- Conformal flows on R^2 ---------------------------------------------------

using RadialFactor = std::function<double(double)>;

// Exact flow of x' = p f(x^2+p^2), p' = -x f(x^2+p^2): rotation by t f(r0^2).
std::pair<double, double> conformal_flow(double x0, double p0, double t, const RadialFactor& f);

// --- Nilpotency -------------------------------------------------------------------

// max over coordinate functions c of |L_Gamma (L_Gamma c)| on (I, phi) space,
// Gamma = (0, nu(I)), by nested directional differences.
double nilpotency_defect(const ActionAngleModel& model, const RVector& actions,
                         const RVector& angles, double step = 1e-3);

// Same for an arbitrary field on R^{2n} (negative controls).
double nilpotency_defect(const fd::VectorField& gamma, const RVector& x, double step = 1e-3);

// --- Isotropic oscillator on R^4, coordinates (q1, q2, p1, p2) ----------------

// Gamma = p d/dq - q d/dp.
RVector isotropic_field(const RVector& x);

// p1^2+q1^2, p2^2+q2^2, p1 q2 - q1 p2, p1 p2 + q1 q2.
std::array<fd::ScalarField, 4> r4_invariants();

// (p1 q2 - q1 p2, p1 p2 + q1 q2, ((p1^2+q1^2) - (p2^2+q2^2))/2): su(2) with
// structure constants 2 under the canonical bracket.
std::array<fd::ScalarField, 3> su2_generators();

// (p1 q2 - q1 p2, p1 p2 + q1 q2, (p1^2+q1^2 + p2^2+q2^2)/2): su(1,1) with
// structure constants (-2, 2, 2) under the bracket with {q2, p2} = -1.
std::array<fd::ScalarField, 3> su11_generators();

struct InvariantTensor {
    RVector theta;    // components on (dq1, dq2, dp1, dp2)
    RMatrix omega;    // omega(i, j) = d_i theta_j - d_j theta_i
    double invariance_defect = 0;  // max |L_Gamma theta|
};

// theta_F = -dF/dp dq + dF/dq dp (the image of dF under T = dp (x) d/dq - dq (x) d/dp).
// Derivatives by fourth-order differences.
InvariantTensor invariant_tensor_r4(const fd::ScalarField& f, const RVector& x, double step = 1e-3);

struct Recoordinated {
    RVector Q;  // dF/dq
    RVector P;  // dF/dp
    double relation_defect = 0;  // max(|L_Gamma Q - P|, |L_Gamma P + Q|)
};

Recoordinated recoordinate(const fd::ScalarField& f, const RVector& x, double step = 1e-3);

}  // namespace geoqm
