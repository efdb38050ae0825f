#include "geoqm/classical_integrability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geoqm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClamp = 1e-10;

std::optional<double> clamped_asin(double x) {
    if (!std::isfinite(x) || std::abs(x) > 1.0 + kClamp) return std::nullopt;
    return std::asin(std::clamp(x, -1.0, 1.0));
}

std::optional<double> clamped_sqrt(double x) {
    if (!std::isfinite(x) || x < -kClamp) return std::nullopt;
    return std::sqrt(std::max(x, 0.0));
}

void require_omega(const RVector& omega) {
    for (Eigen::Index k = 0; k < omega.size(); ++k) {
        if (!(omega(k) > 0.0)) throw std::invalid_argument("harmonic: frequencies must be positive");
    }
}

}  // namespace

double wrap_angle(double x) {
    double y = std::remainder(x, 2.0 * kPi);  // [-pi, pi]
    if (y <= -kPi) y += 2.0 * kPi;
    return y;
}

Frequencies frequencies(const ActionAngleModel& model, const RVector& actions, double step) {
    if (actions.size() != model.n_dof) throw std::invalid_argument("frequencies: wrong action count");
    if (!(step > 0.0)) throw std::invalid_argument("frequencies: step must be positive");
    Frequencies out;
    RVector fdv(actions.size());
    RVector x = actions;
    for (Eigen::Index k = 0; k < actions.size(); ++k) {
        const double h = fd::scaled_step(step, actions(k));
        const bool near_lower = model.lower_bound && actions(k) - h < (*model.lower_bound)(k);
        if (near_lower) {
            // Second-order forward difference.
            x(k) = actions(k);
            const double f0 = model.hamiltonian(x);
            x(k) = actions(k) + h;
            const double f1 = model.hamiltonian(x);
            x(k) = actions(k) + 2.0 * h;
            const double f2 = model.hamiltonian(x);
            fdv(k) = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
            out.one_sided = true;
            out.warnings.push_back("action " + std::to_string(k) +
                                   " is within one step of the domain boundary; one-sided difference used");
        } else {
            x(k) = actions(k) + h;
            const double fp = model.hamiltonian(x);
            x(k) = actions(k) - h;
            const double fm = model.hamiltonian(x);
            fdv(k) = (fp - fm) / (2.0 * h);
        }
        x(k) = actions(k);
    }
    if (model.analytic_frequencies) {
        out.nu = model.analytic_frequencies(actions);
        out.finite_difference = fdv;
    } else {
        out.nu = fdv;
    }
    return out;
}

std::pair<RVector, RVector> aa_flow(const ActionAngleModel& model, const RVector& i0,
                                    const RVector& phi0, double t) {
    if (i0.size() != model.n_dof || phi0.size() != model.n_dof) {
        throw std::invalid_argument("aa_flow: wrong dimension");
    }
    const RVector nu = frequencies(model, i0).nu;
    RVector phi(phi0.size());
    for (Eigen::Index k = 0; k < phi.size(); ++k) phi(k) = wrap_angle(phi0(k) + t * nu(k));
    return {i0, phi};
}

ActionAngleModel harmonic_model(const RVector& omega) {
    require_omega(omega);
    ActionAngleModel m;
    m.name = "harmonic";
    m.n_dof = static_cast<int>(omega.size());
    m.hamiltonian = [omega](const RVector& i) { return omega.dot(i); };
    m.analytic_frequencies = [omega](const RVector&) { return omega; };
    m.lower_bound = RVector::Zero(omega.size());
    return m;
}

HarmonicChart harmonic_chart(const RVector& x, const RVector& omega) {
    require_omega(omega);
    const Eigen::Index n = omega.size();
    if (x.size() != 2 * n) throw std::invalid_argument("harmonic_chart: expected 2n coordinates");
    HarmonicChart c;
    c.actions.resize(n);
    c.angles.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double q = x(k);
        const double p = x(n + k);
        c.actions(k) = (p * p + omega(k) * omega(k) * q * q) / (2.0 * omega(k));
        c.angle_defined.push_back(!(q == 0.0 && p == 0.0));
        c.angles(k) = std::atan2(-p, omega(k) * q);
    }
    return c;
}

RVector inverse_harmonic_chart(const RVector& actions, const RVector& angles, const RVector& omega) {
    require_omega(omega);
    const Eigen::Index n = omega.size();
    if (actions.size() != n || angles.size() != n) {
        throw std::invalid_argument("inverse_harmonic_chart: dimension mismatch");
    }
    RVector x(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (actions(k) < 0.0) throw std::invalid_argument("inverse_harmonic_chart: negative action");
        const double rad = std::sqrt(2.0 * actions(k) * omega(k));
        x(k) = rad * std::cos(angles(k)) / omega(k);
        x(n + k) = -rad * std::sin(angles(k));
    }
    return x;
}

RVector harmonic_partial_energies(const RVector& x, const RVector& omega) {
    const Eigen::Index n = omega.size();
    if (x.size() != 2 * n) throw std::invalid_argument("harmonic_partial_energies: expected 2n coordinates");
    RVector h(n);
    for (Eigen::Index k = 0; k < n; ++k) h(k) = 0.5 * (x(n + k) * x(n + k) + omega(k) * x(k) * x(k));
    return h;
}

ActionAngleModel q_classical(double hbar, double omega, int n_dof) {
    if (!(hbar > 0.0)) throw std::invalid_argument("q_classical: hbar must be positive");
    if (n_dof < 1) throw std::invalid_argument("q_classical: n_dof must be >= 1");
    ActionAngleModel m;
    m.name = "q-classical";
    m.n_dof = n_dof;
    const double sh = std::sinh(hbar);
    m.hamiltonian = [=](const RVector& i) {
        double acc = 0.0;
        for (Eigen::Index k = 0; k < i.size(); ++k) acc += std::sinh(hbar * i(k));
        return omega * acc / sh;
    };
    m.analytic_frequencies = [=](const RVector& i) {
        RVector nu(i.size());
        for (Eigen::Index k = 0; k < i.size(); ++k) nu(k) = omega * hbar * std::cosh(hbar * i(k)) / sh;
        return nu;
    };
    m.lower_bound = RVector::Zero(n_dof);
    return m;
}

// ---------------------------------------------------------------------------

namespace {

void validate(const KeplerState& s) {
    if (!(s.m > 0.0) || !(s.k > 0.0)) throw std::invalid_argument("kepler: m and k must be positive");
    if (!(s.r > 0.0)) throw std::invalid_argument("kepler: r must be positive");
    if (std::abs(std::sin(s.theta)) < 1e-12) {
        throw std::domain_error("kepler: sin(theta) = 0 is a coordinate singularity");
    }
}

double angular_momentum(const KeplerState& s) {
    const double st = std::sin(s.theta);
    return std::sqrt(s.p_theta * s.p_theta + s.p_phi * s.p_phi / (st * st));
}

}  // namespace

double kepler_energy(const KeplerState& s) {
    validate(s);
    const double l = angular_momentum(s);
    return s.p_r * s.p_r / (2.0 * s.m) + l * l / (2.0 * s.m * s.r * s.r) - s.k / s.r;
}

KeplerChart kepler_chart(const KeplerState& s) {
    const double e = kepler_energy(s);
    if (!(e < 0.0)) throw std::domain_error("kepler: state is not bound (E >= 0)");
    const double m = s.m;
    const double k = s.k;
    const double l = angular_momentum(s);
    KeplerChart c;
    c.energy = e;
    const double big = m * k / std::sqrt(-2.0 * m * e);
    c.J = {-l + big, l - s.p_phi, s.p_phi};
    const double sum = c.J[0] + c.J[1] + c.J[2];
    c.H = -m * k * k / (2.0 * sum * sum);
    c.nu = m * k * k / (sum * sum * sum);
    c.frequencies = {c.nu, c.nu, c.nu};

    // Angle formulas, taken term by term.
    const double r = s.r;
    const double l23 = c.J[1] + c.J[2];
    const auto root1 = clamped_sqrt(-m * m * k * k * r * r + 2.0 * m * k * sum * sum * r - sum * sum * l23 * l23);
    const auto root2 = clamped_sqrt(sum * sum - l23 * l23);
    const auto root3 = clamped_sqrt(l23 * l23 - c.J[2] * c.J[2]);
    std::optional<double> phi1, phi2, phi3;
    if (root1 && root2 && *root2 > 0.0) {
        const auto a1 = clamped_asin((m * k * r - sum * sum) / (sum * *root2));
        if (a1) phi1 = -*root1 / (sum * sum) + *a1;
    }
    if (phi1 && root3 && *root3 > 0.0) {
        const auto a2 = clamped_asin((m * k * r - l23 * l23) * sum / *root2);
        const auto a3 = clamped_asin(l23 * std::cos(s.theta) / *root3);
        if (a2 && a3) phi2 = *phi1 - *a2 - *a3;
    }
    if (phi2) {
        const auto a4 = clamped_asin(c.J[2] / std::tan(s.theta) / *root3);
        if (a4) phi3 = *phi2 + *a4 + s.phi;
    }
    c.angles = {phi1, phi2, phi3};
    return c;
}

ActionAngleModel kepler_model(double m, double k) {
    if (!(m > 0.0) || !(k > 0.0)) throw std::invalid_argument("kepler_model: m and k must be positive");
    ActionAngleModel model;
    model.name = "kepler";
    model.n_dof = 3;
    model.hamiltonian = [=](const RVector& j) {
        const double s = j.sum();
        return -m * k * k / (2.0 * s * s);
    };
    model.analytic_frequencies = [=](const RVector& j) {
        const double s = j.sum();
        return RVector(RVector::Constant(3, m * k * k / (s * s * s)));
    };
    return model;
}

KeplerPrintedForms kepler_printed_forms(const KeplerState& s) {
    const double e = kepler_energy(s);
    const double l = angular_momentum(s);
    const double st = std::sin(s.theta);
    const double bracket = 2.0 * s.m * s.k / s.r - s.p_theta * s.p_theta / (s.r * s.r) -
                           s.p_phi * s.p_phi / (s.r * s.r * st * st) - s.p_r * s.p_r;
    KeplerPrintedForms f;
    f.J1 = -l + s.m * s.k / bracket;
    // H and f on the consistent actions, to isolate the printed prefactors.
    const double sum = s.m * s.k / std::sqrt(-2.0 * s.m * e);
    f.H = -s.m * s.k * s.k / (sum * sum);
    f.f = 2.0 * s.m * s.k * s.k / (sum * sum * sum);
    return f;
}

std::pair<double, double> conformal_flow(double x0, double p0, double t, const RadialFactor& f) {
    const double rate = f(x0 * x0 + p0 * p0);
    if (!std::isfinite(rate)) throw std::invalid_argument("conformal_flow: f not finite at r0^2");
    const double a = t * rate;
    const double c = std::cos(a);
    const double s = std::sin(a);
    return {c * x0 + s * p0, -s * x0 + c * p0};
}

// ---------------------------------------------------------------------------

double nilpotency_defect(const fd::VectorField& gamma, const RVector& x, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("nilpotency_defect: step must be positive");
    double worst = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const fd::ScalarField coord = [j](const RVector& y) { return y(j); };
        const fd::ScalarField first = [&](const RVector& y) {
            return fd::directional(coord, y, gamma(y), step);
        };
        worst = std::max(worst, std::abs(fd::directional(first, x, gamma(x), step)));
    }
    return worst;
}

double nilpotency_defect(const ActionAngleModel& model, const RVector& actions,
                         const RVector& angles, double step) {
    const Eigen::Index n = model.n_dof;
    if (actions.size() != n || angles.size() != n) {
        throw std::invalid_argument("nilpotency_defect: wrong dimension");
    }
    const fd::VectorField gamma = [&model, n](const RVector& y) {
        RVector g = RVector::Zero(2 * n);
        g.tail(n) = frequencies(model, RVector(y.head(n))).nu;
        return g;
    };
    RVector x(2 * n);
    x << actions, angles;
    return nilpotency_defect(gamma, x, step);
}

RVector isotropic_field(const RVector& x) {
    if (x.size() % 2 != 0) throw std::invalid_argument("isotropic_field: expected 2n coordinates");
    const Eigen::Index n = x.size() / 2;
    RVector g(x.size());
    g.head(n) = x.tail(n);
    g.tail(n) = -x.head(n);
    return g;
}

std::array<fd::ScalarField, 4> r4_invariants() {
    return {
        [](const RVector& x) { return x(2) * x(2) + x(0) * x(0); },
        [](const RVector& x) { return x(3) * x(3) + x(1) * x(1); },
        [](const RVector& x) { return x(2) * x(1) - x(0) * x(3); },
        [](const RVector& x) { return x(2) * x(3) + x(0) * x(1); },
    };
}

std::array<fd::ScalarField, 3> su2_generators() {
    const auto inv = r4_invariants();
    return {
        inv[2],
        inv[3],
        [inv](const RVector& x) { return 0.5 * (inv[0](x) - inv[1](x)); },
    };
}

std::array<fd::ScalarField, 3> su11_generators() {
    const auto inv = r4_invariants();
    return {
        inv[2],
        inv[3],
        [inv](const RVector& x) { return 0.5 * (inv[0](x) + inv[1](x)); },
    };
}

namespace {

// T acting on covectors: (a_q, a_p) -> (-a_p, a_q).
RMatrix t_matrix(Eigen::Index n) {
    RMatrix t = RMatrix::Zero(2 * n, 2 * n);
    t.topRightCorner(n, n) = -RMatrix::Identity(n, n);
    t.bottomLeftCorner(n, n) = RMatrix::Identity(n, n);
    return t;
}

RMatrix gamma_matrix(Eigen::Index n) { return -t_matrix(n); }

}  // namespace

InvariantTensor invariant_tensor_r4(const fd::ScalarField& f, const RVector& x, double step) {
    if (x.size() != 4) throw std::invalid_argument("invariant_tensor_r4: expected 4 coordinates");
    const RMatrix t = t_matrix(2);
    const RMatrix m = gamma_matrix(2);  // Gamma(x) = M x
    InvariantTensor out;
    out.theta = t * fd::gradient4(f, x, step);
    // d_j theta_i = (T Hess F)_{ij}
    const RMatrix dtheta = t * fd::hessian4(f, x, step);
    out.omega = dtheta.transpose() - dtheta;
    const RVector lie = dtheta * (m * x) + m.transpose() * out.theta;
    out.invariance_defect = lie.cwiseAbs().maxCoeff();
    return out;
}

Recoordinated recoordinate(const fd::ScalarField& f, const RVector& x, double step) {
    if (x.size() != 4) throw std::invalid_argument("recoordinate: expected 4 coordinates");
    const RVector grad = fd::gradient4(f, x, step);
    const RVector lie = fd::hessian4(f, x, step) * isotropic_field(x);
    Recoordinated out;
    out.Q = grad.head(2);
    out.P = grad.tail(2);
    out.relation_defect = std::max((lie.head(2) - out.P).cwiseAbs().maxCoeff(),
                                   (lie.tail(2) + out.Q).cwiseAbs().maxCoeff());
    return out;
}

}  // namespace geoqm
