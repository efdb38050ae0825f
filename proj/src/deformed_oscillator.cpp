#include "geoqm/deformed_oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace geoqm {

FockTruncation fock(Eigen::Index d) {
    if (d < 2) throw std::invalid_argument("fock: D must be >= 2");
    FockTruncation f;
    f.dim = d;
    f.a = RMatrix::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) f.a(k - 1, k) = std::sqrt(static_cast<double>(k));
    f.a_dag = f.a.transpose();
    f.n_op = RVector::LinSpaced(d, 0.0, static_cast<double>(d - 1)).asDiagonal();
    return f;
}

DeformedOscillator deform(const FockTruncation& base, const Profile& f) {
    const Eigen::Index d = base.dim;
    DeformedOscillator o;
    o.base = base;
    o.f_values.resize(d);
    for (Eigen::Index n = 0; n < d; ++n) {
        const double v = f(static_cast<int>(n));
        if (!std::isfinite(v)) throw std::invalid_argument("deform: f(n) must be finite");
        if (n >= 1 && v == 0.0) throw std::invalid_argument("deform: f vanishes on 1..D-1");
        o.f_values(n) = v;
    }
    o.A = base.a * o.f_values.asDiagonal();
    o.A_dag = o.f_values.asDiagonal() * base.a_dag;
    RVector nd(d);
    for (Eigen::Index n = 0; n < d; ++n) nd(n) = static_cast<double>(n) * o.f_values(n) * o.f_values(n);
    o.N_op = nd.asDiagonal();
    return o;
}

RVector deformed_commutator_closed_form(const DeformedOscillator& osc) {
    const Eigen::Index d = osc.base.dim;
    RVector out(d - 1);
    for (Eigen::Index n = 0; n + 1 < d; ++n) {
        const double fn = osc.f_values(n);
        const double fn1 = osc.f_values(n + 1);
        out(n) = static_cast<double>(n + 1) * fn1 * fn1 - static_cast<double>(n) * fn * fn;
    }
    return out;
}

QProfileValue q_profile(double hbar, int n) {
    if (!(hbar > 0.0)) throw std::invalid_argument("q_profile: hbar must be positive");
    if (n < 0) throw std::invalid_argument("q_profile: n must be >= 0");
    QProfileValue v;
    v.n_q = std::sinh(n * hbar) / std::sinh(hbar);
    v.f = n == 0 ? std::sqrt(hbar / std::sinh(hbar)) : std::sqrt(v.n_q / n);
    return v;
}

Profile q_deformation(double hbar) {
    if (!(hbar > 0.0)) throw std::invalid_argument("q_deformation: hbar must be positive");
    return [hbar](int n) { return q_profile(hbar, n).f; };
}

double inverse_number(double n_q, double hbar) {
    if (!(hbar > 0.0)) throw std::invalid_argument("inverse_number: hbar must be positive");
    return std::asinh(n_q * std::sinh(hbar)) / hbar;
}

HermitianOperator hq_operator(Eigen::Index d, double hbar) {
    if (d < 2) throw std::invalid_argument("hq_operator: D must be >= 2");
    if (!(hbar > 0.0)) throw std::invalid_argument("hq_operator: hbar must be positive");
    RVector h(d);
    for (Eigen::Index n = 0; n < d; ++n) {
        h(n) = inverse_number(q_profile(hbar, static_cast<int>(n)).n_q, hbar) + 0.5;
    }
    return HermitianOperator::diagonal(h);
}

RVector q_commutator_diagonal(Eigen::Index d, double hbar) {
    if (!(hbar > 0.0)) throw std::invalid_argument("q_commutator_diagonal: hbar must be positive");
    RVector out(d);
    const double s = std::sinh(hbar);
    for (Eigen::Index n = 0; n < d; ++n) {
        const double nq = q_profile(hbar, static_cast<int>(n)).n_q;
        out(n) = nq * (std::cosh(hbar) - 1.0) + std::sqrt(nq * nq * s * s + 1.0);
    }
    return out;
}

DeformedMetric deformed_metric(const DeformedOscillator& osc) {
    const Eigen::Index d = osc.base.dim;
    DeformedMetric m;
    m.dim = d;
    m.m_diag.resize(d);
    m.normalization.resize(d);
    double c = 1.0;
    for (Eigen::Index n = 0; n < d; ++n) {
        if (n >= 1) {
            if (osc.f_values(n) == 0.0) throw std::invalid_argument("deformed_metric: f vanishes");
            c *= osc.f_values(n);
        }
        m.normalization(n) = c;
        m.m_diag(n) = 1.0 / (c * c);
    }
    return m;
}

RMatrix metric_gram(const DeformedMetric& m) {
    // Columns are the states |N_n> in the Fock basis.
    const RMatrix states = m.normalization.asDiagonal();
    return states.transpose() * m.m_diag.asDiagonal() * states;
}

RMatrix metric_matrix_elements(const DeformedMetric& m, const RMatrix& x) {
    if (x.rows() != m.dim || x.cols() != m.dim) {
        throw std::invalid_argument("metric_matrix_elements: dimension mismatch");
    }
    const RVector left = m.m_diag.cwiseProduct(m.normalization);
    return left.asDiagonal() * x * m.normalization.asDiagonal();
}

RMatrix metric_adjoint(const DeformedMetric& m, const RMatrix& x) {
    if (x.rows() != m.dim || x.cols() != m.dim) {
        throw std::invalid_argument("metric_adjoint: dimension mismatch");
    }
    return m.m_diag.cwiseInverse().asDiagonal() * x.transpose() * m.m_diag.asDiagonal();
}

std::pair<RMatrix, RMatrix> product_number_ops(Eigen::Index d) {
    const Eigen::Index dd = d * d;
    RVector na(dd), nb(dd);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
            na(a * d + b) = static_cast<double>(a);
            nb(a * d + b) = static_cast<double>(b);
        }
    return {na.asDiagonal(), nb.asDiagonal()};
}

HermitianOperator deform_2d(Eigen::Index d, const Profile& f, TwoModeKind mode) {
    if (d < 2) throw std::invalid_argument("deform_2d: D must be >= 2");
    auto nf2 = [&f](Eigen::Index n) {
        const double v = f(static_cast<int>(n));
        return static_cast<double>(n) * v * v;
    };
    RVector h(d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            double e = 0.0;
            if (mode == TwoModeKind::symmetric) {
                const Eigen::Index n = a + b;
                const double fn1 = f(static_cast<int>(n + 1));
                e = 0.5 * (nf2(n) + static_cast<double>(n + 2) * fn1 * fn1);
            } else {
                e = 0.5 * (nf2(a) + nf2(b) + nf2(a + 1) + nf2(b + 1));
            }
            h(a * d + b) = e;
        }
    }
    return HermitianOperator::diagonal(h);
}

}  // namespace geoqm
