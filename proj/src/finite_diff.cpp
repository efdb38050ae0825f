#include "geoqm/finite_diff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geoqm::fd {

double scaled_step(double step, double x) { return step * std::max(1.0, std::abs(x)); }

RVector gradient(const ScalarField& f, const RVector& x, double step) {
    RVector g(x.size());
    RVector xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = scaled_step(step, x(i));
        xp(i) = x(i) + h;
        const double fp = f(xp);
        xp(i) = x(i) - h;
        const double fm = f(xp);
        xp(i) = x(i);
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

RMatrix hessian(const ScalarField& f, const RVector& x, double step) {
    const Eigen::Index m = x.size();
    RMatrix h(m, m);
    RVector y = x;
    const double f0 = f(x);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double hi = scaled_step(step, x(i));
        y(i) = x(i) + hi;
        const double fp = f(y);
        y(i) = x(i) - hi;
        const double fm = f(y);
        y(i) = x(i);
        h(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const double hj = scaled_step(step, x(j));
            double acc = 0.0;
            for (int si : {1, -1}) {
                for (int sj : {1, -1}) {
                    y(i) = x(i) + si * hi;
                    y(j) = x(j) + sj * hj;
                    acc += si * sj * f(y);
                }
            }
            y(i) = x(i);
            y(j) = x(j);
            h(i, j) = h(j, i) = acc / (4.0 * hi * hj);
        }
    }
    return h;
}

RVector gradient4(const ScalarField& f, const RVector& x, double step) {
    return (4.0 * gradient(f, x, 0.5 * step) - gradient(f, x, step)) / 3.0;
}

RMatrix hessian4(const ScalarField& f, const RVector& x, double step) {
    return (4.0 * hessian(f, x, 0.5 * step) - hessian(f, x, step)) / 3.0;
}

RMatrix jacobian(const VectorField& F, const RVector& x, double step) {
    RVector xp = x;
    RMatrix jac;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double h = scaled_step(step, x(j));
        xp(j) = x(j) + h;
        const RVector fp = F(xp);
        xp(j) = x(j) - h;
        const RVector fm = F(xp);
        xp(j) = x(j);
        if (j == 0) jac.resize(fp.size(), x.size());
        jac.col(j) = (fp - fm) / (2.0 * h);
    }
    return jac;
}

double directional(const ScalarField& f, const RVector& x, const RVector& v, double step) {
    return (f(x + step * v) - f(x - step * v)) / (2.0 * step);
}

double poisson_bracket(const ScalarField& f, const ScalarField& g, const RVector& x,
                       const RVector& signature, double step) {
    const Eigen::Index n = x.size() / 2;
    if (x.size() != 2 * n || signature.size() != n) {
        throw std::invalid_argument("poisson_bracket: expected 2n coordinates and n signs");
    }
    const RVector df = gradient(f, x, step);
    const RVector dg = gradient(g, x, step);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        acc += signature(k) * (df(k) * dg(n + k) - df(n + k) * dg(k));
    }
    return acc;
}

}  // namespace geoqm::fd
