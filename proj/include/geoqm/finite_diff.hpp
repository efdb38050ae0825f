// finite_diff.hpp: central finite differences on R^m.
//
// Step sizes are relative: coordinate i uses h_i = step * max(1, |x_i|).

#pragma once

#include "geoqm/types.hpp"

#include <functional>

namespace geoqm::fd {

using ScalarField = std::function<double(const RVector&)>;
using VectorField = std::function<RVector(const RVector&)>;

inline constexpr double kDefaultStep = 1e-5;

double scaled_step(double step, double x);

RVector gradient(const ScalarField& f, const RVector& x, double step = kDefaultStep);

// Symmetric Hessian from second differences of f (no nested gradients).
RMatrix hessian(const ScalarField& f, const RVector& x, double step = kDefaultStep);

// Fourth-order versions: Richardson extrapolation of the above at steps h and h/2.
RVector gradient4(const ScalarField& f, const RVector& x, double step = 1e-3);
RMatrix hessian4(const ScalarField& f, const RVector& x, double step = 1e-3);

// J(i, j) = d F_i / d x_j.
RMatrix jacobian(const VectorField& F, const RVector& x, double step = kDefaultStep);

// d/ds f(x + s v) at s = 0, with the absolute step `step` along v.
double directional(const ScalarField& f, const RVector& x, const RVector& v, double step);

// Poisson bracket {f, g} = sum_k s_k (df/dq_k dg/dp_k - df/dp_k dg/dq_k) on
// coordinates (q_1..q_n, p_1..p_n); `signature` holds s_k (all +1 for the
// canonical bracket). Gradients by central differences.
double poisson_bracket(const ScalarField& f, const ScalarField& g, const RVector& x,
                       const RVector& signature, double step = kDefaultStep);

}  // namespace geoqm::fd
