// types.hpp: core value types shared by every module: Hermitian operators,
// points of the realified state space, and a few dense-matrix helpers.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace geoqm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;

// Largest absolute entry; 0 for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Largest |m(j,k) - conj(m(k,j))| over all entries.
double hermiticity_defect(const CMatrix& m);

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
inline RMatrix commutator(const RMatrix& a, const RMatrix& b) { return a * b - b * a; }

// Dense complex square matrix known to be Hermitian.
//
// Construction rejects inputs whose Hermiticity defect exceeds
// kHermitianTol * max(1, max|entry|); the matrix is stored as given, never
// symmetrized.
class HermitianOperator {
public:
    explicit HermitianOperator(CMatrix entries);

    static HermitianOperator identity(Eigen::Index dim);
    static HermitianOperator diagonal(const RVector& values);
    static HermitianOperator from_real(const RMatrix& symmetric);

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const CMatrix& matrix() const noexcept { return m_; }

    // Pauli matrices σ1, σ2, σ3.
    static HermitianOperator sigma(int which);

private:
    CMatrix m_;
};

// Point of the realified space H_R ≅ R^{2n}, coordinates (q_1..q_n, p_1..p_n)
// with z_k = q_k + i p_k.
class RealPoint {
public:
    RealPoint() = default;
    explicit RealPoint(RVector coords);
    RealPoint(const RVector& q, const RVector& p);

    static RealPoint from_complex(const CVector& z);
    static RealPoint zero(Eigen::Index n) { return RealPoint(RVector::Zero(2 * n)); }

    Eigen::Index n() const noexcept { return coords_.size() / 2; }
    const RVector& coords() const noexcept { return coords_; }
    auto q() const { return coords_.head(n()); }
    auto p() const { return coords_.tail(n()); }

    CVector to_complex() const;
    double norm_squared() const { return coords_.squaredNorm(); }

private:
    RVector coords_;
};

// Realification of a complex vector: (Re z, Im z) stacked.
RVector realify(const CVector& z);

// Real 2n x 2n matrix of the complex-linear map z -> M z.
RMatrix realify(const CMatrix& m);

}  // namespace geoqm
