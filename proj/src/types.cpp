#include "geoqm/types.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace geoqm {

double hermiticity_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m - m.adjoint());
}

HermitianOperator::HermitianOperator(CMatrix entries) : m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix must be square with dim >= 1");
    }
    if (!m_.allFinite()) {
        throw std::invalid_argument("HermitianOperator: non-finite entry");
    }
    const double scale = std::max(1.0, max_abs(m_));
    const double defect = hermiticity_defect(m_);
    if (defect > kHermitianTol * scale) {
        throw std::invalid_argument("HermitianOperator: not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    }
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
    return HermitianOperator(CMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const RVector& values) {
    return HermitianOperator(values.cast<Complex>().asDiagonal().toDenseMatrix());
}

HermitianOperator HermitianOperator::from_real(const RMatrix& symmetric) {
    return HermitianOperator(symmetric.cast<Complex>());
}

HermitianOperator HermitianOperator::sigma(int which) {
    const Complex i{0.0, 1.0};
    CMatrix s(2, 2);
    switch (which) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -i, i, 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("sigma: index must be 1, 2 or 3");
    }
    return HermitianOperator(std::move(s));
}

RealPoint::RealPoint(RVector coords) : coords_(std::move(coords)) {
    if (coords_.size() % 2 != 0) {
        throw std::invalid_argument("RealPoint: coordinate vector must have even length");
    }
}

RealPoint::RealPoint(const RVector& q, const RVector& p) {
    if (q.size() != p.size()) throw std::invalid_argument("RealPoint: q and p lengths differ");
    coords_.resize(2 * q.size());
    coords_ << q, p;
}

RealPoint RealPoint::from_complex(const CVector& z) { return RealPoint(realify(z)); }

CVector RealPoint::to_complex() const {
    const Eigen::Index k = n();
    CVector z(k);
    for (Eigen::Index j = 0; j < k; ++j) z(j) = Complex(coords_(j), coords_(k + j));
    return z;
}

RVector realify(const CVector& z) {
    RVector x(2 * z.size());
    x << z.real(), z.imag();
    return x;
}

RMatrix realify(const CMatrix& m) {
    // (S + iT)(q + ip) = (Sq - Tp) + i(Tq + Sp)
    const Eigen::Index n = m.rows();
    RMatrix r(2 * n, 2 * m.cols());
    r << m.real(), -m.imag(), m.imag(), m.real();
    return r;
}

}  // namespace geoqm
