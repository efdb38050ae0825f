#include "geoqm/degrees_of_freedom.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace geoqm {

namespace {

using u128 = unsigned __int128;

// floor(sqrt(n)) for n < 2^67; the double estimate is corrected exactly.
std::uint64_t isqrt(u128 n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

std::int64_t cantor_pair(std::int64_t n1, std::int64_t n2) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("cantor_pair: negative argument");
    const u128 s = static_cast<u128>(n1) + static_cast<u128>(n2);
    const u128 n = static_cast<u128>(n1) + s * (s + 1) / 2;
    if (n > static_cast<u128>(INT64_MAX)) throw std::overflow_error("cantor_pair: result overflows");
    return static_cast<std::int64_t>(n);
}

std::int64_t triangular_root(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("triangular_root: negative argument");
    // w = floor((sqrt(8n + 1) - 1) / 2)
    const u128 disc = 8 * static_cast<u128>(n) + 1;
    auto w = static_cast<std::int64_t>((isqrt(disc) - 1) / 2);
    while (static_cast<u128>(w) * (w + 1) / 2 > static_cast<u128>(n)) --w;
    while (static_cast<u128>(w + 1) * (w + 2) / 2 <= static_cast<u128>(n)) ++w;
    return w;
}

std::pair<std::int64_t, std::int64_t> cantor_unpair(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("cantor_unpair: negative argument");
    const std::int64_t w = triangular_root(n);
    const std::int64_t n1 = n - w * (w + 1) / 2;
    return {n1, w - n1};
}

std::string PairingTable::to_csv() const {
    std::ostringstream os;
    os << "n,n1,n2\n";
    for (std::size_t n = 0; n < forward.size(); ++n) {
        os << n << ',' << forward[n].first << ',' << forward[n].second << '\n';
    }
    return os.str();
}

PairingTable pairing_table(std::int64_t max_n) {
    if (max_n < 0) throw std::invalid_argument("pairing_table: negative max_n");
    PairingTable t;
    t.max_n = max_n;
    t.forward.reserve(static_cast<std::size_t>(max_n) + 1);
    for (std::int64_t n = 0; n <= max_n; ++n) t.forward.push_back(cantor_unpair(n));
    return t;
}

bool is_complete_antidiagonal(std::int64_t d) {
    if (d < 1) return false;
    const std::int64_t m = triangular_root(d);
    return m * (m + 1) / 2 == d;
}

SplitOperators build_split_operators(Eigen::Index d, double hbar, double omega) {
    if (d < 1) throw std::invalid_argument("build_split_operators: D must be >= 1");
    SplitOperators s;
    s.dim = d;
    RVector n1(d), n2(d), h(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto [a, b] = cantor_unpair(k);
        n1(k) = static_cast<double>(a);
        n2(k) = static_cast<double>(b);
        const double tot = static_cast<double>(a + b);
        h(k) = hbar * omega * (n1(k) + 0.5 * tot * (tot + 1.0) + 0.5);
    }
    s.n1 = std::move(n1);
    s.n2 = std::move(n2);
    s.h = std::move(h);
    if (!is_complete_antidiagonal(d)) {
        s.warnings.push_back("D = " + std::to_string(d) +
                             " is not of the form m(m+1)/2; the last anti-diagonal is partial and "
                             "degeneracy counts of n1, n2 are distorted");
    }
    return s;
}

HermitianOperator build_K(Eigen::Index d) {
    if (d < 1) throw std::invalid_argument("build_K: D must be >= 1");
    RVector v(d);
    for (Eigen::Index k = 0; k < d; ++k) v(k) = 1.0 / static_cast<double>((k + 1) * (k + 1));
    return HermitianOperator::diagonal(v);
}

NewtonPolynomial::NewtonPolynomial(RVector nodes, const RVector& values)
    : nodes_(std::move(nodes)), coeffs_(values) {
    if (nodes_.size() != values.size() || nodes_.size() == 0) {
        throw std::invalid_argument("NewtonPolynomial: need matching, nonempty nodes and values");
    }
    const Eigen::Index n = nodes_.size();
    for (Eigen::Index j = 1; j < n; ++j) {
        for (Eigen::Index i = n - 1; i >= j; --i) {
            const double dx = nodes_(i) - nodes_(i - j);
            if (dx == 0.0) throw std::invalid_argument("NewtonPolynomial: repeated node");
            coeffs_(i) = (coeffs_(i) - coeffs_(i - 1)) / dx;
        }
    }
}

double NewtonPolynomial::operator()(double x) const {
    const Eigen::Index n = nodes_.size();
    double acc = coeffs_(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i) acc = acc * (x - nodes_(i)) + coeffs_(i);
    return acc;
}

RMatrix NewtonPolynomial::apply_diagonal(const RMatrix& diag) const {
    RVector out(diag.rows());
    for (Eigen::Index k = 0; k < diag.rows(); ++k) out(k) = (*this)(diag(k, k));
    return out.asDiagonal();
}

NewtonPolynomial interpolate_on_K(const RVector& target_diagonal) {
    const Eigen::Index d = target_diagonal.size();
    const RVector nodes = build_K(d).matrix().diagonal().real();
    return NewtonPolynomial(nodes, target_diagonal);
}

Ladder build_ladder(const std::vector<double>& energies) {
    if (energies.empty()) throw std::invalid_argument("build_ladder: empty spectrum");
    for (std::size_t k = 1; k < energies.size(); ++k) {
        if (!(energies[k] > energies[k - 1])) {
            throw std::invalid_argument("build_ladder: energies must be strictly increasing");
        }
    }
    const auto d = static_cast<Eigen::Index>(energies.size());
    Ladder l;
    l.a = RMatrix::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) l.a(k - 1, k) = std::sqrt(static_cast<double>(k));
    l.a_dag = l.a.transpose();
    // a^T a equals this up to rounding of sqrt(k)^2; the exact integers are stored.
    l.n_op = RVector::LinSpaced(d, 0.0, static_cast<double>(d - 1)).asDiagonal();
    l.energies = Eigen::Map<const RVector>(energies.data(), d);
    return l;
}

}  // namespace geoqm
