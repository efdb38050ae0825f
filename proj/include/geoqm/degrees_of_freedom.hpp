// degrees_of_freedom.hpp: splitting one discrete spectrum into two commuting
// labels (Cantor pairing), the universal diagonal operator K, and the ladder
// construction for an arbitrary lower-bounded spectrum.

#pragma once

#include "geoqm/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace geoqm {

// n = n1 + (n1 + n2)(n1 + n2 + 1) / 2, exact integer arithmetic.
std::int64_t cantor_pair(std::int64_t n1, std::int64_t n2);
std::pair<std::int64_t, std::int64_t> cantor_unpair(std::int64_t n);

// Largest w with w(w+1)/2 <= n.
std::int64_t triangular_root(std::int64_t n);

struct PairingTable {
    std::int64_t max_n = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> forward;  // index n

    std::int64_t backward(std::int64_t n1, std::int64_t n2) const { return cantor_pair(n1, n2); }
    std::string to_csv() const;
};

PairingTable pairing_table(std::int64_t max_n);

// True when D = m(m+1)/2 for some m >= 1 (complete anti-diagonals).
bool is_complete_antidiagonal(std::int64_t d);

// All three operators are diagonal in the oscillator basis; only the
// diagonals are stored.
struct SplitOperators {
    Eigen::Index dim = 0;
    RVector n1;
    RVector n2;
    RVector h;  // hbar omega (n1 + (n1+n2)(n1+n2+1)/2 + 1/2)
    std::vector<std::string> warnings;

    RMatrix n1_op() const { return n1.asDiagonal(); }
    RMatrix n2_op() const { return n2.asDiagonal(); }
    RMatrix h_op() const { return h.asDiagonal(); }
};

SplitOperators build_split_operators(Eigen::Index d, double hbar = 1.0, double omega = 1.0);

// K = diag(1/(k+1)^2), k = 0..D-1.
HermitianOperator build_K(Eigen::Index d);

// Newton-form interpolating polynomial through (x_k, y_k).
class NewtonPolynomial {
public:
    NewtonPolynomial(RVector nodes, const RVector& values);

    double operator()(double x) const;
    // g applied to a diagonal matrix: diag(g(m_kk)).
    RMatrix apply_diagonal(const RMatrix& diag) const;
    Eigen::Index degree() const noexcept { return nodes_.size() - 1; }

private:
    RVector nodes_;
    RVector coeffs_;
};

// Polynomial g with g(K) = target for a diagonal target on the same basis.
NewtonPolynomial interpolate_on_K(const RVector& target_diagonal);

struct Ladder {
    RMatrix a;
    RMatrix a_dag;
    RMatrix n_op;
    RVector energies;  // H_of_N: eigenvalue k of N maps to energies(k)

    double h_of_n(Eigen::Index k) const { return energies(k); }
    RMatrix hamiltonian() const { return energies.asDiagonal(); }
};

Ladder build_ladder(const std::vector<double>& energies);

}  // namespace geoqm
