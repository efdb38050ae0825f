#include "geoqm/coulomb_map.hpp"

#include <stdexcept>

namespace geoqm {

std::pair<double, double> parabolic_map(double u, double v) { return {0.5 * (u * u - v * v), u * v}; }

std::vector<std::pair<int, int>> coulomb_states_2d(int level) {
    if (level < 1) throw std::invalid_argument("coulomb_states_2d: level must be >= 1");
    // Walk oscillator shells n = n_u + n_v + 1 and keep the even states; the
    // level-th shell with survivors is the requested Coulomb level.
    int found = 0;
    for (int n = 1;; ++n) {
        std::vector<std::pair<int, int>> kept;
        for (int nu = 0; nu <= n - 1; ++nu) {
            const int nv = n - 1 - nu;
            if ((nu + nv) % 2 == 0) kept.emplace_back(nu, nv);
        }
        if (!kept.empty() && ++found == level) return kept;
    }
}

std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> coulomb_states_3d(int level) {
    if (level < 1) throw std::invalid_argument("coulomb_states_3d: level must be >= 1");
    const int quanta = level - 1;
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> out;
    for (int a = 0; a <= quanta; ++a)
        for (int b = 0; b <= quanta; ++b) out.push_back({{a, quanta - a}, {b, quanta - b}});
    return out;
}

CoulombSpectrum coulomb_spectrum(int dimension, double k, double m, int n_levels) {
    if (dimension != 2 && dimension != 3) throw std::invalid_argument("coulomb_spectrum: dimension must be 2 or 3");
    if (!(k > 0.0) || !(m > 0.0)) throw std::invalid_argument("coulomb_spectrum: k and m must be positive");
    if (n_levels < 1) throw std::invalid_argument("coulomb_spectrum: n_levels must be >= 1");
    CoulombSpectrum s;
    s.dimension = dimension;
    s.k = k;
    s.m = m;
    for (int level = 1; level <= n_levels; ++level) {
        CoulombLevel l;
        l.index = level;
        if (dimension == 2) {
            const auto states = coulomb_states_2d(level);
            l.n = states.front().first + states.front().second + 1;
            l.degeneracy = static_cast<long>(states.size());
            l.omega = k / l.n;
        } else {
            l.n = 2 * level;  // n_mu + n_nu + 2
            l.degeneracy = static_cast<long>(coulomb_states_3d(level).size());
            l.omega = k / l.n;
        }
        l.energy = -0.5 * m * l.omega * l.omega;
        s.levels.push_back(l);
    }
    return s;
}

}  // namespace geoqm
