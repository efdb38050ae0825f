// coulomb_map.hpp: bound Coulomb spectra in 2-D and 3-D obtained from
// oscillator spectra through parabolic coordinates.
//
// 2-D: x = (u^2 - v^2)/2, y = u v turns the Coulomb problem at energy E into
// an oscillator of frequency omega with omega^2 = 2|E|/m and oscillator energy
// k = omega (n_u + n_v + 1). Only states even under (u, v) -> (-u, -v) survive,
// so n = n_u + n_v + 1 is odd.
//
// 3-D: two 2-D oscillators (mu, nu) with n_mu = n_nu; the oscillator energy
// carries one zero-point unit per planar mode, k = omega (n_mu + n_nu + 2).

#pragma once

#include <utility>
#include <vector>

namespace geoqm {

std::pair<double, double> parabolic_map(double u, double v);

struct CoulombLevel {
    int index = 0;        // level number N = 1, 2, ...
    int n = 0;            // oscillator quantum number fixing omega
    double energy = 0;
    long degeneracy = 0;
    double omega = 0;
};

struct CoulombSpectrum {
    int dimension = 2;
    double k = 1;
    double m = 1;
    std::vector<CoulombLevel> levels;
};

CoulombSpectrum coulomb_spectrum(int dimension, double k, double m, int n_levels);

// Oscillator labels contributing to level N.
// 2-D: (n_u, n_v) with n_u + n_v = 2N - 2 (even parity).
// 3-D: ((n1, n2), (n3, n4)) for the mu and nu planes with n1+n2 = n3+n4 = N-1.
std::vector<std::pair<int, int>> coulomb_states_2d(int level);
std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> coulomb_states_3d(int level);

}  // namespace geoqm
