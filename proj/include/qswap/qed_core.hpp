// Closed-form propagators for the two-photon cascade Jaynes-Cummings model.
//
// A three-level atom in Xi configuration (ladder e <-> f <-> g) exchanges
// photons with one cavity mode. The interaction conserves excitation number,
// so the dynamics decompose into 3-dimensional invariant manifolds
// {|e,n>, |f,n+1>, |g,n+2>} plus the uncoupled dark state |g,0>.
// Everything here is evaluated in closed form; see oracle.hpp for the
// independent integrator used to verify these expressions.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qswap {

using Complex = std::complex<double>;

// Atomic levels of the cascade, top to bottom.
enum class Level { e = 0, f = 1, g = 2 };

char level_char(Level a);
Level level_from_char(char c);

// Coupling rates and detuning, all in rad/us. With g = 1 rad/us the time
// axes come out in microseconds, matching the usual "g = 1 MHz" convention.
struct CouplingParams {
    double g1;     // |e><f| transition coupling, > 0
    double g2;     // |f><g| transition coupling, > 0
    double delta;  // detuning, any finite value

    CouplingParams(double g1, double g2, double delta);
};

// delta = cavity_freq - (omega_e - omega_f). Only delta enters the dynamics;
// the individual frequencies are never stored.
double delta_from_frequencies(double cavity_freq, double omega_e, double omega_f);

// Photon index n >= 0 labelling the manifold {|e,n>, |f,n+1>, |g,n+2>}.
struct ManifoldIndex {
    explicit ManifoldIndex(int n);
    int n;
};

// Unitary 3x3 propagator on one manifold. Row/column order is (e, f, g),
// i.e. row 0 holds the amplitude on |e,n>, row 1 on |f,n+1>, row 2 on |g,n+2>.
// Column j is the evolved amplitude triple for the j-th basis initial state.
struct ManifoldPropagator {
    Eigen::Matrix3cd u;
    double t;  // elapsed time, us
    ManifoldIndex n;
};

// alpha_n = sqrt(g1^2 (n+1) + g2^2 (n+2)), the combined coupling rate.
double alpha_n(const CouplingParams& params, ManifoldIndex n);

// Rabi frequency Lambda_n = sqrt(delta^2/4 + alpha_n^2).
double rabi_frequency(const CouplingParams& params, ManifoldIndex n);

// gamma_n(t) = [Lambda cos(Lambda t) + i (delta/2) sin(Lambda t)
//               - Lambda e^{i delta t / 2}] e^{-i delta t / 2}.
// Vanishes at t = 0; drives the two-photon (e <-> g) amplitudes.
Complex gamma_n(const CouplingParams& params, ManifoldIndex n, double t);

ManifoldPropagator manifold_propagator(const CouplingParams& params, ManifoldIndex n,
                                       double t);

// Propagates an amplitude triple (C_e, C_f, C_g) for time t.
Eigen::Vector3cd evolve_triple(const CouplingParams& params, ManifoldIndex n,
                               const Eigen::Vector3cd& initial, double t);

// Amplitude of the dark state |g,0>, which has no coupling partner and is
// static in the interaction picture. Throws for any (level, photons) pair
// that belongs to a 3-dimensional manifold.
Complex dark_amplitude(Level level, int photons, double t);

}  // namespace qswap
