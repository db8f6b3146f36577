#include "qswap/qed_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qswap {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

char level_char(Level a) {
    switch (a) {
        case Level::e: return 'e';
        case Level::f: return 'f';
        case Level::g: return 'g';
    }
    throw std::invalid_argument("level_char: invalid level");
}

Level level_from_char(char c) {
    switch (c) {
        case 'e': return Level::e;
        case 'f': return Level::f;
        case 'g': return Level::g;
    }
    throw std::invalid_argument(std::string("level_from_char: invalid level '") + c + "'");
}

CouplingParams::CouplingParams(double g1_, double g2_, double delta_)
    : g1(g1_), g2(g2_), delta(delta_) {
    if (!(g1 > 0.0) || !std::isfinite(g1)) {
        throw std::invalid_argument("CouplingParams: g1 must be positive and finite");
    }
    if (!(g2 > 0.0) || !std::isfinite(g2)) {
        throw std::invalid_argument("CouplingParams: g2 must be positive and finite");
    }
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("CouplingParams: delta must be finite");
    }
}

double delta_from_frequencies(double cavity_freq, double omega_e, double omega_f) {
    return cavity_freq - (omega_e - omega_f);
}

ManifoldIndex::ManifoldIndex(int n_) : n(n_) {
    if (n < 0) {
        throw std::invalid_argument("ManifoldIndex: n must be >= 0");
    }
}

double alpha_n(const CouplingParams& params, ManifoldIndex n) {
    return std::sqrt(params.g1 * params.g1 * (n.n + 1) + params.g2 * params.g2 * (n.n + 2));
}

double rabi_frequency(const CouplingParams& params, ManifoldIndex n) {
    const double a = alpha_n(params, n);
    return std::sqrt(params.delta * params.delta / 4.0 + a * a);
}

Complex gamma_n(const CouplingParams& params, ManifoldIndex n, double t) {
    const double lambda = rabi_frequency(params, n);
    const double half_delta_t = 0.5 * params.delta * t;
    const Complex bracket = lambda * std::cos(lambda * t) +
                            kI * (0.5 * params.delta) * std::sin(lambda * t) -
                            lambda * std::exp(kI * half_delta_t);
    return bracket * std::exp(-kI * half_delta_t);
}

ManifoldPropagator manifold_propagator(const CouplingParams& params, ManifoldIndex n,
                                       double t) {
    const double gc1 = params.g1 * std::sqrt(n.n + 1.0);  // e <-> f ladder rate
    const double gc2 = params.g2 * std::sqrt(n.n + 2.0);  // f <-> g ladder rate
    const double a = alpha_n(params, n);
    const double a2 = a * a;
    const double lambda = rabi_frequency(params, n);

    const double s = std::sin(lambda * t);
    const double c = std::cos(lambda * t);
    const Complex phase = std::exp(kI * (0.5 * params.delta * t));  // e^{+i delta t/2}
    const Complex gam = gamma_n(params, n, t);

    // The e and g rows carry e^{-i delta t/2}, the f row e^{+i delta t/2};
    // the remaining factor is exp(-i H t) of a constant Hermitian matrix,
    // which is why this matrix is exactly unitary.
    const Complex two_photon = gc1 * gc2 * gam / (lambda * a2);
    const Complex sin_term = -kI * (s / lambda);

    ManifoldPropagator p{Eigen::Matrix3cd(), t, n};
    p.u(0, 0) = 1.0 + gc1 * gc1 * gam / (lambda * a2);
    p.u(0, 1) = sin_term * gc1 * std::conj(phase);
    p.u(0, 2) = two_photon;
    p.u(1, 0) = sin_term * gc1 * phase;
    p.u(1, 1) = (c - kI * (0.5 * params.delta / lambda) * s) * phase;
    p.u(1, 2) = sin_term * gc2 * phase;
    p.u(2, 0) = two_photon;
    p.u(2, 1) = sin_term * gc2 * std::conj(phase);
    p.u(2, 2) = 1.0 + gc2 * gc2 * gam / (lambda * a2);
    return p;
}

Eigen::Vector3cd evolve_triple(const CouplingParams& params, ManifoldIndex n,
                               const Eigen::Vector3cd& initial, double t) {
    return manifold_propagator(params, n, t).u * initial;
}

Complex dark_amplitude(Level level, int photons, double t) {
    (void)t;
    if (level != Level::g || photons != 0) {
        throw std::invalid_argument(
            "dark_amplitude: only (g, 0) is dark; other states belong to a manifold");
    }
    return Complex(1.0, 0.0);
}

}  // namespace qswap
