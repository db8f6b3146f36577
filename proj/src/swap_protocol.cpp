#include "qswap/swap_protocol.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qswap {

bool BellCoefficients::normalized(double tol) const {
    const double atoms = std::norm(alpha1) + std::norm(beta1);
    const double fields = std::norm(alpha2) + std::norm(beta2);
    return std::abs(atoms - 1.0) <= tol && std::abs(fields - 1.0) <= tol;
}

void BellCoefficients::require_normalized(double tol) const {
    if (!normalized(tol)) {
        throw std::invalid_argument(
            "BellCoefficients: |alpha1|^2+|beta1|^2 and |alpha2|^2+|beta2|^2 must be 1");
    }
}

CompositeBasisState::CompositeBasisState(Level a1_, Level a2_, int n3_, int n4_)
    : a1(a1_), a2(a2_), n3(n3_), n4(n4_) {
    if (n3 < 0 || n3 > 4) {
        throw std::invalid_argument("CompositeBasisState: n3 must be in 0..4");
    }
    if (n4 != 0 && n4 != 2) {
        throw std::invalid_argument("CompositeBasisState: n4 must be 0 or 2");
    }
}

void CompositeKet::add(const CompositeBasisState& basis, Complex amplitude) {
    auto it = amps_.find(basis);
    if (it == amps_.end()) {
        if (amplitude != Complex(0.0, 0.0)) {
            amps_.emplace(basis, amplitude);
        }
        return;
    }
    it->second += amplitude;
}

Complex CompositeKet::amplitude(const CompositeBasisState& basis) const {
    auto it = amps_.find(basis);
    return it == amps_.end() ? Complex(0.0, 0.0) : it->second;
}

double CompositeKet::norm() const {
    double sum = 0.0;
    for (const auto& [basis, amp] : amps_) {
        sum += std::norm(amp);
    }
    return std::sqrt(sum);
}

CompositeKet build_initial_state(const BellCoefficients& coeffs) {
    coeffs.require_normalized();
    CompositeKet ket;
    ket.add({Level::g, Level::e, 2, 0}, coeffs.alpha1 * coeffs.alpha2);
    ket.add({Level::g, Level::e, 0, 2}, coeffs.alpha1 * coeffs.beta2);
    ket.add({Level::e, Level::g, 2, 0}, coeffs.beta1 * coeffs.alpha2);
    ket.add({Level::e, Level::g, 0, 2}, coeffs.beta1 * coeffs.beta2);
    return ket;
}

CompositeKet evolve_swap(const BellCoefficients& coeffs, const CouplingParams& params,
                         double t) {
    coeffs.require_normalized();
    if (t < 0.0) {
        throw std::invalid_argument("evolve_swap: t must be >= 0");
    }
    CompositeKet ket;

    // (e,2) branch, manifold n=2: |e,2> -> {|e,2>, |f,3>, |g,4>}.
    const Complex w_ee = coeffs.alpha1 * coeffs.alpha2;
    // (e,0) branch, manifold n=0: |e,0> -> {|e,0>, |f,1>, |g,2>}.
    const Complex w_e0 = coeffs.alpha1 * coeffs.beta2;
    // (g,2) branch, same manifold n=0 entered from the bottom state.
    const Complex w_g2 = coeffs.beta1 * coeffs.alpha2;
    // (g,0) branch: dark.
    const Complex w_dark = coeffs.beta1 * coeffs.beta2;

    if (w_ee != Complex(0.0, 0.0)) {
        const Eigen::Matrix3cd u = manifold_propagator(params, ManifoldIndex(2), t).u;
        ket.add({Level::g, Level::e, 2, 0}, w_ee * u(0, 0));
        ket.add({Level::g, Level::f, 3, 0}, w_ee * u(1, 0));
        ket.add({Level::g, Level::g, 4, 0}, w_ee * u(2, 0));
    }
    if (w_e0 != Complex(0.0, 0.0) || w_g2 != Complex(0.0, 0.0)) {
        const Eigen::Matrix3cd u = manifold_propagator(params, ManifoldIndex(0), t).u;
        if (w_e0 != Complex(0.0, 0.0)) {
            ket.add({Level::g, Level::e, 0, 2}, w_e0 * u(0, 0));
            ket.add({Level::g, Level::f, 1, 2}, w_e0 * u(1, 0));
            ket.add({Level::g, Level::g, 2, 2}, w_e0 * u(2, 0));
        }
        if (w_g2 != Complex(0.0, 0.0)) {
            ket.add({Level::e, Level::e, 0, 0}, w_g2 * u(0, 2));
            ket.add({Level::e, Level::f, 1, 0}, w_g2 * u(1, 2));
            ket.add({Level::e, Level::g, 2, 0}, w_g2 * u(2, 2));
        }
    }
    if (w_dark != Complex(0.0, 0.0)) {
        ket.add({Level::e, Level::g, 0, 2}, w_dark * dark_amplitude(Level::g, 0, t));
    }
    return ket;
}

Complex branch_amplitude(const BellCoefficients& coeffs, const CouplingParams& params,
                         double t, const CompositeBasisState& basis) {
    return evolve_swap(coeffs, params, t).amplitude(basis);
}

void write_state_dump(const CompositeKet& ket, std::ostream& out) {
    char line[128];
    for (const auto& [basis, amp] : ket.amplitudes()) {
        std::snprintf(line, sizeof(line), "%c,%c,%d,%d,%.17g,%.17g\n",
                      level_char(basis.a1), level_char(basis.a2), basis.n3, basis.n4,
                      amp.real(), amp.imag());
        out << line;
    }
}

}  // namespace qswap
