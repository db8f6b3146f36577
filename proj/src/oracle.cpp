#include "qswap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qswap {

namespace {

struct ManifoldSystem {
    double gc1;    // g1 sqrt(n+1)
    double gc2;    // g2 sqrt(n+2)
    double delta;
};

// dC/dt = -i M(t) C with M the interaction-picture coupling matrix.
inline Eigen::Vector3cd derivative(const ManifoldSystem& sys, double t,
                                   const Eigen::Vector3cd& c) {
    const Complex phase = std::polar(1.0, sys.delta * t);  // e^{+i delta t}
    const Complex mc0 = sys.gc1 * std::conj(phase) * c[1];
    const Complex mc1 = sys.gc1 * phase * c[0] + sys.gc2 * phase * c[2];
    const Complex mc2 = sys.gc2 * std::conj(phase) * c[1];
    return {Complex(mc0.imag(), -mc0.real()), Complex(mc1.imag(), -mc1.real()),
            Complex(mc2.imag(), -mc2.real())};
}

inline Eigen::Vector3cd rk4_step(const ManifoldSystem& sys, double t, double h,
                                 const Eigen::Vector3cd& c) {
    const Eigen::Vector3cd k1 = derivative(sys, t, c);
    const Eigen::Vector3cd k2 = derivative(sys, t + 0.5 * h, c + (0.5 * h) * k1);
    const Eigen::Vector3cd k3 = derivative(sys, t + 0.5 * h, c + (0.5 * h) * k2);
    const Eigen::Vector3cd k4 = derivative(sys, t + h, c + h * k3);
    return c + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_resolution(const CouplingParams& params, ManifoldIndex n,
                      const IntegratorConfig& config) {
    const double fastest = std::max(rabi_frequency(params, n), std::abs(params.delta));
    if (config.step * fastest >= 0.05) {
        throw std::invalid_argument(
            "IntegratorConfig: step too large for this manifold (step * max(Lambda, |delta|) "
            "must be < 0.05)");
    }
}

// Integrates from t_from to t_to, stepping with config.step measured from
// the global origin so that grid-aligned segments retrace the same steps a
// from-zero integration would take.
Eigen::Vector3cd integrate_segment(const ManifoldSystem& sys, Eigen::Vector3cd c,
                                   double t_from, double t_to, double h) {
    const double span = t_to - t_from;
    const auto full_steps = static_cast<long long>(std::floor(span / h + 1e-12));
    for (long long i = 0; i < full_steps; ++i) {
        c = rk4_step(sys, t_from + static_cast<double>(i) * h, h, c);
    }
    const double done = t_from + static_cast<double>(full_steps) * h;
    const double rest = t_to - done;
    if (rest > 1e-15 * std::max(1.0, std::abs(t_to))) {
        c = rk4_step(sys, done, rest, c);
    }
    return c;
}

}  // namespace

IntegratorConfig::IntegratorConfig(double step_) : step(step_) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("IntegratorConfig: step must be positive and finite");
    }
}

double default_step(const CouplingParams& params, ManifoldIndex n) {
    return 1e-3 / std::max({rabi_frequency(params, n), std::abs(params.delta) / 2.0, 1.0});
}

Eigen::Vector3cd integrate_manifold(const CouplingParams& params, ManifoldIndex n,
                                    const Eigen::Vector3cd& initial, double t,
                                    const IntegratorConfig& config) {
    if (t < 0.0) {
        throw std::invalid_argument("integrate_manifold: t must be >= 0");
    }
    check_resolution(params, n, config);
    const ManifoldSystem sys{params.g1 * std::sqrt(n.n + 1.0),
                             params.g2 * std::sqrt(n.n + 2.0), params.delta};
    return integrate_segment(sys, initial, 0.0, t, config.step);
}

double compare_propagators(const CouplingParams& params, ManifoldIndex n, double t,
                           const IntegratorConfig& config) {
    const Eigen::Matrix3cd u = manifold_propagator(params, n, t).u;
    double max_dev = 0.0;
    for (int col = 0; col < 3; ++col) {
        Eigen::Vector3cd basis = Eigen::Vector3cd::Zero();
        basis[col] = 1.0;
        const Eigen::Vector3cd integrated = integrate_manifold(params, n, basis, t, config);
        max_dev = std::max(max_dev, (integrated - u.col(col)).cwiseAbs().maxCoeff());
    }
    return max_dev;
}

double compare_propagators_grid(const CouplingParams& params, ManifoldIndex n,
                                const std::vector<double>& t_grid,
                                const IntegratorConfig& config) {
    check_resolution(params, n, config);
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        if (!(t_grid[i] < t_grid[i + 1])) {
            throw std::invalid_argument("compare_propagators_grid: grid must be ascending");
        }
    }
    if (!t_grid.empty() && t_grid.front() < 0.0) {
        throw std::invalid_argument("compare_propagators_grid: grid must be non-negative");
    }
    const ManifoldSystem sys{params.g1 * std::sqrt(n.n + 1.0),
                             params.g2 * std::sqrt(n.n + 2.0), params.delta};
    double max_dev = 0.0;
    for (int col = 0; col < 3; ++col) {
        Eigen::Vector3cd c = Eigen::Vector3cd::Zero();
        c[col] = 1.0;
        double t_prev = 0.0;
        for (double t : t_grid) {
            c = integrate_segment(sys, c, t_prev, t, config.step);
            t_prev = t;
            const Eigen::Matrix3cd u = manifold_propagator(params, n, t).u;
            max_dev = std::max(max_dev, (c - u.col(col)).cwiseAbs().maxCoeff());
        }
    }
    return max_dev;
}

}  // namespace qswap
