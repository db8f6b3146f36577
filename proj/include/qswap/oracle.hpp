// Brute-force check of the closed-form propagators: fixed-step RK4
// integration of i dC/dt = M(t) C on each manifold, with
//   M = [[0, g1 sqrt(n+1) e^{-i delta t}, 0],
//        [g1 sqrt(n+1) e^{+i delta t}, 0, g2 sqrt(n+2) e^{+i delta t}],
//        [0, g2 sqrt(n+2) e^{-i delta t}, 0]].
// The manifold decomposition is exact (the interaction conserves excitation
// number), so there is no truncation beyond the integrator's own.

#pragma once

#include <vector>

#include "qswap/qed_core.hpp"

namespace qswap {

// Classical 4th-order, fixed step. Fixed step keeps runs byte-identical.
struct IntegratorConfig {
    double step;  // us
    static constexpr int order = 4;

    explicit IntegratorConfig(double step);
};

// 1e-3 / max(Lambda_n, |delta|/2, 1) us.
double default_step(const CouplingParams& params, ManifoldIndex n);

// Integrates the manifold system from 0 to t; the final partial step is
// allowed. Rejects steps violating step * max(Lambda_n, |delta|) < 0.05.
Eigen::Vector3cd integrate_manifold(const CouplingParams& params, ManifoldIndex n,
                                    const Eigen::Vector3cd& initial, double t,
                                    const IntegratorConfig& config);

// Integrates all three basis initial states to time t and returns the
// maximum entrywise |difference| against manifold_propagator.
double compare_propagators(const CouplingParams& params, ManifoldIndex n, double t,
                           const IntegratorConfig& config);

// Same deviation as compare_propagators evaluated at every grid time in one
// integration pass per basis column. Grid times must be ascending multiples
// of the step within rounding; returns the max over the grid.
double compare_propagators_grid(const CouplingParams& params, ManifoldIndex n,
                                const std::vector<double>& t_grid,
                                const IntegratorConfig& config);

}  // namespace qswap
