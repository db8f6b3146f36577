// Numerical experiments over the swap protocol: entropy time series,
// autocorrelation period estimates, detuning sweeps, and the cross-module
// invariant verification report.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qswap/config.hpp"
#include "qswap/entropy.hpp"
#include "qswap/oracle.hpp"

namespace qswap {

struct EntropyRecord {
    double t;                       // us
    double entropy_bits;
    std::array<double, 6> lambda;   // analytic_spectrum order
};

struct EntropySeries {
    double t_step = 0.0;            // us, uniform grid spacing
    std::vector<EntropyRecord> records;
};

// Evaluates analytic_spectrum + von_neumann_entropy on the config's grid.
EntropySeries entropy_timeseries(const RunConfig& config);

// Header t_us,entropy_bits,lambda1..lambda6; 17 significant digits.
void write_series_csv(const EntropySeries& series, std::ostream& out);

struct PeriodEstimate {
    double period;      // us
    double confidence;  // peak autocorrelation / zero-lag autocorrelation
    static constexpr const char* method = "autocorrelation-peak";
};

// Autocorrelation of the mean-removed entropy signal; returns the lag of the
// largest local maximum whose value exceeds 0.5x the zero-lag value, or
// nullopt when no peak qualifies (aperiodic at this horizon).
std::optional<PeriodEstimate> estimate_period(const EntropySeries& series);

struct SweepRow {
    double delta;                          // rad/us
    std::optional<PeriodEstimate> period;
    double max_entropy;                    // bits, over the row's series
};

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::optional<LinearFit> fit;  // period vs delta over the periodic rows
};

// Expected-period seed for horizon selection: three beats of the slowest
// manifold envelope, 3 * 2pi / (Lambda_0 - |delta|/2). The two active
// manifolds (n = 0, 2) beat 3:7 at large detuning, so three slow beats is
// one full entropy period there.
double expected_period_seed(const CouplingParams& params);

// One row per detuning (rad/us). Each row's grid runs from base.t_start over
// a horizon of 2.6x the expected-period seed; the step is 0.01 us for
// |delta| <= 10 g1 and 0.05 us above, unless step_override is given.
// Couplings, coefficients and t_start come from base.
SweepResult sweep_detuning(const RunConfig& base, const std::vector<double>& deltas,
                           std::optional<double> step_override = {});

// Rows delta_rad_per_us,period_us,confidence,max_entropy_bits, then the fit
// as '#'-prefixed footer lines. Aperiodic rows carry "aperiodic" and an
// empty confidence cell.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

struct VerificationCheck {
    std::string name;
    double max_deviation;
    double tolerance;
    bool pass;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool all_pass() const;
};

// Runs the full invariant suite over the config's grid (subsampled where a
// check is expensive): propagator unitarity, closed-form vs oracle, swap-state
// norm, spectator marginal, reduction trace/Hermiticity/PSD, density sparsity
// pattern, analytic vs numeric spectrum, atomic vs field entropy.
VerificationReport verify(const RunConfig& config, const IntegratorConfig& integrator);

void write_verification_report(const VerificationReport& report, std::ostream& out);

}  // namespace qswap
