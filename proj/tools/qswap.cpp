// Command-line driver: entropy time series, detuning sweeps, period
// estimation and invariant verification for the atom/cavity swap protocol.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qswap/experiments.hpp"

namespace {

// All run-config flags are collected as raw strings and funneled through
// parse_config so that file values and flag values get identical validation.
struct ConfigFlags {
    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path,
                       "config file, one key = value per line, '#' comments");
        const struct {
            const char* flag;
            const char* key;
            const char* help;
        } specs[] = {
            {"--g1", "g1", "coupling rate of the e<->f transition (rad/us)"},
            {"--g2", "g2", "coupling rate of the f<->g transition (rad/us)"},
            {"--delta-over-g", "delta_over_g", "detuning in units of g1"},
            {"--alpha1", "alpha1", "atom-pair |g,e> amplitude, re[,im]"},
            {"--beta1", "beta1", "atom-pair |e,g> amplitude, re[,im]"},
            {"--alpha2", "alpha2", "field-pair |2,0> amplitude, re[,im]"},
            {"--beta2", "beta2", "field-pair |0,2> amplitude, re[,im]"},
            {"--t-start", "t_start", "first sample time (us)"},
            {"--t-end", "t_end", "last sample time (us)"},
            {"--t-step", "t_step", "sampling interval (us)"},
            {"--out", "out", "output path (default: stdout)"},
        };
        for (const auto& spec : specs) {
            options[spec.key] = app.add_option(spec.flag, values[spec.key], spec.help);
        }
    }

    bool given(const std::string& key) const { return options.at(key)->count() > 0; }

    qswap::RunConfig resolve() const {
        qswap::ConfigEntries overrides;
        for (const auto& [key, value] : values) {
            if (given(key)) overrides.emplace_back(key, value);
        }
        std::optional<std::string> path;
        if (!config_path.empty()) path = config_path;
        return qswap::parse_config(path, overrides);
    }
};

int with_output(const qswap::RunConfig& config, const auto& writer) {
    if (config.output_path.empty()) {
        writer(std::cout);
        return 0;
    }
    std::ofstream out(config.output_path);
    if (!out) {
        std::cerr << "error: cannot open '" << config.output_path << "' for writing\n";
        return 2;
    }
    writer(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement-swapping entropy dynamics in the two-photon cascade "
                 "Jaynes-Cummings model"};
    app.require_subcommand(1);

    auto* evolve = app.add_subcommand("evolve", "entropy time series as CSV");
    ConfigFlags evolve_flags;
    evolve_flags.attach(*evolve);
    bool dump_state = false;
    evolve->add_flag("--dump-state", dump_state,
                     "dump the composite state at t_end instead of the series");

    auto* sweep = app.add_subcommand("sweep", "detuning sweep: period and peak entropy");
    ConfigFlags sweep_flags;
    sweep_flags.attach(*sweep);
    std::vector<double> deltas_over_g;
    sweep->add_option("--deltas", deltas_over_g, "detunings in units of g1")
        ->delimiter(',')
        ->required();

    auto* period = app.add_subcommand("period", "period estimate for one series");
    ConfigFlags period_flags;
    period_flags.attach(*period);

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    ConfigFlags verify_flags;
    verify_flags.attach(*verify);
    double rk_step = 0.0;
    auto* rk_step_opt =
        verify->add_option("--rk-step", rk_step, "oracle integrator step (us)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve) {
            const qswap::RunConfig config = evolve_flags.resolve();
            if (dump_state) {
                const qswap::CompositeKet ket =
                    qswap::evolve_swap(config.coeffs, config.params, config.t_end);
                return with_output(config, [&](std::ostream& out) {
                    qswap::write_state_dump(ket, out);
                });
            }
            const qswap::EntropySeries series = qswap::entropy_timeseries(config);
            return with_output(config, [&](std::ostream& out) {
                qswap::write_series_csv(series, out);
            });
        }
        if (*sweep) {
            const qswap::RunConfig config = sweep_flags.resolve();
            std::vector<double> deltas;
            deltas.reserve(deltas_over_g.size());
            for (double d : deltas_over_g) deltas.push_back(d * config.params.g1);
            std::optional<double> step_override;
            if (sweep_flags.given("t_step")) step_override = config.t_step;
            const qswap::SweepResult result =
                qswap::sweep_detuning(config, deltas, step_override);
            return with_output(config, [&](std::ostream& out) {
                qswap::write_sweep_csv(result, out);
            });
        }
        if (*period) {
            const qswap::RunConfig config = period_flags.resolve();
            const auto estimate = qswap::estimate_period(qswap::entropy_timeseries(config));
            return with_output(config, [&](std::ostream& out) {
                if (estimate) {
                    out << "period_us=" << estimate->period
                        << " confidence=" << estimate->confidence
                        << " method=" << qswap::PeriodEstimate::method << '\n';
                } else {
                    out << "aperiodic at this horizon\n";
                }
            });
        }
        if (*verify) {
            const qswap::RunConfig config = verify_flags.resolve();
            const double step =
                rk_step_opt->count() > 0
                    ? rk_step
                    : std::min(qswap::default_step(config.params, qswap::ManifoldIndex(0)),
                               qswap::default_step(config.params, qswap::ManifoldIndex(2)));
            const qswap::VerificationReport report =
                qswap::verify(config, qswap::IntegratorConfig(step));
            const int io_status = with_output(config, [&](std::ostream& out) {
                qswap::write_verification_report(report, out);
            });
            if (io_status != 0) return io_status;
            return report.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 0;
}
