#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qswap/experiments.hpp"

using namespace qswap;

namespace {

constexpr double kPiOverSqrt3 = 1.8137993642342178;

EntropySeries synthetic(double t_step, std::size_t n, const auto& signal) {
    EntropySeries series;
    series.t_step = t_step;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * t_step;
        series.records.push_back({t, signal(t), {}});
    }
    return series;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = std::string("qswap_test_cfg_") + std::to_string(counter++) + ".txt";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("run config validation names the offending field") {
    RunConfig config;
    config.t_end = config.t_start;
    CHECK_THROWS_WITH_AS(config.validate(),
                         doctest::Contains("t_start"), std::invalid_argument);

    config = RunConfig{};
    config.t_step = -1.0;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("t_step"),
                         std::invalid_argument);

    config = RunConfig{};
    config.t_end = 1e7;
    config.t_step = 1e-4;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("t_step"),
                         std::invalid_argument);

    config = RunConfig{};
    config.coeffs.alpha1 = 1.0;
    config.coeffs.beta1 = 0.5;
    CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("alpha1"),
                         std::invalid_argument);
}

TEST_CASE("grid helpers") {
    RunConfig config;
    config.t_start = 0.0;
    config.t_end = 0.1;
    config.t_step = 0.01;
    CHECK(config.grid_size() == 11);
    CHECK(config.grid_time(0) == 0.0);
    CHECK(config.grid_time(10) == doctest::Approx(0.1));
}

TEST_CASE("parse_complex") {
    CHECK(parse_complex("0.5") == Complex(0.5, 0.0));
    CHECK(parse_complex("0.5,-0.25") == Complex(0.5, -0.25));
    CHECK(parse_complex(" 1 , 2 ") == Complex(1.0, 2.0));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1,2,3"), std::invalid_argument);
}

TEST_CASE("parse_config defaults are the canonical run") {
    const RunConfig config = parse_config(std::nullopt, {});
    CHECK(config.params.g1 == 1.0);
    CHECK(config.params.g2 == 1.0);
    CHECK(config.params.delta == 0.0);
    CHECK(config.coeffs.alpha1 == Complex(0.7071067811865476, 0.0));
    CHECK(config.t_start == 0.0);
    CHECK(config.t_end == 50.0);
    CHECK(config.t_step == 0.01);
    CHECK(config.output_path.empty());
}

TEST_CASE("parse_config applies the unit contract for delta") {
    const RunConfig config = parse_config(std::nullopt, {{"delta_over_g", "50"}});
    CHECK(config.params.delta == 50.0);
    const RunConfig scaled =
        parse_config(std::nullopt, {{"g1", "2"}, {"delta_over_g", "50"}});
    CHECK(scaled.params.delta == 100.0);
}

TEST_CASE("parse_config rejects bad input with a named field") {
    CHECK_THROWS_WITH_AS(parse_config(std::nullopt, {{"t_step", "fast"}}),
                         doctest::Contains("t_step"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(std::nullopt, {{"frobnicate", "1"}}),
                         doctest::Contains("frobnicate"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(std::nullopt, {{"alpha1", "1"}, {"beta1", "0.5"}}),
                         doctest::Contains("alpha1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(std::string("no_such_file.cfg"), {}),
                    std::invalid_argument);
}

TEST_CASE("config file parsing, comments and flag precedence") {
    const TempFile file("# canonical but shorter\n"
                        "t_end = 10\n"
                        "delta_over_g = 3   # figure-3 detuning\n"
                        "\n"
                        "alpha1 = 0.6\n"
                        "beta1 = 0,0.8\n");
    const RunConfig from_file = parse_config(file.path, {});
    CHECK(from_file.t_end == 10.0);
    CHECK(from_file.params.delta == 3.0);
    CHECK(from_file.coeffs.alpha1 == Complex(0.6, 0.0));
    CHECK(from_file.coeffs.beta1 == Complex(0.0, 0.8));

    const RunConfig overridden = parse_config(file.path, {{"t_end", "20"}});
    CHECK(overridden.t_end == 20.0);

    const TempFile bad("t_end 10\n");
    CHECK_THROWS_WITH_AS(parse_config(bad.path, {}), doctest::Contains("key = value"),
                         std::invalid_argument);
}

TEST_CASE("single-point series at t = 0 has zero entropy") {
    RunConfig config;
    config.t_end = 0.005;  // grid collapses to {0}
    const EntropySeries series = entropy_timeseries(config);
    CHECK(series.records.size() == 1);
    CHECK(series.records.front().t == 0.0);
    CHECK(series.records.front().entropy_bits < 1e-12);
}

TEST_CASE("series hits the hand-derived spot value") {
    RunConfig config;
    config.coeffs.alpha2 = 0.0;
    config.coeffs.beta2 = 1.0;
    config.t_start = kPiOverSqrt3;
    config.t_end = kPiOverSqrt3 + 0.005;
    const EntropySeries series = entropy_timeseries(config);
    CHECK(series.records.size() == 1);
    CHECK(std::abs(series.records.front().entropy_bits - 0.99108) < 1e-5);
}

TEST_CASE("series records satisfy the spectrum invariants") {
    RunConfig config;
    config.params = CouplingParams(1.0, 1.0, 3.0);
    config.t_end = 20.0;
    const EntropySeries series = entropy_timeseries(config);
    CHECK(series.records.size() == 2001);
    double prev_t = -1.0;
    for (const EntropyRecord& r : series.records) {
        CHECK(r.t > prev_t);
        prev_t = r.t;
        double sum = 0.0;
        for (double lambda : r.lambda) sum += lambda;
        CHECK(std::abs(sum - 1.0) < 1e-9);
        CHECK(r.entropy_bits >= 0.0);
    }
}

TEST_CASE("series CSV is deterministic with the pinned header") {
    RunConfig config;
    config.t_end = 0.5;
    config.t_step = 0.1;
    std::ostringstream a, b;
    write_series_csv(entropy_timeseries(config), a);
    write_series_csv(entropy_timeseries(config), b);
    const std::string csv = a.str();
    CHECK(csv == b.str());
    CHECK(csv.rfind("t_us,entropy_bits,lambda1,lambda2,lambda3,lambda4,lambda5,lambda6\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 rows
}

TEST_CASE("period of a pure sinusoid") {
    const auto series = synthetic(0.01, 3001, [](double t) {
        return 1.0 + 0.3 * std::sin(2.0 * 3.141592653589793 * t / 10.0);
    });
    const auto estimate = estimate_period(series);
    REQUIRE(estimate.has_value());
    CHECK(std::abs(estimate->period - 10.0) <= 0.02);
    CHECK(estimate->confidence > 0.5);
    CHECK(std::string(PeriodEstimate::method) == "autocorrelation-peak");
}

TEST_CASE("two commensurate tones report the full period") {
    const double pi = 3.141592653589793;
    const auto series = synthetic(0.01, 3001, [pi](double t) {
        return std::sin(2.0 * pi * t / 10.0) + std::sin(6.0 * pi * t / 10.0 + 0.4);
    });
    const auto estimate = estimate_period(series);
    REQUIRE(estimate.has_value());
    CHECK(std::abs(estimate->period - 10.0) <= 0.02);
}

TEST_CASE("aperiodic signals yield no estimate") {
    const auto ramp = synthetic(0.01, 2000, [](double t) { return t; });
    CHECK(!estimate_period(ramp).has_value());
    const auto constant = synthetic(0.01, 2000, [](double) { return 0.75; });
    CHECK(!estimate_period(constant).has_value());
    EntropySeries tiny = synthetic(0.01, 3, [](double t) { return t; });
    CHECK_THROWS_AS(estimate_period(tiny), std::invalid_argument);
    EntropySeries skewed = synthetic(0.01, 100, [](double t) { return std::sin(t); });
    skewed.records[50].t += 0.004;
    CHECK_THROWS_AS(estimate_period(skewed), std::invalid_argument);
}

TEST_CASE("full period at delta = 50 g" * doctest::timeout(120)) {
    RunConfig config;
    config.params = CouplingParams(1.0, 1.0, 50.0);
    config.t_end = 800.0;
    config.t_step = 0.05;
    const auto estimate = estimate_period(entropy_timeseries(config));
    REQUIRE(estimate.has_value());
    CHECK(std::abs(estimate->period - 316.0) / 316.0 < 0.03);
}

TEST_CASE("expected period seed tracks the measured large-detuning periods") {
    CHECK(std::abs(expected_period_seed({1, 1, 50}) - 316.0) / 316.0 < 0.01);
    CHECK(std::abs(expected_period_seed({1, 1, 100}) - 630.0) / 630.0 < 0.01);
    CHECK(std::abs(expected_period_seed({1, 1, 200}) - 1257.0) / 1257.0 < 0.01);
}

TEST_CASE("single-detuning sweep row" * doctest::timeout(120)) {
    const SweepResult result = sweep_detuning(RunConfig{}, {50.0});
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows.front().delta == 50.0);
    REQUIRE(result.rows.front().period.has_value());
    CHECK(std::abs(result.rows.front().period->period - 316.0) / 316.0 < 0.03);
    CHECK(result.rows.front().max_entropy > 0.0);
    CHECK(!result.fit.has_value());  // one point cannot be fitted

    std::ostringstream out;
    write_sweep_csv(result, out);
    CHECK(out.str().rfind("delta_rad_per_us,period_us,confidence,max_entropy_bits\n", 0) ==
          0);
    CHECK(out.str().find("# fit: insufficient periodic rows") != std::string::npos);

    // Identical configs must serialize byte-identically.
    std::ostringstream repeat;
    write_sweep_csv(sweep_detuning(RunConfig{}, {50.0}), repeat);
    CHECK(repeat.str() == out.str());
}

TEST_CASE("resonant sweep row reports the quasi-periodic near-recurrence") {
    // At delta = 0 the signal mixes the incommensurate rates sqrt(3) and
    // sqrt(7): no true period exists, but the state nearly recurs every
    // ~7.2 us (4 pi / sqrt(3), 97% coherent), which clears the 0.5
    // prominence threshold. Frozen from a measured run.
    const SweepResult result = sweep_detuning(RunConfig{}, {0.0});
    REQUIRE(result.rows.size() == 1);
    REQUIRE(result.rows.front().period.has_value());
    CHECK(std::abs(result.rows.front().period->period - 7.22) < 0.2);
    CHECK(result.rows.front().period->confidence > 0.5);
    CHECK(result.rows.front().max_entropy > 2.0);
}

TEST_CASE("sweep CSV marks rows without a qualifying peak as aperiodic") {
    SweepResult result;
    result.rows.push_back({0.0, std::nullopt, 1.5});
    std::ostringstream out;
    write_sweep_csv(result, out);
    CHECK(out.str().find("aperiodic") != std::string::npos);
}

TEST_CASE("verification report passes on the canonical configuration") {
    RunConfig config;
    config.t_end = 5.0;
    config.t_step = 0.05;
    const IntegratorConfig integrator(default_step(config.params, ManifoldIndex(2)));
    const VerificationReport report = verify(config, integrator);
    CHECK(report.checks.size() == 8);
    for (const VerificationCheck& check : report.checks) {
        INFO(check.name, " dev=", check.max_deviation);
        CHECK(check.pass);
    }
    CHECK(report.all_pass());

    std::ostringstream out;
    write_verification_report(report, out);
    CHECK(out.str().find("closed-form-vs-oracle") != std::string::npos);
    CHECK(out.str().find("all checks passed") != std::string::npos);
}

TEST_CASE("verification report formatting flags failures") {
    VerificationReport report;
    report.checks.push_back({"example-check", 1.0, 0.5, false});
    CHECK(!report.all_pass());
    std::ostringstream out;
    write_verification_report(report, out);
    CHECK(out.str().find("FAIL") != std::string::npos);
}

TEST_CASE("off-resonant verification with a detuned config" * doctest::timeout(240)) {
    RunConfig config;
    config.params = CouplingParams(1.0, 1.0, 200.0);
    config.t_end = 100.0;
    config.t_step = 0.05;
    const VerificationReport report = verify(config, IntegratorConfig(2e-5));
    for (const VerificationCheck& check : report.checks) {
        INFO(check.name, " dev=", check.max_deviation);
        CHECK(check.pass);
    }
}
