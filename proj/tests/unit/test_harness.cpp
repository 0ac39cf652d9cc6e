#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "irislab/harness.hpp"
#include "irislab/units.hpp"
#include "test_support.hpp"

using namespace irislab;
using testsupport::Gen;
using testsupport::near_rel;
using testsupport::throws_kind;

namespace {

std::string preset_path(const std::string& name) {
    return std::string(IRISLAB_TEST_PRESET_DIR) + "/" + name + ".json";
}

std::string csv_of(const ExperimentResult& r) {
    std::ostringstream os;
    emit_csv(r, os);
    return os.str();
}

ExperimentSpec small_op_spec() {
    ExperimentSpec s;
    s.name = "small";
    s.experiment = Experiment::op_vs_snr;
    s.sweep = {{"N", {1, 3}}, {"snr_db", {90, 110, 130}}};
    s.plan.trials = 2000;
    s.plan.master_seed = 7;
    s.outputs = {Output::analytical, Output::asymptotic, Output::montecarlo_model};
    return s;
}

}  // namespace

TEST(Units, PowerParsing) {
    EXPECT_TRUE(near_rel(parse_power_w("30dBm"), 1.0, 1e-14));
    EXPECT_TRUE(near_rel(parse_power_w("9 dBW"), std::pow(10.0, 0.9), 1e-14));
    EXPECT_EQ(parse_power_w("1.0W"), 1.0);
    EXPECT_EQ(parse_power_w("250mW"), 0.25);
    EXPECT_EQ(parse_power_w("2"), 2.0);
    EXPECT_TRUE(near_rel(parse_power_w("10dBm"), 0.01, 1e-14));
    EXPECT_TRUE(throws_kind([] { parse_power_w("3 furlongs"); }, ErrorKind::config));
    EXPECT_TRUE(throws_kind([] { parse_power_w("dBm"); }, ErrorKind::config));
    EXPECT_EQ(parse_db("-30dB"), -30.0);
    EXPECT_TRUE(near_rel(w_to_dbm(dbm_to_w(-94)), -94, 1e-14));
    EXPECT_TRUE(near_rel(linear_to_db(db_to_linear(17.5)), 17.5, 1e-14));
}

TEST(Units, FormatDoubleRoundTrips) {
    Gen g(71);
    for (int i = 0; i < 1000; ++i) {
        const double x = g.log_uniform(1e-300, 1e300) * (g.integer(0, 1) ? 1 : -1);
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(2.0), "2");
}

TEST(Config, RoundTripProperty) {
    Gen g(73);
    for (int i = 0; i < 50; ++i) {
        NetworkConfig c;
        c.M = g.integer(1, 3), c.K = c.M + g.integer(0, 2), c.N = g.integer(1, 64);
        c.R = g.uniform(10, 500), c.r0 = g.uniform(0.1, 5), c.alpha = g.uniform(2.1, 5);
        c.d1 = g.uniform(0.5, 20), c.t1 = g.uniform(0.5, 6), c.t2 = g.uniform(0.5, 6);
        c.p_b = g.log_uniform(1e-6, 1e3), c.bandwidth_hz = g.log_uniform(1e3, 1e9);
        c.sigma2 = g.log_uniform(1e-16, 1e-9), c.ref_atten_db = g.uniform(-60, 0);
        c.R_m = g.uniform(0, 6);
        EXPECT_EQ(config_from_json(config_to_json(c)), c);
    }
}

TEST(Config, DefaultsAndErrors) {
    const auto c = config_from_json(R"({"N": 4, "p_b": "30dBm", "bandwidth_hz": 1e6})");
    EXPECT_EQ(c.N, 4);
    EXPECT_TRUE(near_rel(c.p_b, 1.0, 1e-14));
    EXPECT_TRUE(near_rel(c.sigma2, dbm_to_w(-114), 1e-12));
    EXPECT_TRUE(throws_kind([] { config_from_json(R"({"Nn": 4})"); }, ErrorKind::config));
    EXPECT_TRUE(throws_kind([] { config_from_json("{"); }, ErrorKind::config));
}

TEST(Spec, PresetsLoadAndRoundTrip) {
    for (const auto& e : std::filesystem::directory_iterator(IRISLAB_TEST_PRESET_DIR)) {
        SCOPED_TRACE(e.path().string());
        const auto s = load_spec(e.path().string());
        EXPECT_NO_THROW(s.validate());
        EXPECT_EQ(spec_from_json(spec_to_json(s)), s);
        EXPECT_NE(s.plan.master_seed, 0u);
    }
}

TEST(Spec, ValidationErrors) {
    auto bad = [](auto mutate) {
        auto s = small_op_spec();
        mutate(s);
        return throws_kind([&] { s.validate(); }, ErrorKind::config);
    };
    EXPECT_TRUE(bad([](ExperimentSpec& s) { s.sweep[1].values = {110, 90}; }));
    EXPECT_TRUE(bad([](ExperimentSpec& s) { s.sweep[1].values = {90, NAN}; }));
    EXPECT_TRUE(bad([](ExperimentSpec& s) { s.sweep[1].name = "snr"; }));
    EXPECT_TRUE(bad([](ExperimentSpec& s) { s.sweep.pop_back(); }));
    EXPECT_TRUE(bad([](ExperimentSpec& s) { s.sweep.push_back(s.sweep[0]); }));
    EXPECT_TRUE(bad([](ExperimentSpec& s) { s.experiment = Experiment::throughput_surface; }));
    EXPECT_TRUE(throws_kind([] { spec_from_json(R"({"name":"x","experiment":"op_vs_snr","sweep":[{"axis":"snr_db","values":[1]}],"plan":{"trials":10}})"); },
                            ErrorKind::config));
}

TEST(Emit, EmptyResultIsHeaderOnly) {
    ExperimentResult r;
    r.axis_names = {"N", "snr_db"};
    EXPECT_EQ(csv_of(r), "axis_N,axis_snr_db,series,value,std_error,trials\n");
}

TEST(Emit, JsonRoundTrip) {
    const auto r = run_experiment(small_op_spec());
    EXPECT_EQ(result_from_json(result_to_json(r)), r);
    const auto path = std::filesystem::temp_directory_path() / "irislab_roundtrip.json";
    emit_json(r, path.string());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(result_from_json(buf.str()), r);
    std::filesystem::remove(path);
    EXPECT_TRUE(throws_kind([&] { emit_csv(r, "/nonexistent-dir/x.csv"); }, ErrorKind::io));
}

TEST(RunExperiment, RowsAndErrorsFollowTheContract) {
    const auto r = run_experiment(small_op_spec());
    EXPECT_EQ(r.axis_names, (std::vector<std::string>{"N", "snr_db"}));
    EXPECT_TRUE(r.metadata.failures.empty());
    EXPECT_EQ(r.metadata.seed, 7u);
    EXPECT_FALSE(r.metadata.version.empty());
    int mc = 0;
    for (const auto& row : r.rows) {
        if (row.series == "montecarlo_model") {
            EXPECT_GT(row.std_error, 0.0);
            EXPECT_EQ(row.trials, 2000);
            ++mc;
        } else {
            EXPECT_EQ(row.std_error, 0.0);
        }
    }
    EXPECT_EQ(mc, 6);
    EXPECT_TRUE(std::is_sorted(r.rows.begin(), r.rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.axes, a.series) < std::tie(b.axes, b.series);
    }));
}

TEST(RunExperiment, CurvesSteepenWithN) {
    const auto r = run_experiment(small_op_spec());
    auto analytical = [&](double N, double snr) {
        for (const auto& row : r.rows)
            if (row.series == "analytical" && row.axes == std::vector<double>{N, snr}) return row.value;
        ADD_FAILURE() << N << ' ' << snr;
        return 0.0;
    };
    const double drop1 = analytical(1, 110) / analytical(1, 130);
    const double drop3 = analytical(3, 110) / analytical(3, 130);
    EXPECT_GT(drop3, drop1);
    EXPECT_LT(analytical(3, 130), analytical(1, 130));
}

TEST(RunExperiment, PointFailuresAreCollected) {
    auto s = small_op_spec();
    s.base.t1 = s.base.t2 = 1;  // the high-SNR closed form needs t1 != t2
    s.outputs = {Output::analytical, Output::montecarlo_model};
    const auto r = run_experiment(s);
    EXPECT_EQ(r.metadata.failures.size(), 6u);
    for (const auto& f : r.metadata.failures) EXPECT_EQ(f.series, "analytical");
    EXPECT_EQ(r.rows.size(), 6u);
}

TEST(RunExperiment, SeriesFilter) {
    auto s = small_op_spec();
    s.series_filter = {"asymptotic"};
    for (const auto& row : run_experiment(s).rows) EXPECT_EQ(row.series, "asymptotic");
}

TEST(RunExperiment, ByteIdenticalAcrossRunsAndWorkers) {
    for (const char* name : {"op_vs_snr_smoke", "throughput_surface_smoke", "relay_compare_smoke"}) {
        SCOPED_TRACE(name);
        auto s = load_spec(preset_path(name));
        const auto a = csv_of(run_experiment(s));
        EXPECT_EQ(csv_of(run_experiment(s)), a);
        s.plan.workers = 3;
        EXPECT_EQ(csv_of(run_experiment(s)), a);
    }
}

TEST(ApplyAxis, MapsNamesToFields) {
    NetworkConfig c;
    double p_tot = 1;
    apply_axis(c, &p_tot, "MK", 3);
    EXPECT_EQ(c.M, 3);
    EXPECT_EQ(c.K, 3);
    apply_axis(c, &p_tot, "p_tot_dbm", 40);
    EXPECT_TRUE(near_rel(p_tot, 10.0, 1e-14));
    apply_axis(c, nullptr, "snr_db", 100);
    EXPECT_TRUE(near_rel(c.p_b, c.sigma2 * 1e10, 1e-14));
    apply_axis(c, nullptr, "p_b_dbm", 30);
    EXPECT_TRUE(near_rel(c.p_b, 1.0, 1e-14));
    EXPECT_TRUE(throws_kind([&] { apply_axis(c, nullptr, "bogus", 1); }, ErrorKind::config));
}
