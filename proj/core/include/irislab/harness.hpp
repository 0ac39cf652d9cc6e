#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irislab/analysis.hpp"
#include "irislab/geometry_channel.hpp"
#include "irislab/montecarlo.hpp"

namespace irislab {

enum class Experiment {
    op_vs_snr,           // outage from the high-SNR closed form
    op_fading_sweep,     // outage from the Gamma approximation
    ergodic_vs_snr,
    relay_compare,       // IRS rate against optimized-split AF and DF relays
    throughput_surface,  // M times the per-user rate
    ee_sweep,
};

enum class Output {
    analytical,
    asymptotic,
    montecarlo_model,
    montecarlo_link,
    montecarlo_gamma,  // samples the Gamma-approximated gain
};

std::string to_string(Experiment e);
std::string to_string(Output o);
Experiment experiment_from_string(std::string_view s);
Output output_from_string(std::string_view s);

// Recognized axes: snr_db (p_b/sigma2 in dB), p_b_dbm, p_tot_dbm, N, M, K,
// MK (M = K), t1, t2, R_m, R, r0, d1, alpha.
struct SweepAxis {
    std::string name;
    std::vector<double> values;
    bool operator==(const SweepAxis&) const = default;
};

struct ExperimentSpec {
    std::string name;
    Experiment experiment = Experiment::op_vs_snr;
    NetworkConfig base;
    std::vector<SweepAxis> sweep;
    TrialPlan plan;
    std::vector<Output> outputs;
    PowerModel power_model;
    std::optional<double> p_tot_w;  // relay budget; defaults to base.p_b
    int asymptotic_terms = 30;
    std::vector<std::string> series_filter;  // empty keeps every series

    void validate() const;
    bool operator==(const ExperimentSpec&) const = default;
};

struct ResultRow {
    std::vector<double> axes;
    std::string series;
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    bool operator==(const ResultRow&) const = default;
};

struct PointFailure {
    std::vector<double> axes;
    std::string series;
    std::string message;
    bool operator==(const PointFailure&) const = default;
};

struct ResultMetadata {
    std::string name;
    std::string experiment;
    std::uint64_t seed = 0;
    std::string version;
    double wall_time_s = 0.0;
    std::vector<PointFailure> failures;
    bool operator==(const ResultMetadata&) const = default;
};

struct ExperimentResult {
    std::vector<std::string> axis_names;
    std::vector<ResultRow> rows;
    ResultMetadata metadata;
    bool operator==(const ExperimentResult&) const = default;
};

std::string library_version();

// Applies one sweep coordinate to a scenario. Relay budget changes go to
// p_tot when provided.
void apply_axis(NetworkConfig& cfg, double* p_tot_w, std::string_view axis, double value);

ExperimentResult run_experiment(const ExperimentSpec& spec);

// Rows sorted by axis values, then series name.
void sort_rows(ExperimentResult& result);

void emit_csv(const ExperimentResult& result, std::ostream& os);
void emit_csv(const ExperimentResult& result, const std::string& path);
void emit_json(const ExperimentResult& result, std::ostream& os);
void emit_json(const ExperimentResult& result, const std::string& path);

ExperimentResult result_from_json(std::string_view text);
std::string result_to_json(const ExperimentResult& result);

NetworkConfig config_from_json(std::string_view text);
std::string config_to_json(const NetworkConfig& cfg);

ExperimentSpec spec_from_json(std::string_view text);
std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec load_spec(const std::string& path);

}  // namespace irislab
