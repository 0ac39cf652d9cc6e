#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "irislab/geometry_channel.hpp"

namespace irislab {

enum class Fidelity {
    link_level,    // draw_channel -> beamforming -> zero forcing -> link SNR
    model_level,   // co-phased amplitude sums with beta_max = 1
    gamma_model,   // effective gain drawn from the Gamma approximation
};

enum class Metric { outage, ergodic_rate };

struct TrialPlan {
    std::int64_t trials = 100000;
    std::uint64_t master_seed = 0;
    Fidelity fidelity = Fidelity::model_level;
    Metric metric = Metric::outage;
    int workers = 1;  // 0 means one per hardware thread

    void validate() const;
    bool operator==(const TrialPlan&) const = default;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials_used = 0;
    std::int64_t degenerate_draws = 0;
};

// ---- generic engine --------------------------------------------------------

struct TrialOutcome {
    double value = 0.0;
    std::int64_t degenerate = 0;
};

using TrialFn = std::function<TrialOutcome(const TrialKey&)>;

// Trials are grouped in fixed blocks of kBlockTrials. Each block is
// accumulated sequentially and blocks are merged by a pairwise tree in block
// order, so the result does not depend on the worker count.
inline constexpr std::int64_t kBlockTrials = 4096;

struct Moments {
    std::int64_t n = 0;
    double sum = 0.0;  // exact for 0/1 indicators
    double mean = 0.0;
    double m2 = 0.0;
    std::int64_t degenerate = 0;

    void add(double x);
    static Moments merge(const Moments& a, const Moments& b);
};

Moments run_trials(std::int64_t trials, std::uint64_t seed, int workers,
                   const TrialFn& fn);

Estimate outage_estimate(const Moments& m);
Estimate mean_estimate(const Moments& m);

// ---- IRS network -----------------------------------------------------------

// Per-trial SNR of user m at the plan's fidelity. Link level resamples
// rank-deficient draws and reports how many were discarded.
struct SnrDraw {
    double snr = 0.0;
    std::int64_t degenerate = 0;
};
SnrDraw draw_snr(const TrialKey& key, const NetworkConfig& cfg, Fidelity fid,
                 int user = 0);

Estimate simulate_op(const TrialPlan& plan, const NetworkConfig& cfg);
Estimate simulate_ergodic_rate(const TrialPlan& plan, const NetworkConfig& cfg);

// Outage of one user; link level only distinguishes users.
Estimate simulate_op_user(const TrialPlan& plan, const NetworkConfig& cfg, int user);

// ---- half-duplex relays ----------------------------------------------------

struct RelayConfig {
    NetworkConfig net;     // geometry, fading, noise, reference attenuation
    double p_tot = 1.0;    // W, shared by source and relay
};

enum class AfVariant {
    standard,
    no_noise_amplification,  // drops the relayed-noise term, SINR = gamma_2
};

enum class DfVariant {
    mean_of_min,   // min of the two hop rates per draw
    min_of_means,  // min of the two averaged hop rates
};

// Per-hop SNRs for one draw at a given split.
struct RelayHops {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};
RelayHops draw_relay_hops(const TrialKey& key, const RelayConfig& rc, double split);

Estimate af_relay_rate(const TrialPlan& plan, const RelayConfig& rc, double split,
                       AfVariant variant = AfVariant::standard);
Estimate df_relay_rate(const TrialPlan& plan, const RelayConfig& rc, double split,
                       DfVariant variant = DfVariant::mean_of_min);

struct SplitResult {
    double split = 0.5;
    Estimate rate;
};

using RelayRateFn = std::function<Estimate(double split)>;

// Grid search over 0.01..0.99 in steps of 0.01. Every split reuses the same
// seed, so the comparison is over common random numbers.
SplitResult optimal_power_split(const RelayRateFn& rate_fn);

// Least-squares slope of log10(OP) against -snr_db/10, over points with OP > 0.
double empirical_diversity_slope(const std::vector<std::pair<double, double>>& op_curve);

}  // namespace irislab
