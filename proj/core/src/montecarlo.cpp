#include "irislab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "irislab/analysis.hpp"
#include "irislab/beamforming.hpp"
#include "irislab/errors.hpp"

namespace irislab {

void TrialPlan::validate() const {
    if (trials < 1) fail(ErrorKind::config, "plan: trials must be >= 1");
    if (workers < 0) fail(ErrorKind::config, "plan: workers must be >= 0");
}

// ---- engine ----------------------------------------------------------------

void Moments::add(double x) {
    ++n;
    sum += x;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
}

Moments Moments::merge(const Moments& a, const Moments& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Moments out;
    out.n = a.n + b.n;
    out.sum = a.sum + b.sum;
    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double nn = static_cast<double>(out.n);
    const double d = b.mean - a.mean;
    out.mean = a.mean + d * nb / nn;
    out.m2 = a.m2 + b.m2 + d * d * na * nb / nn;
    out.degenerate = a.degenerate + b.degenerate;
    return out;
}

namespace {

Moments pairwise(const std::vector<Moments>& blocks, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return blocks[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return Moments::merge(pairwise(blocks, lo, mid), pairwise(blocks, mid, hi));
}

}  // namespace

Moments run_trials(std::int64_t trials, std::uint64_t seed, int workers,
                   const TrialFn& fn) {
    if (trials < 1) fail(ErrorKind::config, "trials must be >= 1");
    const std::int64_t nblocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<Moments> blocks(static_cast<std::size_t>(nblocks));

    auto run_block = [&](std::int64_t b) {
        Moments m;
        const std::int64_t first = b * kBlockTrials;
        const std::int64_t last = std::min(trials, first + kBlockTrials);
        for (std::int64_t t = first; t < last; ++t) {
            const auto o = fn(TrialKey{seed, static_cast<std::uint64_t>(t), 0});
            m.add(o.value);
            m.degenerate += o.degenerate;
        }
        blocks[static_cast<std::size_t>(b)] = m;
    };

    unsigned nw = workers > 0 ? static_cast<unsigned>(workers)
                              : std::max(1u, std::thread::hardware_concurrency());
    nw = static_cast<unsigned>(std::min<std::int64_t>(nw, nblocks));

    if (nw <= 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::exception_ptr err;
        std::atomic<bool> failed{false};
        std::mutex err_mu;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nw; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    if (failed.load()) return;
                    const auto b = next.fetch_add(1);
                    if (b >= nblocks) return;
                    try {
                        run_block(b);
                    } catch (...) {
                        std::lock_guard lk(err_mu);
                        if (!err) err = std::current_exception();
                        failed = true;
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (err) std::rethrow_exception(err);
    }
    return pairwise(blocks, 0, blocks.size());
}

Estimate outage_estimate(const Moments& m) {
    Estimate e;
    e.trials_used = m.n;
    e.degenerate_draws = m.degenerate;
    const double n = static_cast<double>(m.n);
    e.mean = m.sum / n;
    // Jeffreys-adjusted proportion keeps the error positive at 0 or n hits.
    const double p = (m.sum + 0.5) / (n + 1.0);
    e.std_error = std::sqrt(p * (1.0 - p) / n);
    return e;
}

Estimate mean_estimate(const Moments& m) {
    Estimate e;
    e.trials_used = m.n;
    e.degenerate_draws = m.degenerate;
    e.mean = m.mean;
    e.std_error = m.n > 1 ? std::sqrt(m.m2 / static_cast<double>(m.n - 1) /
                                      static_cast<double>(m.n))
                          : 0.0;
    return e;
}

// ---- IRS network -----------------------------------------------------------

namespace {

constexpr int kMaxAttempts = 64;

double amplitude(RngStream& rng, double t) { return std::sqrt(sample_nakagami_power(rng, t)); }

SnrDraw model_level_snr(const TrialKey& key, const NetworkConfig& cfg) {
    auto dist = key.stream(entity::distance);
    const double d2 = sample_user_distance(dist, cfg.R, cfg.r0);
    auto hs = key.stream(entity::bs_irs);
    auto gs = key.stream(entity::irs_user);
    const int Q = cfg.Q();
    std::vector<double> h(static_cast<std::size_t>(cfg.N));
    for (auto& x : h) x = amplitude(hs, cfg.t1);
    Eigen::VectorXd s(Q);
    for (int q = 0; q < Q; ++q) {
        double acc = 0.0;
        for (int n = 0; n < cfg.N; ++n) acc += amplitude(gs, cfg.t2) * h[static_cast<std::size_t>(n)];
        s[q] = acc;
    }
    return {model_snr(s, 1.0, cfg.d1, d2, cfg), 0};
}

SnrDraw gamma_model_snr(const TrialKey& key, const NetworkConfig& cfg) {
    const auto g = gamma_approx(cfg);
    auto dist = key.stream(entity::distance);
    const double d2 = sample_user_distance(dist, cfg.R, cfg.r0);
    auto gs = key.stream(entity::bs_irs);
    std::gamma_distribution<double> gd(g.shape, g.scale);
    const double x = gd(gs);
    const double snr = x * path_loss(cfg.d1, d2, cfg.alpha, cfg.ref_atten_db) * cfg.p_b /
                       (static_cast<double>(cfg.Q()) * cfg.sigma2);
    return {snr, 0};
}

SnrDraw link_level_snr(TrialKey key, const NetworkConfig& cfg, int user) {
    std::int64_t degenerate = 0;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        key.attempt = static_cast<std::uint32_t>(attempt);
        const auto real = draw_channel(key, cfg);
        try {
            const auto sol = solve_beamforming(real);
            return {link_snr(real, sol, cfg, user), degenerate};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::rank_deficient) throw;
            ++degenerate;
        }
    }
    fail(ErrorKind::rank_deficient, "link level: every resampled draw was rank deficient");
}

void check_inputs(const TrialPlan& plan, const NetworkConfig& cfg, int user) {
    plan.validate();
    cfg.validate(plan.fidelity == Fidelity::link_level);
    if (user < 0 || user >= cfg.M) fail(ErrorKind::config, "user index out of range");
}

Moments run_snr_trials(const TrialPlan& plan, const NetworkConfig& cfg, int user,
                       bool outage) {
    check_inputs(plan, cfg, user);
    const double target = cfg.R_m;
    return run_trials(plan.trials, plan.master_seed, plan.workers,
                      [&](const TrialKey& key) {
                          const auto d = draw_snr(key, cfg, plan.fidelity, user);
                          const double rate = std::log2(1.0 + d.snr);
                          return TrialOutcome{outage ? (rate < target ? 1.0 : 0.0) : rate,
                                              d.degenerate};
                      });
}

}  // namespace

SnrDraw draw_snr(const TrialKey& key, const NetworkConfig& cfg, Fidelity fid, int user) {
    switch (fid) {
        case Fidelity::link_level:
            return link_level_snr(key, cfg, user);
        case Fidelity::model_level:
            return model_level_snr(key, cfg);
        case Fidelity::gamma_model:
            return gamma_model_snr(key, cfg);
    }
    fail(ErrorKind::config, "unknown fidelity");
}

Estimate simulate_op(const TrialPlan& plan, const NetworkConfig& cfg) {
    return simulate_op_user(plan, cfg, 0);
}

Estimate simulate_op_user(const TrialPlan& plan, const NetworkConfig& cfg, int user) {
    return outage_estimate(run_snr_trials(plan, cfg, user, true));
}

Estimate simulate_ergodic_rate(const TrialPlan& plan, const NetworkConfig& cfg) {
    return mean_estimate(run_snr_trials(plan, cfg, 0, false));
}

// ---- relays ----------------------------------------------------------------

RelayHops draw_relay_hops(const TrialKey& key, const RelayConfig& rc, double split) {
    const auto& c = rc.net;
    auto dist = key.stream(entity::distance);
    const double d2 = sample_user_distance(dist, c.R, c.r0);
    auto h1s = key.stream(entity::relay);
    auto h2s = key.stream(entity::relay + 1);
    const double g1 = sample_nakagami_power(h1s, c.t1);
    const double g2 = sample_nakagami_power(h2s, c.t2);
    const double L0 = c.ref_gain();
    const double p_b = split * rc.p_tot;
    const double p_d = (1.0 - split) * rc.p_tot;
    return {p_b * L0 * std::pow(c.d1, -c.alpha) * g1 / c.sigma2,
            p_d * L0 * std::pow(d2, -c.alpha) * g2 / c.sigma2};
}

namespace {

void check_relay(const TrialPlan& plan, const RelayConfig& rc, double split) {
    plan.validate();
    rc.net.validate(false);
    if (!(split > 0.0 && split < 1.0)) fail(ErrorKind::domain, "power split must be in (0, 1)");
    if (!(rc.p_tot >= 0.0)) fail(ErrorKind::domain, "p_tot must be >= 0");
}

double half_rate(double snr) { return 0.5 * std::log2(1.0 + snr); }

}  // namespace

Estimate af_relay_rate(const TrialPlan& plan, const RelayConfig& rc, double split,
                       AfVariant variant) {
    check_relay(plan, rc, split);
    const auto m = run_trials(plan.trials, plan.master_seed, plan.workers,
                              [&](const TrialKey& key) {
                                  const auto h = draw_relay_hops(key, rc, split);
                                  double sinr = h.gamma2;
                                  if (variant == AfVariant::standard) {
                                      const double den = h.gamma1 + h.gamma2;
                                      sinr = den > 0.0 ? h.gamma1 * h.gamma2 / den : 0.0;
                                  }
                                  return TrialOutcome{half_rate(sinr), 0};
                              });
    return mean_estimate(m);
}

Estimate df_relay_rate(const TrialPlan& plan, const RelayConfig& rc, double split,
                       DfVariant variant) {
    check_relay(plan, rc, split);
    auto hop = [&](int which) {
        return run_trials(plan.trials, plan.master_seed, plan.workers,
                          [&](const TrialKey& key) {
                              const auto h = draw_relay_hops(key, rc, split);
                              const double r1 = half_rate(h.gamma1);
                              const double r2 = half_rate(h.gamma2);
                              const double v = which == 0 ? std::min(r1, r2)
                                               : which == 1 ? r1
                                                            : r2;
                              return TrialOutcome{v, 0};
                          });
    };
    if (variant == DfVariant::mean_of_min) return mean_estimate(hop(0));
    const auto e1 = mean_estimate(hop(1));
    const auto e2 = mean_estimate(hop(2));
    return e1.mean <= e2.mean ? e1 : e2;
}

SplitResult optimal_power_split(const RelayRateFn& rate_fn) {
    SplitResult best;
    bool first = true;
    for (int i = 1; i <= 99; ++i) {
        const double split = i / 100.0;
        const auto e = rate_fn(split);
        if (first || e.mean > best.rate.mean) {
            best = {split, e};
            first = false;
        }
    }
    return best;
}

double empirical_diversity_slope(const std::vector<std::pair<double, double>>& op_curve) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [snr_db, op] : op_curve)
        if (op > 0.0 && std::isfinite(op) && std::isfinite(snr_db))
            pts.emplace_back(-snr_db / 10.0, std::log10(op));
    if (pts.size() < 2)
        fail(ErrorKind::insufficient_points, "diversity slope needs >= 2 points with OP > 0");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (!(sxx > 0.0))
        fail(ErrorKind::insufficient_points, "diversity slope needs distinct SNR values");
    return sxy / sxx;
}

}  // namespace irislab
