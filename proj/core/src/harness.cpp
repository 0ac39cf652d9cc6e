#include "irislab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "irislab/errors.hpp"
#include "irislab/units.hpp"

#ifndef IRISLAB_VERSION
#define IRISLAB_VERSION "unknown"
#endif

namespace irislab {

using json = nlohmann::json;

std::string library_version() { return IRISLAB_VERSION; }

// ---- names -----------------------------------------------------------------

namespace {

const std::vector<std::pair<Experiment, std::string>>& experiment_names() {
    static const std::vector<std::pair<Experiment, std::string>> names = {
        {Experiment::op_vs_snr, "op_vs_snr"},
        {Experiment::op_fading_sweep, "op_fading_sweep"},
        {Experiment::ergodic_vs_snr, "ergodic_vs_snr"},
        {Experiment::relay_compare, "relay_compare"},
        {Experiment::throughput_surface, "throughput_surface"},
        {Experiment::ee_sweep, "ee_sweep"},
    };
    return names;
}

const std::vector<std::pair<Output, std::string>>& output_names() {
    static const std::vector<std::pair<Output, std::string>> names = {
        {Output::analytical, "analytical"},
        {Output::asymptotic, "asymptotic"},
        {Output::montecarlo_model, "montecarlo_model"},
        {Output::montecarlo_link, "montecarlo_link"},
        {Output::montecarlo_gamma, "montecarlo_gamma"},
    };
    return names;
}

const std::vector<std::string>& known_axes() {
    static const std::vector<std::string> axes = {"snr_db", "p_b_dbm", "p_tot_dbm", "N",
                                                  "M",      "K",       "MK",        "t1",
                                                  "t2",     "R_m",     "R",         "r0",
                                                  "d1",     "alpha"};
    return axes;
}

bool has_axis(const ExperimentSpec& s, std::string_view name) {
    return std::any_of(s.sweep.begin(), s.sweep.end(),
                       [&](const SweepAxis& a) { return a.name == name; });
}

}  // namespace

std::string to_string(Experiment e) {
    for (const auto& [k, v] : experiment_names())
        if (k == e) return v;
    return "unknown";
}

std::string to_string(Output o) {
    for (const auto& [k, v] : output_names())
        if (k == o) return v;
    return "unknown";
}

Experiment experiment_from_string(std::string_view s) {
    for (const auto& [k, v] : experiment_names())
        if (v == s) return k;
    fail(ErrorKind::config, "unknown experiment '" + std::string(s) + "'");
}

Output output_from_string(std::string_view s) {
    for (const auto& [k, v] : output_names())
        if (v == s) return k;
    fail(ErrorKind::config, "unknown output '" + std::string(s) + "'");
}

// ---- spec ------------------------------------------------------------------

void ExperimentSpec::validate() const {
    plan.validate();
    if (sweep.empty()) fail(ErrorKind::config, "sweep needs at least one axis");
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const auto& ax = sweep[i];
        const auto& known = known_axes();
        if (std::find(known.begin(), known.end(), ax.name) == known.end())
            fail(ErrorKind::config, "unknown sweep axis '" + ax.name + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (sweep[j].name == ax.name)
                fail(ErrorKind::config, "sweep axis '" + ax.name + "' given twice");
        if (ax.values.empty()) fail(ErrorKind::config, "sweep axis '" + ax.name + "' is empty");
        for (std::size_t k = 0; k < ax.values.size(); ++k) {
            if (!std::isfinite(ax.values[k]))
                fail(ErrorKind::config, "sweep axis '" + ax.name + "' has a non-finite value");
            if (k > 0 && !(ax.values[k] > ax.values[k - 1]))
                fail(ErrorKind::config, "sweep axis '" + ax.name + "' must be strictly increasing");
        }
    }
    auto require = [&](std::initializer_list<const char*> any, const char* what) {
        for (const char* a : any)
            if (has_axis(*this, a)) return;
        fail(ErrorKind::config, to_string(experiment) + " needs " + what);
    };
    switch (experiment) {
        case Experiment::op_vs_snr:
        case Experiment::op_fading_sweep:
        case Experiment::ergodic_vs_snr:
            require({"snr_db", "p_b_dbm"}, "an snr_db or p_b_dbm axis");
            break;
        case Experiment::relay_compare:
            require({"N", "p_tot_dbm"}, "an N or p_tot_dbm axis");
            break;
        case Experiment::throughput_surface:
            require({"N"}, "an N axis");
            require({"MK", "M"}, "an MK or M axis");
            break;
        case Experiment::ee_sweep:
            require({"N"}, "an N axis");
            break;
    }
    if (outputs.empty()) fail(ErrorKind::config, "outputs must not be empty");
    if (asymptotic_terms < 0) fail(ErrorKind::config, "asymptotic_terms must be >= 0");
    if (p_tot_w && !(*p_tot_w > 0.0)) fail(ErrorKind::config, "relay p_tot must be > 0");
}

void apply_axis(NetworkConfig& cfg, double* p_tot_w, std::string_view axis, double v) {
    auto as_int = [&](void) {
        if (!(v >= 1.0) || std::floor(v) != v || v > 1e6)
            fail(ErrorKind::config, "axis " + std::string(axis) + " needs a positive integer");
        return static_cast<int>(v);
    };
    if (axis == "snr_db")
        cfg.p_b = cfg.sigma2 * db_to_linear(v);
    else if (axis == "p_b_dbm")
        cfg.p_b = dbm_to_w(v);
    else if (axis == "p_tot_dbm") {
        cfg.p_b = dbm_to_w(v);
        if (p_tot_w) *p_tot_w = cfg.p_b;
    } else if (axis == "N")
        cfg.N = as_int();
    else if (axis == "M")
        cfg.M = as_int();
    else if (axis == "K")
        cfg.K = as_int();
    else if (axis == "MK")
        cfg.M = cfg.K = as_int();
    else if (axis == "t1")
        cfg.t1 = v;
    else if (axis == "t2")
        cfg.t2 = v;
    else if (axis == "R_m")
        cfg.R_m = v;
    else if (axis == "R")
        cfg.R = v;
    else if (axis == "r0")
        cfg.r0 = v;
    else if (axis == "d1")
        cfg.d1 = v;
    else if (axis == "alpha")
        cfg.alpha = v;
    else
        fail(ErrorKind::config, "unknown sweep axis '" + std::string(axis) + "'");
}

// ---- runner ----------------------------------------------------------------

namespace {

struct PointContext {
    const ExperimentSpec& spec;
    std::vector<double> axes;
    NetworkConfig cfg;
    double p_tot = 0.0;
    ExperimentResult& out;

    bool wanted(const std::string& series) const {
        const auto& f = spec.series_filter;
        return f.empty() || std::find(f.begin(), f.end(), series) != f.end();
    }
    bool requested(Output o) const {
        return std::find(spec.outputs.begin(), spec.outputs.end(), o) != spec.outputs.end() &&
               wanted(to_string(o));
    }

    // Runs one series at this point; errors become failures, not aborts.
    void attempt(const std::string& series, const std::function<void()>& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.metadata.failures.push_back({axes, series, e.what()});
        }
    }

    void analytic(const std::string& series, double value) {
        out.rows.push_back({axes, series, value, 0.0, 0});
    }
    void monte_carlo(const std::string& series, const Estimate& e, double scale = 1.0) {
        out.rows.push_back({axes, series, scale * e.mean, scale * e.std_error, e.trials_used});
    }
};

TrialPlan plan_for(const ExperimentSpec& spec, Fidelity fid, Metric metric) {
    TrialPlan p = spec.plan;
    p.fidelity = fid;
    p.metric = metric;
    return p;
}

const std::vector<std::pair<Output, Fidelity>>& mc_outputs() {
    static const std::vector<std::pair<Output, Fidelity>> v = {
        {Output::montecarlo_model, Fidelity::model_level},
        {Output::montecarlo_link, Fidelity::link_level},
        {Output::montecarlo_gamma, Fidelity::gamma_model},
    };
    return v;
}

void run_outage_point(PointContext& pc, bool gamma_based) {
    const auto& cfg = pc.cfg;
    if (pc.requested(Output::analytical))
        pc.attempt("analytical", [&] {
            cfg.validate();
            if (gamma_based) {
                pc.analytic("analytical", op_gamma_approx(gamma_approx(cfg), cfg));
            } else {
                const auto ctx = make_closed_form_context(cfg);
                pc.analytic("analytical", op_closed_form(ctx, cfg.R, cfg.r0, cfg.alpha).value);
            }
        });
    if (pc.requested(Output::asymptotic))
        pc.attempt("asymptotic", [&] {
            cfg.validate();
            // the expansions only describe the high-SNR tail
            if (gamma_based) {
                const double v = op_gamma_approx_asymptotic(gamma_approx(cfg), cfg);
                if (v <= 1.0) pc.analytic("asymptotic", v);
            } else {
                const auto ctx = make_closed_form_context(cfg);
                if (ctx.b * std::pow(cfg.R, cfg.alpha) < 1.0)
                    pc.analytic("asymptotic", op_asymptotic(ctx, cfg.R, cfg.r0, cfg.alpha,
                                                            pc.spec.asymptotic_terms));
            }
        });
    for (const auto& [o, fid] : mc_outputs()) {
        if (!pc.requested(o)) continue;
        pc.attempt(to_string(o), [&, fid = fid, o = o] {
            pc.monte_carlo(to_string(o),
                           simulate_op(plan_for(pc.spec, fid, Metric::outage), cfg));
        });
    }
}

// Per-user rate series scaled by `scale(cfg)`; used by the ergodic, relay,
// throughput and EE experiments.
void run_rate_point(PointContext& pc, const std::function<double(const NetworkConfig&)>& scale,
                    bool zero_when_infeasible) {
    const auto& cfg = pc.cfg;
    const bool infeasible = zero_when_infeasible && cfg.N < cfg.M * cfg.K;
    if (pc.requested(Output::analytical))
        pc.attempt("analytical", [&] {
            cfg.validate();
            if (infeasible) {
                pc.analytic("analytical", 0.0);
                return;
            }
            pc.analytic("analytical",
                        scale(cfg) * ergodic_rate_meijer(gamma_approx(cfg), cfg).value);
        });
    if (pc.requested(Output::asymptotic))
        pc.attempt("asymptotic", [&] {
            cfg.validate();
            if (infeasible) return;
            const double v = ergodic_rate_asymptotic(gamma_approx(cfg), cfg);
            if (v > 0.0) pc.analytic("asymptotic", scale(cfg) * v);
        });
    if (infeasible) return;
    for (const auto& [o, fid] : mc_outputs()) {
        if (!pc.requested(o)) continue;
        pc.attempt(to_string(o), [&, fid = fid, o = o] {
            pc.monte_carlo(to_string(o),
                           simulate_ergodic_rate(plan_for(pc.spec, fid, Metric::ergodic_rate), cfg),
                           scale(cfg));
        });
    }
}

std::string relay_key(const RelayConfig& rc) {
    const auto& c = rc.net;
    std::ostringstream os;
    for (double v : {rc.p_tot, c.R, c.r0, c.alpha, c.d1, c.t1, c.t2, c.sigma2, c.ref_atten_db})
        os << format_double(v) << ';';
    return os.str();
}

struct RelayRates {
    SplitResult af, df, df_means;
};

void run_relay_point(PointContext& pc, std::map<std::string, RelayRates>& cache) {
    pc.cfg.p_b = pc.p_tot;  // matched budget: IRS transmits the whole p_tot
    run_rate_point(pc, [](const NetworkConfig&) { return 1.0; }, false);

    const bool any = pc.wanted("af_relay") || pc.wanted("df_relay") ||
                     pc.wanted("df_relay_min_of_means");
    if (!any) return;
    pc.attempt("relays", [&] {
        RelayConfig rc{pc.cfg, pc.p_tot};
        rc.net.validate();
        const auto key = relay_key(rc);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const auto plan = plan_for(pc.spec, Fidelity::model_level, Metric::ergodic_rate);
            RelayRates r;
            if (pc.wanted("af_relay"))
                r.af = optimal_power_split([&](double s) { return af_relay_rate(plan, rc, s); });
            if (pc.wanted("df_relay"))
                r.df = optimal_power_split([&](double s) { return df_relay_rate(plan, rc, s); });
            if (pc.wanted("df_relay_min_of_means"))
                r.df_means = optimal_power_split([&](double s) {
                    return df_relay_rate(plan, rc, s, DfVariant::min_of_means);
                });
            it = cache.emplace(key, r).first;
        }
        if (pc.wanted("af_relay")) pc.monte_carlo("af_relay", it->second.af.rate);
        if (pc.wanted("df_relay")) pc.monte_carlo("df_relay", it->second.df.rate);
        if (pc.wanted("df_relay_min_of_means"))
            pc.monte_carlo("df_relay_min_of_means", it->second.df_means.rate);
    });
}

// Odometer over the Cartesian product, last axis fastest.
bool next_point(std::vector<std::size_t>& idx, const std::vector<SweepAxis>& sweep) {
    for (std::size_t k = sweep.size(); k-- > 0;) {
        if (++idx[k] < sweep[k].values.size()) return true;
        idx[k] = 0;
    }
    return false;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();

    ExperimentResult out;
    for (const auto& ax : spec.sweep) out.axis_names.push_back(ax.name);
    out.metadata.name = spec.name;
    out.metadata.experiment = to_string(spec.experiment);
    out.metadata.seed = spec.plan.master_seed;
    out.metadata.version = library_version();

    std::map<std::string, RelayRates> relay_cache;
    std::vector<std::size_t> idx(spec.sweep.size(), 0);
    for (;;) {
        PointContext pc{spec, {}, spec.base, 0.0, out};
        double p_tot = spec.p_tot_w.value_or(std::numeric_limits<double>::quiet_NaN());
        bool ok = true;
        for (std::size_t i = 0; i < spec.sweep.size(); ++i) {
            const double v = spec.sweep[i].values[idx[i]];
            pc.axes.push_back(v);
            try {
                apply_axis(pc.cfg, &p_tot, spec.sweep[i].name, v);
            } catch (const std::exception& e) {
                ok = false;
                out.metadata.failures.push_back({{}, "axes", e.what()});
            }
        }
        pc.p_tot = std::isnan(p_tot) ? pc.cfg.p_b : p_tot;
        if (ok) {
            switch (spec.experiment) {
                case Experiment::op_vs_snr:
                    run_outage_point(pc, false);
                    break;
                case Experiment::op_fading_sweep:
                    run_outage_point(pc, true);
                    break;
                case Experiment::ergodic_vs_snr:
                    run_rate_point(pc, [](const NetworkConfig&) { return 1.0; }, false);
                    break;
                case Experiment::relay_compare:
                    run_relay_point(pc, relay_cache);
                    break;
                case Experiment::throughput_surface:
                    run_rate_point(pc, [](const NetworkConfig& c) { return double(c.M); }, true);
                    break;
                case Experiment::ee_sweep:
                    run_rate_point(pc, [&](const NetworkConfig& c) {
                        return double(c.M) / power_consumption(spec.power_model, c);
                    }, true);
                    break;
            }
        }
        if (!next_point(idx, spec.sweep)) break;
    }

    sort_rows(out);
    out.metadata.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void sort_rows(ExperimentResult& result) {
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const ResultRow& a, const ResultRow& b) {
                         if (a.axes != b.axes) return a.axes < b.axes;
                         return a.series < b.series;
                     });
}

// ---- emission --------------------------------------------------------------

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
    return f;
}

void check_written(std::ostream& os, const std::string& path) {
    os.flush();
    if (!os) fail(ErrorKind::io, "write failed for '" + path + "'");
}

}  // namespace

void emit_csv(const ExperimentResult& result, std::ostream& os) {
    for (const auto& a : result.axis_names) os << "axis_" << a << ',';
    os << "series,value,std_error,trials\n";
    for (const auto& r : result.rows) {
        for (double v : r.axes) os << format_double(v) << ',';
        os << r.series << ',' << format_double(r.value) << ',' << format_double(r.std_error)
           << ',' << r.trials << '\n';
    }
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    auto f = open_out(path);
    emit_csv(result, f);
    check_written(f, path);
}

std::string result_to_json(const ExperimentResult& result) {
    json j;
    j["axis_names"] = result.axis_names;
    j["rows"] = json::array();
    for (const auto& r : result.rows)
        j["rows"].push_back({{"axes", r.axes},
                             {"series", r.series},
                             {"value", r.value},
                             {"std_error", r.std_error},
                             {"trials", r.trials}});
    const auto& m = result.metadata;
    json fails = json::array();
    for (const auto& f : m.failures)
        fails.push_back({{"axes", f.axes}, {"series", f.series}, {"message", f.message}});
    j["metadata"] = {{"name", m.name},       {"experiment", m.experiment},
                     {"seed", m.seed},       {"version", m.version},
                     {"wall_time_s", m.wall_time_s}, {"failures", fails}};
    return j.dump(2) + "\n";
}

void emit_json(const ExperimentResult& result, std::ostream& os) { os << result_to_json(result); }

void emit_json(const ExperimentResult& result, const std::string& path) {
    auto f = open_out(path);
    emit_json(result, f);
    check_written(f, path);
}

ExperimentResult result_from_json(std::string_view text) {
    try {
        const auto j = json::parse(text);
        ExperimentResult r;
        r.axis_names = j.at("axis_names").get<std::vector<std::string>>();
        for (const auto& row : j.at("rows"))
            r.rows.push_back({row.at("axes").get<std::vector<double>>(),
                              row.at("series").get<std::string>(), row.at("value").get<double>(),
                              row.at("std_error").get<double>(),
                              row.at("trials").get<std::int64_t>()});
        const auto& m = j.at("metadata");
        r.metadata.name = m.at("name").get<std::string>();
        r.metadata.experiment = m.at("experiment").get<std::string>();
        r.metadata.seed = m.at("seed").get<std::uint64_t>();
        r.metadata.version = m.at("version").get<std::string>();
        r.metadata.wall_time_s = m.at("wall_time_s").get<double>();
        for (const auto& f : m.at("failures"))
            r.metadata.failures.push_back({f.at("axes").get<std::vector<double>>(),
                                           f.at("series").get<std::string>(),
                                           f.at("message").get<std::string>()});
        return r;
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("result JSON: ") + e.what());
    }
}

// ---- config and spec JSON --------------------------------------------------

namespace {

double power_field(const json& v, const char* name) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_power_w(v.get<std::string>());
    fail(ErrorKind::config, std::string(name) + " must be a number (W) or a power string");
}

double db_field(const json& v, const char* name) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_db(v.get<std::string>());
    fail(ErrorKind::config, std::string(name) + " must be a number (dB) or a dB string");
}

int int_field(const json& v, const char* name) {
    if (!v.is_number_integer()) fail(ErrorKind::config, std::string(name) + " must be an integer");
    return v.get<int>();
}

NetworkConfig config_from(const json& j) {
    if (!j.is_object()) fail(ErrorKind::config, "network config must be a JSON object");
    NetworkConfig c;
    bool have_sigma = false;
    for (const auto& [k, v] : j.items()) {
        if (k == "M") c.M = int_field(v, "M");
        else if (k == "K") c.K = int_field(v, "K");
        else if (k == "N") c.N = int_field(v, "N");
        else if (k == "R") c.R = v.get<double>();
        else if (k == "r0") c.r0 = v.get<double>();
        else if (k == "alpha") c.alpha = v.get<double>();
        else if (k == "d1") c.d1 = v.get<double>();
        else if (k == "t1") c.t1 = v.get<double>();
        else if (k == "t2") c.t2 = v.get<double>();
        else if (k == "p_b") c.p_b = power_field(v, "p_b");
        else if (k == "bandwidth_hz") c.bandwidth_hz = v.get<double>();
        else if (k == "sigma2") {
            c.sigma2 = power_field(v, "sigma2");
            have_sigma = true;
        } else if (k == "ref_atten_db") c.ref_atten_db = db_field(v, "ref_atten_db");
        else if (k == "R_m") c.R_m = v.get<double>();
        else fail(ErrorKind::config, "unknown network config field '" + k + "'");
    }
    if (!have_sigma) c.sigma2 = noise_power_w(c.bandwidth_hz);
    return c;
}

json config_json(const NetworkConfig& c) {
    return {{"M", c.M},         {"K", c.K},         {"N", c.N},
            {"R", c.R},         {"r0", c.r0},       {"alpha", c.alpha},
            {"d1", c.d1},       {"t1", c.t1},       {"t2", c.t2},
            {"p_b", c.p_b},     {"bandwidth_hz", c.bandwidth_hz},
            {"sigma2", c.sigma2}, {"ref_atten_db", c.ref_atten_db}, {"R_m", c.R_m}};
}

std::vector<double> axis_values(const json& a) {
    if (a.contains("values")) return a.at("values").get<std::vector<double>>();
    if (a.contains("range")) {
        const auto r = a.at("range").get<std::vector<double>>();
        if (r.size() != 3 || !(r[2] > 0.0) || !(r[1] >= r[0]))
            fail(ErrorKind::config, "range must be [start, stop, step] with step > 0");
        const auto n = static_cast<long>(std::floor((r[1] - r[0]) / r[2] + 1e-9)) + 1;
        std::vector<double> v;
        for (long i = 0; i < n; ++i) v.push_back(r[0] + static_cast<double>(i) * r[2]);
        return v;
    }
    fail(ErrorKind::config, "sweep axis needs 'values' or 'range'");
}

}  // namespace

NetworkConfig config_from_json(std::string_view text) {
    try {
        return config_from(json::parse(text));
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("network config JSON: ") + e.what());
    }
}

std::string config_to_json(const NetworkConfig& cfg) { return config_json(cfg).dump(2) + "\n"; }

ExperimentSpec spec_from_json(std::string_view text) {
    try {
        const auto j = json::parse(text);
        ExperimentSpec s;
        s.name = j.value("name", std::string{});
        s.experiment = experiment_from_string(j.at("experiment").get<std::string>());
        if (j.contains("base")) s.base = config_from(j.at("base"));
        for (const auto& a : j.at("sweep"))
            s.sweep.push_back({a.at("axis").get<std::string>(), axis_values(a)});

        const auto& p = j.at("plan");
        if (!p.contains("seed")) fail(ErrorKind::config, "plan.seed is mandatory");
        s.plan.master_seed = p.at("seed").get<std::uint64_t>();
        s.plan.trials = p.value("trials", std::int64_t{100000});
        s.plan.workers = p.value("workers", 1);

        if (j.contains("outputs")) {
            for (const auto& o : j.at("outputs"))
                s.outputs.push_back(output_from_string(o.get<std::string>()));
        } else {
            s.outputs = {Output::analytical, Output::asymptotic, Output::montecarlo_model};
        }
        if (j.contains("power_model")) {
            const auto& pm = j.at("power_model");
            s.power_model.P_Bs = power_field(pm.at("P_Bs"), "P_Bs");
            s.power_model.eps_b = pm.at("eps_b").get<double>();
            s.power_model.P_U = power_field(pm.at("P_U"), "P_U");
            s.power_model.P_L = power_field(pm.at("P_L"), "P_L");
        }
        if (j.contains("relay")) s.p_tot_w = power_field(j.at("relay").at("p_tot"), "p_tot");
        s.asymptotic_terms = j.value("asymptotic_terms", 30);
        if (j.contains("series"))
            s.series_filter = j.at("series").get<std::vector<std::string>>();
        s.validate();
        return s;
    } catch (const json::exception& e) {
        fail(ErrorKind::config, std::string("experiment JSON: ") + e.what());
    }
}

std::string spec_to_json(const ExperimentSpec& s) {
    json j;
    j["name"] = s.name;
    j["experiment"] = to_string(s.experiment);
    j["base"] = config_json(s.base);
    j["sweep"] = json::array();
    for (const auto& a : s.sweep) j["sweep"].push_back({{"axis", a.name}, {"values", a.values}});
    j["plan"] = {{"trials", s.plan.trials}, {"seed", s.plan.master_seed}, {"workers", s.plan.workers}};
    j["outputs"] = json::array();
    for (auto o : s.outputs) j["outputs"].push_back(to_string(o));
    j["power_model"] = {{"P_Bs", s.power_model.P_Bs},
                        {"eps_b", s.power_model.eps_b},
                        {"P_U", s.power_model.P_U},
                        {"P_L", s.power_model.P_L}};
    if (s.p_tot_w) j["relay"] = {{"p_tot", *s.p_tot_w}};
    j["asymptotic_terms"] = s.asymptotic_terms;
    if (!s.series_filter.empty()) j["series"] = s.series_filter;
    return j.dump(2) + "\n";
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::io, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return spec_from_json(ss.str());
    } catch (const Error& e) {
        fail(e.kind(), path + ": " + e.what());
    }
}

}  // namespace irislab
