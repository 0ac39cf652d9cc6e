#include "irislab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irislab/errors.hpp"
#include "irislab/quadrature.hpp"

namespace irislab {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_distinct(double t1, double t2) {
    if (t1 == t2) fail(ErrorKind::domain, "requires t1 != t2");
}

// log(exp(x) - exp(y)) for x > y, returned as exp(x) * (1 - exp(y - x)).
double diff_of_exps(double x, double y) {
    if (y == -INFINITY) return std::exp(x);
    return std::exp(x) * -std::expm1(y - x);
}

}  // namespace

// ---- high-SNR statistics --------------------------------------------------

double log_m_tilde(double t1, double t2) {
    require_distinct(t1, t2);
    const double ts = std::min(t1, t2);
    const double tl = std::max(t1, t2);
    return 0.5 * std::log(std::numbers::pi) + (ts - tl + 1.0) * std::log(4.0) +
           ts * std::log(ts * tl) + std::lgamma(2.0 * ts) + std::lgamma(2.0 * tl - 2.0 * ts) -
           std::lgamma(ts) - std::lgamma(tl) - std::lgamma(ts + tl + 0.5);
}

double m_tilde(double t1, double t2) { return std::exp(log_m_tilde(t1, t2)); }

HighSnrChannelStats high_snr_stats(double t1, double t2, int N) {
    HighSnrChannelStats st;
    st.t_s = std::min(t1, t2);
    st.t_l = std::max(t1, t2);
    st.m_tilde = m_tilde(t1, t2);
    st.a = 2.0 * st.t_s * N;
    st.N = N;
    return st;
}

double high_snr_pdf(double x, const HighSnrChannelStats& st) {
    if (!(x >= 0.0)) fail(ErrorKind::domain, "high_snr_pdf: need x >= 0");
    if (x == 0.0) return st.a > 1.0 ? 0.0 : (st.a == 1.0 ? std::pow(st.m_tilde, st.N) : INFINITY);
    const double beta = 2.0 * std::sqrt(st.t_s * st.t_l);
    return std::exp(st.N * std::log(st.m_tilde) - std::lgamma(st.a) +
                    (st.a - 1.0) * std::log(x) - beta * x);
}

double high_snr_cdf_limit(const HighSnrChannelStats& st) {
    return std::exp(st.N * std::log(st.m_tilde) -
                    st.t_s * st.N * std::log(4.0 * st.t_s * st.t_l));
}

double high_snr_cdf(double x, const HighSnrChannelStats& st) {
    if (!(x >= 0.0)) fail(ErrorKind::domain, "high_snr_cdf: need x >= 0");
    const double beta = 2.0 * std::sqrt(st.t_s * st.t_l);
    return high_snr_cdf_limit(st) * reg_lower_gamma(st.a, beta * x);
}

double laplace_exact(double s, double t1, double t2) {
    if (!(s > 0.0)) fail(ErrorKind::domain, "laplace_exact: need s > 0");
    const double ts = std::min(t1, t2);
    const double tl = std::max(t1, t2);
    const double beta = 2.0 * std::sqrt(ts * tl);
    const double log_mbar = 0.5 * std::log(std::numbers::pi) + (ts - tl + 1.0) * std::log(4.0) +
                            ts * std::log(ts * tl) + std::lgamma(2.0 * ts) +
                            std::lgamma(2.0 * tl) - std::lgamma(ts) - std::lgamma(tl) -
                            std::lgamma(ts + tl + 0.5);
    const auto f = hyp2f1(2.0 * ts, ts - tl + 0.5, ts + tl + 0.5, (s - beta) / (s + beta));
    return std::exp(log_mbar - 2.0 * ts * std::log(s + beta)) * f.scaled();
}

double laplace_high_snr(double s, double t1, double t2) {
    if (!(s > 0.0)) fail(ErrorKind::domain, "laplace_high_snr: need s > 0");
    const double ts = std::min(t1, t2);
    const double tl = std::max(t1, t2);
    const double beta = 2.0 * std::sqrt(ts * tl);
    return std::exp(log_m_tilde(t1, t2) - 2.0 * ts * std::log(s + beta));
}

double product_nakagami_pdf(double x, double t1, double t2) {
    if (!(x > 0.0)) fail(ErrorKind::domain, "product_nakagami_pdf: need x > 0");
    const double ts = std::min(t1, t2);
    const double tl = std::max(t1, t2);
    const double beta = 2.0 * std::sqrt(ts * tl);
    const double arg = beta * x;
    if (arg > 700.0) return 0.0;
    const double log_pref = std::log(4.0) + 0.5 * (ts + tl) * std::log(ts * tl) -
                            std::lgamma(ts) - std::lgamma(tl);
    return std::exp(log_pref + (ts + tl - 1.0) * std::log(x)) * bessel_k(ts - tl, arg);
}

// ---- outage ------------------------------------------------------------------

ClosedFormContext make_closed_form_context(const NetworkConfig& cfg, double beta_max) {
    cfg.validate();
    require_distinct(cfg.t1, cfg.t2);
    if (!(beta_max >= 1.0)) fail(ErrorKind::domain, "beta_max must be >= 1");
    const double ts = std::min(cfg.t1, cfg.t2);
    const double tl = std::max(cfg.t1, cfg.t2);
    ClosedFormContext ctx;
    ctx.a = 2.0 * ts * cfg.N;
    ctx.delta_exp = 2.0 / cfg.alpha;
    ctx.eps_m = std::exp2(cfg.R_m) - 1.0;
    ctx.delta_m = ctx.eps_m * cfg.Q() * cfg.sigma2 * beta_max * beta_max / cfg.p_b;
    ctx.log_b = std::log(2.0 * std::sqrt(ts * tl)) + std::log(ctx.delta_m) +
                cfg.alpha * std::log(cfg.d1) - std::log(cfg.ref_gain());
    ctx.b = std::exp(ctx.log_b);
    ctx.log_phi = std::log(2.0) + cfg.N * log_m_tilde(cfg.t1, cfg.t2) -
                  ts * cfg.N * std::log(4.0 * ts * tl) - std::lgamma(ctx.a) -
                  std::log(cfg.R * cfg.R - cfg.r0 * cfg.r0);
    ctx.phi = std::exp(ctx.log_phi);
    return ctx;
}

OutageValue op_closed_form(const ClosedFormContext& ctx, double R, double r0, double alpha) {
    if (!(r0 > 0.0 && r0 <= R)) fail(ErrorKind::domain, "op_closed_form: need 0 < r0 <= R");
    OutageValue out;
    if (ctx.delta_m == 0.0 || R == r0) return out;
    const double a = ctx.a;
    const double d = 2.0 / alpha;
    const double e = alpha * a + 2.0;
    const double log_tau1 = ctx.log_phi + a * ctx.log_b - std::log(a) - std::log(e);
    EvalMethod method = EvalMethod::series;
    auto log_term = [&](double r, bool outer) {
        const double z = std::exp(ctx.log_b + alpha * std::log(r));
        const auto f = hyp2f2(a, a + d, a + 1.0, a + d + 1.0, -z);
        if (outer) method = f.method;
        if (!(f.value > 0.0))
            fail(ErrorKind::conditioning, "op_closed_form: hypergeometric factor not positive");
        return log_tau1 + e * std::log(r) + f.log_scale + std::log(f.value);
    };
    const double tr = log_term(R, true);
    const double t0 = log_term(r0, false);
    out.raw = diff_of_exps(tr, t0);
    out.method = method;
    out.out_of_range = !(out.raw >= 0.0 && out.raw <= 1.0);
    out.value = std::clamp(out.raw, 0.0, 1.0);
    return out;
}

double op_quadrature(const ClosedFormContext& ctx, double R, double r0, double alpha) {
    if (!(r0 > 0.0 && r0 <= R)) fail(ErrorKind::domain, "op_quadrature: need 0 < r0 <= R");
    if (ctx.delta_m == 0.0 || R == r0) return 0.0;
    const double a = ctx.a;
    auto f = [&](double r) {
        const double x = std::exp(ctx.log_b + alpha * std::log(r));
        return reg_lower_gamma(a, x) * r;
    };
    std::vector<double> br{r0};
    const double r_star = std::exp((std::log(a) - ctx.log_b) / alpha);
    for (double q : {0.25, 0.5, 0.75, 0.9}) br.push_back(r0 + q * (R - r0));
    if (r_star > r0 && r_star < R) br.push_back(r_star);
    br.push_back(R);
    std::sort(br.begin(), br.end());
    const auto q = integrate_pieces(f, br, {1e-13});
    return std::exp(ctx.log_phi + std::lgamma(a)) * q.value;
}

double op_asymptotic(const ClosedFormContext& ctx, double R, double r0, double alpha, int n_max) {
    if (n_max < 0) fail(ErrorKind::domain, "op_asymptotic: n_max must be >= 0");
    if (ctx.delta_m == 0.0) return 0.0;
    if (!(ctx.log_b + alpha * std::log(R) < 0.0))
        fail(ErrorKind::domain, "op_asymptotic: requires b R^alpha < 1");
    const double a = ctx.a;
    const double d = 2.0 / alpha;
    const double base = ctx.log_phi - std::log(a) - std::log(alpha * a + 2.0);
    double log_t = 0.0;  // log of the n-th 2F2 coefficient
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            const double j = n - 1.0;
            log_t += std::log((a + j) * (a + d + j)) -
                     std::log((a + 1.0 + j) * (a + d + 1.0 + j) * (j + 1.0));
        }
        const double e = alpha * (a + n) + 2.0;
        const double mag = std::exp(base + (n + a) * ctx.log_b + log_t + e * std::log(R)) *
                           -std::expm1(e * std::log(r0 / R));
        sum += (n % 2 == 0 ? mag : -mag);
    }
    return sum;
}

double diversity_order(double t1, double t2, int N) { return 2.0 * std::min(t1, t2) * N; }

double op_special_case(double x, int N, double d1, double R, double alpha) {
    if (N < 1) fail(ErrorKind::domain, "op_special_case: N must be >= 1");
    if (x == 0.0) return 0.0;
    return std::exp(std::log(2.0) + N * std::log(x) + N * alpha * std::log(d1 * R) -
                    std::log(N * alpha + 2.0) - std::lgamma(N + 1.0));
}

// ---- Gamma approximation ---------------------------------------------------

GammaApprox gamma_approx(const NetworkConfig& cfg) {
    const int Q = cfg.Q();
    if (Q < 1) fail(ErrorKind::config, "gamma_approx: need K >= M");
    GammaApprox g;
    g.t_h = (1.0 + cfg.t1 + Q * cfg.t2) / (cfg.t1 * cfg.t2);
    g.shape = cfg.N * Q / g.t_h;
    g.scale = g.t_h;
    return g;
}

namespace {

// threshold / scale = k r^alpha under the Gamma model
double gamma_threshold_k(const GammaApprox& g, const NetworkConfig& cfg) {
    const double eps = std::exp2(cfg.R_m) - 1.0;
    return eps * cfg.Q() * cfg.sigma2 * std::pow(cfg.d1, cfg.alpha) /
           (cfg.ref_gain() * cfg.p_b * g.scale);
}

}  // namespace

double op_gamma_approx(const GammaApprox& g, const NetworkConfig& cfg) {
    cfg.validate();
    const double k = gamma_threshold_k(g, cfg);
    if (k == 0.0) return 0.0;
    const double a = g.shape;
    const double d = 2.0 / cfg.alpha;
    const double R2 = cfg.R * cfg.R;
    const double r02 = cfg.r0 * cfg.r0;
    const double xR = k * std::pow(cfg.R, cfg.alpha);
    const double x0 = k * std::pow(cfg.r0, cfg.alpha);
    // int r P(a, k r^alpha) dr = (1/2)[r^2 P(a,.) - k^-d G(a+d)/G(a) P(a+d,.)]
    const double c = std::exp(-d * std::log(k) + std::lgamma(a + d) - std::lgamma(a));
    const double v = R2 * reg_lower_gamma(a, xR) - r02 * reg_lower_gamma(a, x0) -
                     c * (reg_lower_gamma(a + d, xR) - reg_lower_gamma(a + d, x0));
    return std::clamp(v / (R2 - r02), 0.0, 1.0);
}

double op_gamma_approx_asymptotic(const GammaApprox& g, const NetworkConfig& cfg) {
    cfg.validate();
    const double k = gamma_threshold_k(g, cfg);
    if (k == 0.0) return 0.0;
    const double a = g.shape;
    const double e = cfg.alpha * a + 2.0;
    return std::exp(std::log(2.0) + a * std::log(k) - std::lgamma(a + 1.0) - std::log(e) +
                    e * std::log(cfg.R) - std::log(cfg.R * cfg.R - cfg.r0 * cfg.r0)) *
           -std::expm1(e * std::log(cfg.r0 / cfg.R));
}

// ---- ergodic rate ----------------------------------------------------------

double ergodic_c(const GammaApprox& g, const NetworkConfig& cfg) {
    return cfg.Q() * cfg.sigma2 * std::pow(cfg.d1, cfg.alpha) /
           (g.t_h * cfg.p_b * cfg.ref_gain());
}

RateValue ergodic_rate_quadrature(const GammaApprox& g, const NetworkConfig& cfg) {
    cfg.validate();
    const double a = g.shape;
    const double c = ergodic_c(g, cfg);
    const double R = cfg.R, r0 = cfg.r0, alpha = cfg.alpha;
    const double norm = 2.0 / (R * R - r0 * r0);

    double inner_err = 0.0;
    // complementary CDF of the SNR at level x, averaged over distance
    auto lambda = [&](double x) {
        if (x <= 0.0) return 1.0;
        auto f = [&](double r) { return reg_upper_gamma(a, c * x * std::pow(r, alpha)) * r; };
        std::vector<double> br{r0};
        const double r_star = std::pow(a / (c * x), 1.0 / alpha);
        for (double q : {0.5, 1.0, 1.5})
            if (q * r_star > r0 && q * r_star < R) br.push_back(q * r_star);
        br.push_back(R);
        const auto q = integrate_pieces(f, br, {1e-13});
        inner_err = std::max(inner_err, q.abs_error);
        return norm * q.value;
    };

    const double cut = a + 40.0 * std::sqrt(a) + 80.0;
    const double x_max = cut / (c * std::pow(r0, alpha));
    QuadResult total;
    const double x_lo_end = std::min(1.0, x_max);
    const auto lo = integrate([&](double x) { return lambda(x) / (1.0 + x); }, 0.0, x_lo_end, {1e-12});
    total.value += lo.value;
    total.abs_error += lo.abs_error;
    if (x_max > 1.0) {
        const double u_max = std::log(x_max);
        std::vector<double> br{0.0};
        const double u1 = std::log(a / (c * std::pow(R, alpha)));
        const double u2 = std::log(a / (c * std::pow(r0, alpha)));
        for (double u = 1.0; u < u_max; u += 1.0) br.push_back(u);
        for (double u : {u1, u2})
            if (u > 0.0 && u < u_max) br.push_back(u);
        br.push_back(u_max);
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        auto h = [&](double u) {
            const double x = std::exp(u);
            return lambda(x) * x / (1.0 + x);
        };
        const auto hi = integrate_pieces(h, br, {1e-12});
        total.value += hi.value;
        total.abs_error += hi.abs_error;
    }
    return {total.value / kLn2, (total.abs_error + inner_err) / kLn2};
}

RateValue ergodic_rate_meijer(const GammaApprox& g, const NetworkConfig& cfg, MeijerPath path) {
    cfg.validate();
    const double a = g.shape;
    const double d = 2.0 / cfg.alpha;
    const double c = ergodic_c(g, cfg);
    const double R2 = cfg.R * cfg.R;
    const double r02 = cfg.r0 * cfg.r0;
    const double zR = c * std::pow(cfg.R, cfg.alpha);
    const double z0 = c * std::pow(cfg.r0, cfg.alpha);
    const double ga = std::tgamma(a);
    auto GA = [&](double z) { return meijer_g_3123(0.0, 0.0, a, 0.0, 1.0, z, path); };
    auto GB = [&](double z) { return meijer_g_3123(d, 0.0, a + d, d, 1.0, z, path); };
    const auto aR = GA(zR), a0 = GA(z0), bR = GB(zR), b0 = GB(z0);
    const double cd = std::pow(c, -d);
    const double num = R2 * aR.value - r02 * a0.value + cd * (b0.value - bR.value);
    const double err = R2 * aR.abs_error_bound + r02 * a0.abs_error_bound +
                       cd * (b0.abs_error_bound + bR.abs_error_bound);
    const double den = (R2 - r02) * ga * kLn2;
    return {num / den, err / den};
}

double ergodic_rate_asymptotic(const GammaApprox& g, const NetworkConfig& cfg) {
    cfg.validate();
    const double R2 = cfg.R * cfg.R;
    const double r02 = cfg.r0 * cfg.r0;
    const double mean_log_r =
        (R2 * std::log(cfg.R) - r02 * std::log(cfg.r0)) / (R2 - r02) - 0.5;
    return (digamma(g.shape) - std::log(ergodic_c(g, cfg)) - cfg.alpha * mean_log_r) / kLn2;
}

double high_snr_slope(const RateFn& rate_fn, const NetworkConfig& cfg, double rho_lo,
                      double rho_hi) {
    NetworkConfig lo = cfg, hi = cfg;
    lo.p_b = rho_lo * cfg.sigma2;
    hi.p_b = rho_hi * cfg.sigma2;
    return (rate_fn(hi) - rate_fn(lo)) / std::log2(rho_hi / rho_lo);
}

// ---- SE / EE -----------------------------------------------------------------

double spectral_efficiency(const std::vector<double>& rates) {
    double s = 0.0;
    for (double r : rates) {
        if (!(r >= 0.0)) fail(ErrorKind::domain, "spectral_efficiency: rates must be >= 0");
        s += r;
    }
    return s;
}

double power_consumption(const PowerModel& pm, const NetworkConfig& cfg) {
    if (!(pm.P_Bs >= 0.0 && pm.eps_b >= 0.0 && pm.P_U >= 0.0 && pm.P_L >= 0.0))
        fail(ErrorKind::domain, "power_consumption: inputs must be >= 0");
    return pm.P_Bs + cfg.M * pm.P_U + cfg.M * cfg.p_b * pm.eps_b + cfg.N * pm.P_L;
}

double energy_efficiency(double se, double pe, double bandwidth_hz) {
    if (pe == 0.0) fail(ErrorKind::division_by_zero, "energy_efficiency: zero power");
    if (!(se >= 0.0 && pe > 0.0 && bandwidth_hz > 0.0))
        fail(ErrorKind::domain, "energy_efficiency: inputs must be positive");
    return bandwidth_hz * se / pe;
}

}  // namespace irislab
