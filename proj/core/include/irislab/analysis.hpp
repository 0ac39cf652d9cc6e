#pragma once

#include <functional>
#include <vector>

#include "irislab/geometry_channel.hpp"
#include "irislab/specfun.hpp"

namespace irislab {

// ---- high-SNR channel statistics -----------------------------------------

struct HighSnrChannelStats {
    double t_s = 0.0;
    double t_l = 0.0;
    double m_tilde = 0.0;
    double a = 0.0;  // 2 t_s N
    int N = 1;
};

double m_tilde(double t1, double t2);
double log_m_tilde(double t1, double t2);
HighSnrChannelStats high_snr_stats(double t1, double t2, int N);

// Tail approximation to the density of sum_n |g_n||h_n|; its total mass is
// high_snr_cdf_limit(), which is not 1.
double high_snr_pdf(double x, const HighSnrChannelStats& st);
double high_snr_cdf(double x, const HighSnrChannelStats& st);
double high_snr_cdf_limit(const HighSnrChannelStats& st);

double laplace_exact(double s, double t1, double t2);
double laplace_high_snr(double s, double t1, double t2);

// Density of |g||h| for independent unit-mean Nakagami amplitudes. Uses the
// modified Bessel K kernel, which is the normalized one.
double product_nakagami_pdf(double x, double t1, double t2);

// ---- outage probability ---------------------------------------------------

struct ClosedFormContext {
    double a = 0.0;          // 2 t_s N
    double b = 0.0;
    double log_b = 0.0;
    double phi = 0.0;
    double log_phi = 0.0;
    double delta_exp = 0.0;  // 2/alpha
    double eps_m = 0.0;      // 2^R_m - 1
    double delta_m = 0.0;    // eps_m Q sigma2 beta^2 / p_b
};

// beta_max = 1 gives the upper-bound (optimized scenario) context.
ClosedFormContext make_closed_form_context(const NetworkConfig& cfg,
                                           double beta_max = 1.0);

struct OutageValue {
    double value = 0.0;  // clamped to [0, 1]
    double raw = 0.0;
    bool out_of_range = false;
    EvalMethod method = EvalMethod::series;
};

OutageValue op_closed_form(const ClosedFormContext& ctx, double R, double r0,
                           double alpha);

// phi * int_{r0}^{R} gamma(a, b r^alpha) r dr by adaptive quadrature.
double op_quadrature(const ClosedFormContext& ctx, double R, double r0,
                     double alpha);

// Truncated power series in b; needs b R^alpha < 1.
double op_asymptotic(const ClosedFormContext& ctx, double R, double r0,
                     double alpha, int n_max);

double diversity_order(double t1, double t2, int N);

// 2 x^N (d1 R)^{N alpha} / ((N alpha + 2) N!) with x the caller's threshold.
double op_special_case(double eps_or_delta, int N, double d1, double R,
                       double alpha);

// ---- Gamma approximation and ergodic rate -------------------------------

struct GammaApprox {
    double t_h = 0.0;
    double shape = 0.0;
    double scale = 0.0;
};

GammaApprox gamma_approx(const NetworkConfig& cfg);

// Outage under the Gamma approximation of the effective gain, averaged over
// the user distance; and its leading small-threshold term.
double op_gamma_approx(const GammaApprox& g, const NetworkConfig& cfg);
double op_gamma_approx_asymptotic(const GammaApprox& g, const NetworkConfig& cfg);

// c = Q sigma2 d1^alpha / (t_h p_b L0)
double ergodic_c(const GammaApprox& g, const NetworkConfig& cfg);

struct RateValue {
    double value = 0.0;
    double abs_error = 0.0;
};

RateValue ergodic_rate_quadrature(const GammaApprox& g, const NetworkConfig& cfg);
RateValue ergodic_rate_meijer(const GammaApprox& g, const NetworkConfig& cfg,
                              MeijerPath path = MeijerPath::automatic);
double ergodic_rate_asymptotic(const GammaApprox& g, const NetworkConfig& cfg);

using RateFn = std::function<double(const NetworkConfig&)>;

// Slope of rate against log2(p_b / sigma2) between two SNRs.
double high_snr_slope(const RateFn& rate_fn, const NetworkConfig& cfg,
                      double rho_lo = 1e10, double rho_hi = 1e12);

// ---- SE / power / EE ------------------------------------------------------

struct PowerModel {
    double P_Bs = 0.0;   // W
    double eps_b = 0.0;
    double P_U = 0.0;    // W
    double P_L = 0.0;    // W

    bool operator==(const PowerModel&) const = default;
};

double spectral_efficiency(const std::vector<double>& per_user_rates);
double power_consumption(const PowerModel& pm, const NetworkConfig& cfg);
double energy_efficiency(double se, double pe, double bandwidth_hz = 1.0);

}  // namespace irislab
