#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irislab/analysis.hpp"
#include "irislab/quadrature.hpp"
#include "irislab/specfun.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace irislab;
using testsupport::Gen;
using testsupport::near_rel;
using testsupport::throws_kind;

namespace {

NetworkConfig at_snr(double snr_db, double t1 = 2, double t2 = 1, int N = 2, int M = 1, int K = 1) {
    NetworkConfig c;
    c.t1 = t1, c.t2 = t2, c.N = N, c.M = M, c.K = K;
    c.p_b = c.sigma2 * std::pow(10.0, snr_db / 10);
    return c;
}

double closed_form(const NetworkConfig& c) {
    return op_closed_form(make_closed_form_context(c), c.R, c.r0, c.alpha).value;
}

double nakagami_amplitude_mean(double t) {
    return std::exp(std::lgamma(t + 0.5) - std::lgamma(t)) / std::sqrt(t);
}

}  // namespace

TEST(MTilde, ExamplesAndSymmetry) {
    EXPECT_TRUE(near_rel(m_tilde(2, 1), 16.0 / 15, 1e-13));
    EXPECT_TRUE(near_rel(m_tilde(2, 1), oracle::m_tilde_2_1, 1e-13));
    EXPECT_EQ(m_tilde(1, 2), m_tilde(2, 1));
    EXPECT_TRUE(near_rel(m_tilde(3, 1), oracle::m_tilde_3_1, 1e-12));
    EXPECT_TRUE(near_rel(m_tilde(2.5, 0.7), oracle::m_tilde_2_5_0_7, 1e-12));
    EXPECT_TRUE(throws_kind([] { m_tilde(2, 2); }, ErrorKind::domain));
}

TEST(HighSnrStats, PdfAndCdfShape) {
    const auto st = high_snr_stats(2, 1, 3);
    EXPECT_EQ(st.a, 6.0);
    EXPECT_EQ(high_snr_pdf(0.0, st), 0.0);
    EXPECT_EQ(high_snr_cdf(0.0, st), 0.0);
    double prev = 0;
    for (double x = 0.01; x < 40; x *= 1.3) {
        const double F = high_snr_cdf(x, st);
        EXPECT_GE(F, prev);
        prev = F;
    }
    EXPECT_TRUE(near_rel(high_snr_cdf(1e3, st), high_snr_cdf_limit(st), 1e-12));
    EXPECT_TRUE(near_rel(high_snr_cdf_limit(st), std::pow(m_tilde(2, 1), 3) * std::pow(8.0, -3), 1e-12));
    // the density integrates to the same mass
    const auto q = integrate([&](double x) { return high_snr_pdf(x, st); }, 0, 60);
    EXPECT_TRUE(near_rel(q.value, high_snr_cdf_limit(st), 1e-9));
}

TEST(HighSnrStats, LowerTailAgainstSampling) {
    // Sum_n |g||h| for N = 1 at its empirical 0.1% quantile. The high-SNR CDF
    // undershoots the true lower tail by Gamma(t_l - t_s + 1/2) / Gamma(t_s + t_l + 1/2),
    // the same factor that separates the two Laplace forms.
    const auto st = high_snr_stats(2, 1, 1);
    RngStream hs(12, 0, 1), gs(12, 0, 2);
    const int n = 2000000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = std::sqrt(sample_nakagami_power(hs, 2) * sample_nakagami_power(gs, 1));
    const auto k = static_cast<std::size_t>(n / 1000);
    std::nth_element(xs.begin(), xs.begin() + k, xs.end());
    const double ratio = high_snr_cdf(xs[k], st) / 1e-3;
    EXPECT_NEAR(ratio, std::tgamma(1.5) / std::tgamma(3.5), 0.05 * std::tgamma(1.5) / std::tgamma(3.5));
}

TEST(Laplace, AgreesWithDensityQuadrature) {
    EXPECT_TRUE(near_rel(laplace_exact(1, 2, 1), oracle::laplace_2_1_s1, 1e-8));
    EXPECT_TRUE(near_rel(laplace_exact(10, 2, 1), oracle::laplace_2_1_s10, 1e-8));
    EXPECT_TRUE(near_rel(laplace_exact(1e4, 2, 1), oracle::laplace_2_1_s1e4, 1e-8));
    for (double s : {1e-3, 0.1, 1.0, 100.0}) EXPECT_LE(laplace_exact(s, 3, 0.5), 1.0);
}

TEST(Laplace, HighSnrFormTendsToAFixedRatio) {
    // the exact transform and the high-SNR form differ by a constant factor
    // Gamma(t_s + t_l + 1/2) / Gamma(t_l - t_s + 1/2) as s grows
    const double limit = std::tgamma(3.5) / std::tgamma(1.5);
    EXPECT_NEAR(laplace_exact(1e6, 2, 1) / laplace_high_snr(1e6, 2, 1), limit, 1e-3 * limit);
    const double r4 = laplace_exact(1e4, 2, 1) / laplace_high_snr(1e4, 2, 1);
    EXPECT_NEAR(r4, limit, 0.01 * limit);
}

TEST(ProductPdf, NormalizationMeanAndOracle) {
    for (auto [t1, t2] : {std::pair{2.0, 1.0}, {3.0, 1.5}, {0.7, 2.5}}) {
        auto pdf = [=](double x) { return product_nakagami_pdf(x, t1, t2); };
        const auto mass = integrate_pieces(pdf, {0, 0.5, 1, 2, 4, 8, 30});
        EXPECT_NEAR(mass.value, 1.0, 1e-8) << t1 << ' ' << t2;
        const auto mean = integrate_pieces([&](double x) { return x * pdf(x); }, {0, 0.5, 1, 2, 4, 8, 30});
        EXPECT_TRUE(near_rel(mean.value, nakagami_amplitude_mean(t1) * nakagami_amplitude_mean(t2), 1e-8));
    }
    EXPECT_TRUE(near_rel(product_nakagami_pdf(0.7, 2, 1), oracle::pdf_2_1_at_0_7, 1e-10));
    EXPECT_TRUE(near_rel(product_nakagami_pdf(1.9, 3, 1.5), oracle::pdf_3_1_5_at_1_9, 1e-10));
}

TEST(ProductPdf, MatchesSampledProducts) {
    RngStream hs(13, 0, 1), gs(13, 0, 2);
    const int n = 1000000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = std::sqrt(sample_nakagami_power(hs, 2) * sample_nakagami_power(gs, 1));
    std::sort(xs.begin(), xs.end());
    // KS distance evaluated on a fine grid, CDF accumulated piecewise
    double F = 0, prev = 0, worst = 0;
    for (double x = 0.005; x <= 6.0; x += 0.005) {
        F += integrate([](double u) { return product_nakagami_pdf(u, 2, 1); }, prev, x).value;
        prev = x;
        const double emp = static_cast<double>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) / n;
        worst = std::max(worst, std::abs(emp - F));
    }
    EXPECT_LT(worst, 0.003);
}

TEST(OutageClosedForm, MatchesQuadratureOracle) {
    EXPECT_TRUE(near_rel(closed_form(at_snr(100)), oracle::op_n2_100db, 1e-8));
    EXPECT_TRUE(near_rel(closed_form(at_snr(120)), oracle::op_n2_120db, 1e-8));
    EXPECT_TRUE(near_rel(closed_form(at_snr(110, 2, 1, 3)), oracle::op_n3_110db, 1e-8));
    const auto c = at_snr(80, 3, 0.5, 1);
    EXPECT_TRUE(near_rel(closed_form(c), oracle::op_n1_80db_t1_3_t2_0_5, 1e-8));
    EXPECT_TRUE(near_rel(op_quadrature(make_closed_form_context(c), c.R, c.r0, c.alpha),
                         oracle::op_n1_80db_t1_3_t2_0_5, 1e-8));
}

TEST(OutageClosedForm, QuadratureDualityProperty) {
    Gen g(53);
    for (int i = 0; i < 20; ++i) {
        double t1 = g.uniform(0.5, 4), t2 = g.uniform(0.5, 4);
        if (std::abs(t1 - t2) < 0.05) t2 = t1 + 0.3;
        auto c = at_snr(g.uniform(60, 140), t1, t2, g.integer(1, 8));
        c.alpha = g.uniform(2.5, 4);
        SCOPED_TRACE(testing::Message() << t1 << ' ' << t2 << ' ' << c.N << ' ' << c.alpha << ' ' << c.p_b);
        const auto ctx = make_closed_form_context(c);
        const auto cf = op_closed_form(ctx, c.R, c.r0, c.alpha);
        const double q = op_quadrature(ctx, c.R, c.r0, c.alpha);
        EXPECT_TRUE(near_rel(cf.raw, q, 1e-8));
    }
}

TEST(OutageClosedForm, Limits) {
    EXPECT_LT(closed_form(at_snr(250)), 1e-40);
    // shrinking annulus: P tends to the high-SNR CDF at the threshold gain
    auto c = at_snr(100);
    c.R = c.r0 * (1 + 1e-5);
    const auto ctx = make_closed_form_context(c);
    const double shrunk = op_closed_form(ctx, c.R, c.r0, c.alpha).value;
    const auto st = high_snr_stats(c.t1, c.t2, c.N);
    const double x = ctx.delta_m * std::pow(c.d1 * c.r0, c.alpha) / c.ref_gain();
    EXPECT_TRUE(near_rel(shrunk, high_snr_cdf(x, st), 1e-3));
}

TEST(OutageClosedForm, MonotoneInPowerAndRate) {
    Gen g(59);
    for (int i = 0; i < 20; ++i) {
        auto c = at_snr(g.uniform(70, 130), 2, 1, g.integer(1, 4));
        c.R_m = g.uniform(0.2, 4);
        const double p = closed_form(c);
        auto more_power = c;
        more_power.p_b *= 1.5;
        auto more_rate = c;
        more_rate.R_m += 0.5;
        EXPECT_LE(closed_form(more_power), p);
        EXPECT_GE(closed_form(more_rate), p);
    }
}

TEST(OutageClosedForm, DiversityOrderFromSlope) {
    for (int N : {1, 2, 3}) {
        const double lo = closed_form(at_snr(130, 2, 1, N)), hi = closed_form(at_snr(140, 2, 1, N));
        const double slope = std::log10(lo / hi);
        EXPECT_NEAR(slope, diversity_order(2, 1, N), 0.02 * diversity_order(2, 1, N)) << N;
    }
}

TEST(OutageAsymptotic, ConvergesToClosedForm) {
    auto c = at_snr(100);
    auto ctx = make_closed_form_context(c);
    c.p_b *= ctx.b * std::pow(c.R, c.alpha) / 0.5;
    ctx = make_closed_form_context(c);
    ASSERT_NEAR(ctx.b * std::pow(c.R, c.alpha), 0.5, 1e-12);
    const double exact = op_closed_form(ctx, c.R, c.r0, c.alpha).raw;
    EXPECT_TRUE(near_rel(op_asymptotic(ctx, c.R, c.r0, c.alpha, 30), exact, 1e-6));
    // leading term
    const double tau1 = ctx.phi * std::pow(ctx.b, ctx.a) / (ctx.a * (c.alpha * ctx.a + 2));
    const double e = c.alpha * ctx.a + 2;
    EXPECT_TRUE(near_rel(op_asymptotic(ctx, c.R, c.r0, c.alpha, 0),
                         tau1 * (std::pow(c.R, e) - std::pow(c.r0, e)), 1e-12));
    // outside the convergence disc
    auto weak = at_snr(60);
    const auto wctx = make_closed_form_context(weak);
    EXPECT_TRUE(throws_kind([&] { op_asymptotic(wctx, weak.R, weak.r0, weak.alpha, 30); }, ErrorKind::domain));
}

TEST(OutageAsymptotic, SlopeEqualsDiversityOrder) {
    // the series needs b R^alpha < 1, which for N = 2 starts just above 100 dB;
    // the slope settles to the diversity order a decade later
    auto lo = at_snr(110), hi = at_snr(130);
    const double plo = op_asymptotic(make_closed_form_context(lo), lo.R, lo.r0, lo.alpha, 30);
    const double phi = op_asymptotic(make_closed_form_context(hi), hi.R, hi.r0, hi.alpha, 30);
    EXPECT_NEAR(std::log10(plo / phi) / 2, 4.0, 0.04);
}

TEST(Diversity, Examples) {
    EXPECT_EQ(diversity_order(2, 1, 2), 4.0);
    EXPECT_EQ(diversity_order(2, 1, 3), 6.0);
    EXPECT_EQ(diversity_order(1, 5, 1), 2.0);
}

TEST(SpecialCase, Examples) {
    EXPECT_TRUE(near_rel(op_special_case(1, 1, 1, 1, 3), 0.4, 1e-14));
    EXPECT_TRUE(near_rel(op_special_case(1, 2, 2, 1, 3) / op_special_case(1, 2, 1, 1, 3), std::pow(2.0, 6), 1e-13));
    const double s = std::log(op_special_case(1e-3, 3, 1, 2, 3) / op_special_case(1e-4, 3, 1, 2, 3)) / std::log(10.0);
    EXPECT_NEAR(s, 3.0, 1e-12);
}

TEST(GammaApprox, FieldsAndMoments) {
    NetworkConfig c;
    c.t1 = c.t2 = 1, c.N = 6;
    const auto g = gamma_approx(c);
    EXPECT_DOUBLE_EQ(g.t_h, 3.0);
    EXPECT_DOUBLE_EQ(g.shape, 2.0);
    EXPECT_DOUBLE_EQ(g.scale, 3.0);
    Gen gen(61);
    for (int i = 0; i < 20; ++i) {
        c.t1 = gen.uniform(0.5, 5), c.t2 = gen.uniform(0.5, 5), c.N = gen.integer(1, 30);
        c.K = gen.integer(1, 4);
        const auto a = gamma_approx(c);
        EXPECT_TRUE(near_rel(a.shape * a.scale, c.N * c.Q(), 1e-13));
    }
}

TEST(GammaApprox, MatchesLowerBoundStatistic) {
    // sum over n and q of |g_qn|^2 |h_n|^2, for t1 = 2, t2 = 1, N = 8, Q = 2
    NetworkConfig c;
    c.t1 = 2, c.t2 = 1, c.N = 8, c.K = 2;
    const auto g = gamma_approx(c);
    RngStream hs(14, 0, 1), gs(14, 0, 2);
    const int n = 1000000;
    std::vector<double> xs(n);
    double s = 0, s2 = 0;
    for (auto& x : xs) {
        x = 0;
        for (int k = 0; k < 8; ++k) {
            const double h = sample_nakagami_power(hs, 2);
            x += h * (sample_nakagami_power(gs, 1) + sample_nakagami_power(gs, 1));
        }
        s += x, s2 += x * x;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, 16.0, 4 * std::sqrt(var / n));
    EXPECT_TRUE(near_rel(var, g.shape * g.scale * g.scale, 0.02));
    const double ks = testsupport::ks_distance(xs, [&](double x) { return reg_lower_gamma(g.shape, x / g.scale); });
    EXPECT_LT(ks, 0.15);
}

TEST(GammaApprox, OutageOracle) {
    const auto c = at_snr(85, 2, 1, 10, 1, 10);
    EXPECT_TRUE(near_rel(op_gamma_approx(gamma_approx(c), c), oracle::op_gamma_t2_n10_q10_85db, 1e-8));
}

TEST(ErgodicRate, MeijerOracles) {
    const auto a = at_snr(80, 2, 1, 4);
    EXPECT_TRUE(near_rel(ergodic_rate_meijer(gamma_approx(a), a).value, oracle::ergodic_meijer_t2_n4_q1_80db, 1e-8));
    EXPECT_TRUE(near_rel(ergodic_rate_quadrature(gamma_approx(a), a).value, oracle::ergodic_quad_t2_n4_q1_80db, 1e-7));
    const auto b = at_snr(90, 3, 1, 8, 1, 2);
    EXPECT_TRUE(near_rel(ergodic_rate_meijer(gamma_approx(b), b).value, oracle::ergodic_meijer_t3_n8_q2_90db, 1e-8));
    const auto c = at_snr(100, 5, 1, 16);
    EXPECT_TRUE(near_rel(ergodic_rate_meijer(gamma_approx(c), c).value, oracle::ergodic_meijer_t5_n16_q1_100db, 1e-8));
}

TEST(ErgodicRate, MeijerEqualsQuadratureOnSweep) {
    for (double t1 : {1.0, 2.0})
        for (int N : {4, 8})
            for (double snr : {40.0, 80.0, 120.0}) {
                const auto c = at_snr(snr, t1, 1, N);
                const auto g = gamma_approx(c);
                EXPECT_TRUE(near_rel(ergodic_rate_meijer(g, c).value, ergodic_rate_quadrature(g, c).value, 1e-5))
                    << t1 << ' ' << N << ' ' << snr;
            }
}

TEST(ErgodicRate, LimitsAndMonotonicity) {
    const auto weak = at_snr(-60, 2, 1, 4);
    EXPECT_LT(ergodic_rate_quadrature(gamma_approx(weak), weak).value, 1e-6);
    double prev = 0;
    for (int N : {2, 4, 8, 16, 32}) {
        const auto c = at_snr(90, 2, 1, N);
        const double r = ergodic_rate_meijer(gamma_approx(c), c).value;
        EXPECT_GT(r, prev) << N;
        prev = r;
    }
    // slope-one law: ten times the power buys log2(10) bits
    const auto lo = at_snr(100, 2, 1, 4), hi = at_snr(110, 2, 1, 4);
    const double d = ergodic_rate_quadrature(gamma_approx(hi), hi).value -
                     ergodic_rate_quadrature(gamma_approx(lo), lo).value;
    EXPECT_NEAR(d, std::log2(10.0), 0.02 * std::log2(10.0));
}

TEST(ErgodicRate, ShrinkingAnnulusGivesFixedDistanceRate) {
    auto c = at_snr(90, 2, 1, 4);
    const auto g = gamma_approx(c);
    const double ck = ergodic_c(g, c);
    const double r = c.r0;
    // E[log2(1 + X r^-alpha / c)], X ~ Gamma(shape, 1)
    auto f = [&](double x) {
        return std::log2(1 + x * std::pow(r, -c.alpha) / ck) *
               std::exp((g.shape - 1) * std::log(x) - x - std::lgamma(g.shape));
    };
    const double fixed = integrate_pieces(f, {0, g.shape, 2 * g.shape, 4 * g.shape, 20 * g.shape + 100}).value;
    c.R = c.r0 * (1 + 1e-6);
    EXPECT_TRUE(near_rel(ergodic_rate_quadrature(g, c).value, fixed, 1e-4));
    EXPECT_TRUE(near_rel(ergodic_rate_meijer(g, c).value, fixed, 1e-4));
}

TEST(ErgodicRate, HighSnrSlope) {
    auto rate = [](const NetworkConfig& c) { return ergodic_rate_meijer(gamma_approx(c), c).value; };
    auto c4 = at_snr(0, 2, 1, 4), c16 = at_snr(0, 2, 1, 16);
    const double z4 = high_snr_slope(rate, c4), z16 = high_snr_slope(rate, c16);
    EXPECT_NEAR(z4, 1.0, 0.02);
    EXPECT_NEAR(z16, 1.0, 0.02);
    EXPECT_LT(std::abs(z4 - z16), 0.02);
    auto half = [&](const NetworkConfig& c) { return 0.5 * rate(c); };
    EXPECT_NEAR(high_snr_slope(half, c4), 0.5, 0.02);
}

TEST(ErgodicRate, AsymptoticApproachesExact) {
    const auto c = at_snr(140, 2, 1, 8);
    const auto g = gamma_approx(c);
    EXPECT_NEAR(ergodic_rate_asymptotic(g, c), ergodic_rate_meijer(g, c).value, 0.05);
}

TEST(PowerModel, SpectralAndEnergyEfficiency) {
    PowerModel pm{std::pow(10.0, 0.9), 1.2, 0.01, 0.01};
    NetworkConfig c;
    c.N = 10, c.p_b = 1;
    const double pe = power_consumption(pm, c);
    EXPECT_NEAR(pe, 9.253, 5e-4);
    EXPECT_DOUBLE_EQ(spectral_efficiency({2.5, 2.5, 2.5}), 7.5);
    EXPECT_DOUBLE_EQ(energy_efficiency(8, pe), 2 * energy_efficiency(4, pe));
    EXPECT_TRUE(throws_kind([] { energy_efficiency(1, 0); }, ErrorKind::division_by_zero));
    EXPECT_TRUE(throws_kind([] { spectral_efficiency({1, -1}); }, ErrorKind::domain));
}
