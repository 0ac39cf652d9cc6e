#include "irislab/geometry_channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "irislab/errors.hpp"

namespace irislab {

double noise_power_w(double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) fail(ErrorKind::domain, "bandwidth must be > 0");
    const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz);
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double NetworkConfig::ref_gain() const { return std::pow(10.0, ref_atten_db / 10.0); }

void NetworkConfig::validate(bool need_beamforming) const {
    auto bad = [](const std::string& m) { fail(ErrorKind::config, m); };
    if (M < 1) bad("M must be >= 1");
    if (K < M) bad("K must be >= M");
    if (N < 1) bad("N must be >= 1");
    if (need_beamforming && N < M * K) bad("N must be >= M*K for passive beamforming");
    if (!(r0 > 0.0 && r0 < R)) bad("need 0 < r0 < R");
    if (!(alpha > 2.0)) bad("alpha must be > 2");
    if (!(d1 > 0.0)) bad("d1 must be > 0");
    if (!(t1 >= 0.5 && t2 >= 0.5)) bad("fading parameters must be >= 0.5");
    if (!(p_b > 0.0)) bad("p_b must be > 0");
    if (!(sigma2 > 0.0)) bad("sigma2 must be > 0");
    if (!(R_m >= 0.0)) bad("R_m must be >= 0");
    if (!std::isfinite(ref_atten_db)) bad("ref_atten_db must be finite");
}

double user_distance_from_uniform(double u, double R, double r0) {
    if (!(r0 > 0.0 && r0 < R)) fail(ErrorKind::domain, "need 0 < r0 < R");
    return std::sqrt(r0 * r0 + u * (R * R - r0 * r0));
}

double sample_user_distance(RngStream& rng, double R, double r0) {
    return user_distance_from_uniform(rng.uniform(), R, r0);
}

double path_loss(double d1, double d2, double alpha, double ref_atten_db) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) fail(ErrorKind::domain, "distances must be > 0");
    return std::pow(10.0, ref_atten_db / 10.0) * std::pow(d1 * d2, -alpha);
}

double sample_nakagami_power(RngStream& rng, double t) {
    std::gamma_distribution<double> gamma(t, 1.0 / t);
    return gamma(rng);
}

namespace {

std::complex<double> nakagami_entry(RngStream& rng, double t) {
    const double amp = std::sqrt(sample_nakagami_power(rng, t));
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    return std::polar(amp, theta);
}

}  // namespace

ChannelRealization draw_channel(const TrialKey& key, const NetworkConfig& cfg) {
    ChannelRealization out;
    auto dist = key.stream(entity::distance);
    out.d2.resize(cfg.M);
    for (int m = 0; m < cfg.M; ++m) out.d2[m] = sample_user_distance(dist, cfg.R, cfg.r0);

    auto h = key.stream(entity::bs_irs);
    out.H.resize(cfg.N, cfg.M);
    for (int m = 0; m < cfg.M; ++m)
        for (int n = 0; n < cfg.N; ++n) out.H(n, m) = nakagami_entry(h, cfg.t1);

    out.G.resize(cfg.M);
    for (int m = 0; m < cfg.M; ++m) {
        auto g = key.stream(entity::irs_user + static_cast<std::uint32_t>(m));
        out.G[m].resize(cfg.K, cfg.N);
        for (int k = 0; k < cfg.K; ++k)
            for (int n = 0; n < cfg.N; ++n) out.G[m](k, n) = nakagami_entry(g, cfg.t2);
    }
    return out;
}

}  // namespace irislab
