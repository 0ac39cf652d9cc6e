#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "irislab/rng.hpp"

namespace irislab {

// Thermal noise over a bandwidth, -174 dBm/Hz + 10 log10(D), in watts.
double noise_power_w(double bandwidth_hz);

struct NetworkConfig {
    int M = 1;  // transmit antennas (one stream per user)
    int K = 1;  // receive antennas per user
    int N = 2;  // IRS elements
    double R = 100.0;
    double r0 = 1.0;
    double alpha = 3.0;
    double d1 = 1.0;
    double t1 = 2.0;
    double t2 = 1.0;
    double p_b = 1.0;  // W
    double bandwidth_hz = 1e8;
    double sigma2 = noise_power_w(1e8);  // W
    double ref_atten_db = -30.0;
    double R_m = 1.5;  // target rate, bits per channel use

    int Q() const { return K - M + 1; }
    double ref_gain() const;

    // Throws config errors for violated invariants. N >= M*K is checked
    // only when the passive beamforming solve is needed.
    void validate(bool need_beamforming = false) const;

    bool operator==(const NetworkConfig&) const = default;
};

struct ChannelRealization {
    Eigen::MatrixXcd H;               // N x M, BS -> IRS
    std::vector<Eigen::MatrixXcd> G;  // M entries, each K x N, IRS -> user m
    std::vector<double> d2;           // M user distances
};

// Stream identifiers inside one trial.
namespace entity {
inline constexpr std::uint32_t distance = 1;
inline constexpr std::uint32_t bs_irs = 2;
inline constexpr std::uint32_t irs_user = 3;  // + user index
inline constexpr std::uint32_t relay = 0x100;
inline constexpr std::uint32_t attempt_shift = 20;
}  // namespace entity

struct TrialKey {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint32_t attempt = 0;

    RngStream stream(std::uint32_t id) const {
        return RngStream(seed, trial, (attempt << entity::attempt_shift) | id);
    }
};

double user_distance_from_uniform(double u, double R, double r0);
double sample_user_distance(RngStream& rng, double R, double r0);

double path_loss(double d1, double d2, double alpha, double ref_atten_db);

double sample_nakagami_power(RngStream& rng, double t);

ChannelRealization draw_channel(const TrialKey& key, const NetworkConfig& cfg);

}  // namespace irislab
