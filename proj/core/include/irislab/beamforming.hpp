#pragma once

#include <Eigen/Dense>

#include <vector>

#include "irislab/geometry_channel.hpp"

namespace irislab {

struct BeamformingSolution {
    Eigen::VectorXcd phi_v;               // unnormalized IRS weights
    double beta_max = 1.0;
    Eigen::VectorXcd phi;                 // phi_v / beta_max, |phi[n]| <= 1
    std::vector<Eigen::VectorXcd> V;      // unit detection vector per user
    std::vector<Eigen::MatrixXcd> H_eff;  // K x M effective channel per user
};

// Row m*K + k, column n holds G[m](k,n) * H(n,m).
Eigen::MatrixXcd stack_interference_matrix(const ChannelRealization& real);

// Entry m*K + k is sum_n |G[m](k,n)| |H(n,m)|.
Eigen::VectorXd target_vector(const ChannelRealization& real);

// Minimum-norm solution of Hbar * phi_v = S. Singular values below
// 1e-10 * sigma_max count as zero; fewer than MK nonzero ones is a
// rank-deficiency error.
Eigen::VectorXcd solve_passive_weights(const Eigen::MatrixXcd& Hbar,
                                       const Eigen::VectorXd& S);

struct NormalizedWeights {
    Eigen::VectorXcd phi;
    double beta_max = 1.0;
};

NormalizedWeights normalize_weights(const Eigen::VectorXcd& phi_v);

std::vector<Eigen::MatrixXcd> effective_channel(const ChannelRealization& real,
                                                const Eigen::VectorXcd& phi);

// Zero-forcing combiner for user m: projection onto the null space of the
// other users' columns, then maximum-ratio combining inside it.
Eigen::VectorXcd detection_vector(const Eigen::MatrixXcd& H_eff_m, int m);

BeamformingSolution solve_beamforming(const ChannelRealization& real);

double link_snr(const ChannelRealization& real, const BeamformingSolution& sol,
                const NetworkConfig& cfg, int m);

double model_snr(const Eigen::VectorXd& sum_gains, double beta_max, double d1,
                 double d2, const NetworkConfig& cfg);

}  // namespace irislab
