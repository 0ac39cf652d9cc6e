#include "irislab/beamforming.hpp"

#include <cmath>

#include "irislab/errors.hpp"

namespace irislab {

namespace {
constexpr double kRankCutoff = 1e-10;
}

Eigen::MatrixXcd stack_interference_matrix(const ChannelRealization& real) {
    const auto M = static_cast<int>(real.G.size());
    const auto N = static_cast<int>(real.H.rows());
    const int K = M > 0 ? static_cast<int>(real.G[0].rows()) : 0;
    Eigen::MatrixXcd out(M * K, N);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k)
            for (int n = 0; n < N; ++n) out(m * K + k, n) = real.G[m](k, n) * real.H(n, m);
    return out;
}

Eigen::VectorXd target_vector(const ChannelRealization& real) {
    const auto M = static_cast<int>(real.G.size());
    const auto N = static_cast<int>(real.H.rows());
    const int K = M > 0 ? static_cast<int>(real.G[0].rows()) : 0;
    Eigen::VectorXd s(M * K);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k) {
            double acc = 0.0;
            for (int n = 0; n < N; ++n) acc += std::abs(real.G[m](k, n)) * std::abs(real.H(n, m));
            s(m * K + k) = acc;
        }
    return s;
}

Eigen::VectorXcd solve_passive_weights(const Eigen::MatrixXcd& Hbar,
                                       const Eigen::VectorXd& S) {
    if (Hbar.rows() != S.size())
        fail(ErrorKind::dimension, "solve_passive_weights: size mismatch");
    if (Hbar.cols() < Hbar.rows())
        fail(ErrorKind::dimension, "solve_passive_weights: need N >= MK");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Hbar, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = kRankCutoff * (sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    if (rank < Hbar.rows())
        fail(ErrorKind::rank_deficient, "solve_passive_weights: rank-deficient draw");
    const Eigen::VectorXcd rhs = S.cast<std::complex<double>>();
    Eigen::VectorXcd y = svd.matrixU().adjoint() * rhs;
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) /= sv(i);
    return svd.matrixV() * y;
}

NormalizedWeights normalize_weights(const Eigen::VectorXcd& phi_v) {
    double peak = 0.0;
    for (Eigen::Index n = 0; n < phi_v.size(); ++n) peak = std::max(peak, std::abs(phi_v(n)));
    NormalizedWeights out;
    out.beta_max = std::max(1.0, peak);
    out.phi = phi_v / out.beta_max;
    // the division can leave the peak element one ulp above unit modulus
    for (Eigen::Index n = 0; n < out.phi.size(); ++n)
        if (std::abs(out.phi(n)) > 1.0) out.phi(n) /= std::abs(out.phi(n));
    return out;
}

std::vector<Eigen::MatrixXcd> effective_channel(const ChannelRealization& real,
                                                const Eigen::VectorXcd& phi) {
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(real.G.size());
    for (const auto& G : real.G) out.push_back(G * phi.asDiagonal() * real.H);
    return out;
}

Eigen::VectorXcd detection_vector(const Eigen::MatrixXcd& H_eff_m, int m) {
    const auto K = H_eff_m.rows();
    const auto M = H_eff_m.cols();
    if (K < M) fail(ErrorKind::dimension, "detection_vector: need K >= M");
    if (m < 0 || m >= M) fail(ErrorKind::dimension, "detection_vector: user index out of range");

    Eigen::MatrixXcd T;
    if (M == 1) {
        T = Eigen::MatrixXcd::Identity(K, K);
    } else {
        Eigen::MatrixXcd others(K, M - 1);
        for (Eigen::Index j = 0, c = 0; j < M; ++j)
            if (j != m) others.col(c++) = H_eff_m.col(j);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(others, Eigen::ComputeFullU);
        const auto& sv = svd.singularValues();
        const double cutoff = kRankCutoff * (sv.size() ? sv(0) : 0.0);
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > cutoff) ++rank;
        T = svd.matrixU().rightCols(K - rank);
    }
    const Eigen::VectorXcd proj = T.adjoint() * H_eff_m.col(m);
    const double norm = proj.norm();
    if (!(norm > 0.0)) fail(ErrorKind::rank_deficient, "detection_vector: no signal in null space");
    return T * (proj / norm);
}

BeamformingSolution solve_beamforming(const ChannelRealization& real) {
    BeamformingSolution sol;
    sol.phi_v = solve_passive_weights(stack_interference_matrix(real), target_vector(real));
    auto nw = normalize_weights(sol.phi_v);
    sol.phi = std::move(nw.phi);
    sol.beta_max = nw.beta_max;
    sol.H_eff = effective_channel(real, sol.phi);
    sol.V.reserve(sol.H_eff.size());
    for (std::size_t m = 0; m < sol.H_eff.size(); ++m)
        sol.V.push_back(detection_vector(sol.H_eff[m], static_cast<int>(m)));
    return sol;
}

double link_snr(const ChannelRealization& real, const BeamformingSolution& sol,
                const NetworkConfig& cfg, int m) {
    const auto gain = std::norm(sol.V[m].dot(sol.H_eff[m].col(m)));
    return gain * path_loss(cfg.d1, real.d2[m], cfg.alpha, cfg.ref_atten_db) * cfg.p_b /
           cfg.sigma2;
}

double model_snr(const Eigen::VectorXd& sum_gains, double beta_max, double d1,
                 double d2, const NetworkConfig& cfg) {
    const double q = static_cast<double>(sum_gains.size());
    return sum_gains.squaredNorm() * path_loss(d1, d2, cfg.alpha, cfg.ref_atten_db) *
           cfg.p_b / (beta_max * beta_max * q * cfg.sigma2);
}

}  // namespace irislab
