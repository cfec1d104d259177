// SPDX-License-Identifier: Apache-2.0
//
// ris-fas: outage analysis for RIS-aided fluid antenna receivers
// Copyright (C) 2026 The ris-fas authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISFAS_CHANNEL_MODEL_HPP
#define RISFAS_CHANNEL_MODEL_HPP

#include "fas_geometry.hpp"
#include "gaussian_copula.hpp"
#include "special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace risfas
{

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Physical link parameters. Public quantities are in dB / dBm / SI units; all
// internal math is linear.
struct system_config
{
    double tx_power_dbm = 15.0;        // P
    double noise_dbm = -120.0;         // sigma^2
    double pathloss_exp = 2.5;         // alpha
    double d_bs_ris_m = 2000.0;
    double d_ris_mu_m = 2000.0;
    int ris_elements = 125;            // M
    port_grid grid{1, 1, 1.0, 1.0};   // wavelengths
    double snr_threshold_db = 0.0;     // gamma_th
    double delay_threshold_s = 3e-3;   // T_th
    double data_bits = 3000.0;         // R
    double bandwidth_hz = 2e6;         // B

    void validate() const
    {
        if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_dbm) || !std::isfinite(snr_threshold_db))
            throw std::invalid_argument("system_config: power and threshold levels must be finite");
        if (!(pathloss_exp > 2.0) || !std::isfinite(pathloss_exp))
            throw std::invalid_argument("system_config: pathloss_exp must be > 2");
        if (!(d_bs_ris_m > 0.0) || !(d_ris_mu_m > 0.0) || !std::isfinite(d_bs_ris_m) || !std::isfinite(d_ris_mu_m))
            throw std::invalid_argument("system_config: distances must be positive");
        if (ris_elements < 1)
            throw std::invalid_argument("system_config: ris_elements must be >= 1");
        if (!(delay_threshold_s > 0.0) || !(data_bits > 0.0) || !(bandwidth_hz > 0.0))
            throw std::invalid_argument("system_config: delay_threshold_s, data_bits and bandwidth_hz must be positive");
        grid.validate();
    }

    // Average SNR P / sigma^2, linear.
    double mean_snr() const { return db_to_linear(tx_power_dbm - noise_dbm); }
    double snr_threshold() const { return db_to_linear(snr_threshold_db); }
};

// Gaussian (CLT) model of the aligned cascade amplitude A = sum_m h~_m h_{m,n}
// together with the two-hop path loss d~ = d_BS-RIS^alpha d_RIS-MU^alpha.
struct cascade_gain_distribution
{
    double mu_a = 0.0;
    double sigma2_a = 0.0;
    double tau = 0.0;     // mu_a^2
    double d_tilde = 0.0;

    noncentral_chi_sq1 amplitude_squared() const { return {tau, sigma2_a}; }
};

inline cascade_gain_distribution clt_params(const system_config &config)
{
    config.validate();
    const double m = config.ris_elements;
    cascade_gain_distribution dist;
    dist.mu_a = m * std::numbers::pi / 4.0;
    dist.sigma2_a = m * (1.0 - std::numbers::pi * std::numbers::pi / 16.0);
    dist.tau = dist.mu_a * dist.mu_a;
    dist.d_tilde = std::exp(config.pathloss_exp * (std::log(config.d_bs_ris_m) + std::log(config.d_ris_mu_m)));
    return dist;
}

// CDF of a single port gain |h_n|^2 = A^2 / d~.
inline double marginal_gain_cdf(const cascade_gain_distribution &dist, double r)
{
    if (!(r >= 0.0))
        throw std::domain_error("marginal_gain_cdf: r must be >= 0");
    return ncx2_cdf(dist.amplitude_squared(), r * dist.d_tilde);
}

inline double marginal_gain_pdf(const cascade_gain_distribution &dist, double r)
{
    if (!(r > 0.0))
        throw std::domain_error("marginal_gain_pdf: r must be > 0");
    return dist.d_tilde * ncx2_pdf(dist.amplitude_squared(), r * dist.d_tilde);
}

namespace detail
{
inline void check_correlation_size(const system_config &config, const spatial_correlation &corr)
{
    if (corr.size() != config.grid.size())
        throw std::invalid_argument("correlation size does not match the port grid");
}
} // namespace detail

// CDF of the best-port gain, F(r) = C_R(u, ..., u) with u = F_{A^2}(r d~).
// With one port this is the marginal CDF itself.
inline mvn_result fas_gain_cdf(const system_config &config, const spatial_correlation &corr, double r,
                               const rqmc_options &rqmc = {})
{
    detail::check_correlation_size(config, corr);
    const double u = marginal_gain_cdf(clt_params(config), r);
    if (corr.size() == 1 || u == 0.0)
        return mvn_result::exact(u);
    const std::vector<double> margins(static_cast<std::size_t>(corr.size()), u);
    return copula_cdf(corr, margins, rqmc);
}

// Density of the best-port gain, the exact r-derivative of fas_gain_cdf:
//
//   f(r) = d~ f_{A^2}(r d~) * sum_i P(X_{-i} <= q | X_i = q),   q = Phi^{-1}(u),
//
// where X ~ N(0, R). Each term is a conditional MVN CDF of dimension N - 1.
inline mvn_result fas_gain_pdf(const system_config &config, const spatial_correlation &corr, double r,
                               const rqmc_options &rqmc = {})
{
    detail::check_correlation_size(config, corr);
    if (!(r > 0.0))
        throw std::domain_error("fas_gain_pdf: r must be > 0");
    const auto dist = clt_params(config);
    const double log_marginal = std::log(dist.d_tilde) + ncx2_log_pdf(dist.amplitude_squared(), r * dist.d_tilde);
    const int n = corr.size();
    if (n == 1)
    {
        const double f = std::exp(log_marginal);
        return {f, 0.0, log_marginal, 0.0};
    }
    const double u = marginal_gain_cdf(dist, r);
    if (u == 0.0)
        return {0.0, 0.0, -std::numeric_limits<double>::infinity(), 0.0};
    if (u == 1.0)
    {
        // q = +inf: every conditional probability is 1
        const double lv = log_marginal + std::log(static_cast<double>(n));
        return {std::exp(lv), 0.0, lv, 0.0};
    }
    const double q = gaussian_quantile(u);
    const Eigen::MatrixXd &rm = corr.matrix();

    double var_sum = 0.0;
    double scale = -std::numeric_limits<double>::infinity();
    std::vector<mvn_result> parts;
    for (int i = 0; i < n; ++i)
    {
        Eigen::MatrixXd cond(n - 1, n - 1);
        Eigen::VectorXd lim(n - 1);
        Eigen::VectorXd sd(n - 1);
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (j != i)
                idx.push_back(j);
        for (int a = 0; a < n - 1; ++a)
        {
            const double va = rm(idx[a], idx[a]) - rm(idx[a], i) * rm(i, idx[a]);
            if (!(va > 0.0))
                throw factorization_error("fas_gain_pdf: degenerate conditional variance");
            sd(a) = std::sqrt(va);
            lim(a) = (q - rm(idx[a], i) * q) / sd(a);
        }
        for (int a = 0; a < n - 1; ++a)
            for (int b = 0; b < n - 1; ++b)
                cond(a, b) = (rm(idx[a], idx[b]) - rm(idx[a], i) * rm(i, idx[b])) / (sd(a) * sd(b));
        cond.diagonal().setOnes();
        parts.push_back(mvn_cdf({cond, lim, rqmc}));
        scale = std::max(scale, parts.back().log_value);
    }
    if (!std::isfinite(scale))
        return {0.0, 0.0, -std::numeric_limits<double>::infinity(), 0.0};
    double sum = 0.0;
    for (const auto &p : parts)
    {
        sum += std::exp(p.log_value - scale);
        const double se_scaled = std::exp(p.log_value - scale) * p.relative_error;
        var_sum += se_scaled * se_scaled;
    }
    mvn_result out;
    out.log_value = log_marginal + scale + std::log(sum);
    out.value = std::exp(out.log_value);
    out.relative_error = std::sqrt(var_sum) / sum;
    out.std_error = out.value * out.relative_error;
    return out;
}

// The product form prod_n f_{A^2}(r d~) * c_R(u, ..., u): the joint density of
// all port gains evaluated on the diagonal (r, ..., r). It coincides with the
// density of the best-port gain only for a single port.
inline double fas_gain_product_form_density(const system_config &config, const spatial_correlation &corr, double r)
{
    detail::check_correlation_size(config, corr);
    const auto dist = clt_params(config);
    const int n = corr.size();
    const double log_marginal = std::log(dist.d_tilde) + ncx2_log_pdf(dist.amplitude_squared(), r * dist.d_tilde);
    const std::vector<double> margins(static_cast<std::size_t>(n), marginal_gain_cdf(dist, r));
    return std::exp(n * log_marginal + copula_log_density(corr, margins));
}

} // namespace risfas

#endif
