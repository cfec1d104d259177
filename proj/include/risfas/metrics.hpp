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

#ifndef RISFAS_METRICS_HPP
#define RISFAS_METRICS_HPP

#include "channel_model.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace risfas
{

// Below this many RIS elements the Gaussian model of the cascade is flagged.
inline constexpr int clt_warning_elements = 30;

// Best-port outage at an arbitrary linear SNR threshold:
// P(gamma <= thr) = F_FAS(thr / mean_snr). The path loss d~ is applied inside
// the marginal CDF.
inline mvn_result outage_at_threshold(const system_config &config, const spatial_correlation &corr,
                                      double snr_threshold_linear, const rqmc_options &rqmc = {})
{
    if (!(snr_threshold_linear >= 0.0))
        throw std::domain_error("outage_at_threshold: threshold must be >= 0");
    return fas_gain_cdf(config, corr, snr_threshold_linear / config.mean_snr(), rqmc);
}

inline mvn_result outage_probability(const system_config &config, const spatial_correlation &corr,
                                     const rqmc_options &rqmc = {})
{
    return outage_at_threshold(config, corr, config.snr_threshold(), rqmc);
}

// Time to deliver data_bits at Shannon rate B log2(1 + snr). +inf at snr = 0.
inline double delivery_time(const system_config &config, double snr_linear)
{
    if (!(snr_linear >= 0.0))
        throw std::domain_error("delivery_time: snr must be >= 0");
    if (snr_linear == 0.0)
        return std::numeric_limits<double>::infinity();
    return config.data_bits / (config.bandwidth_hz * std::log2(1.0 + snr_linear));
}

// SNR below which delivery exceeds delay_threshold_s: exp(R ln2 / (B T_th)) - 1.
inline double effective_snr_threshold(const system_config &config)
{
    return std::expm1(config.data_bits * std::numbers::ln2 / (config.bandwidth_hz * config.delay_threshold_s));
}

// P(T_dt > T_th), which is the outage probability at the effective threshold.
inline mvn_result delay_outage_rate(const system_config &config, const spatial_correlation &corr,
                                    const rqmc_options &rqmc = {})
{
    return outage_at_threshold(config, corr, effective_snr_threshold(config), rqmc);
}

struct tas_metrics
{
    double op = 0.0;
    double dor = 0.0;
    bool clt_warning = false;
};

// Single fixed antenna: marginal CDF only, exact (no integration error).
inline tas_metrics tas_baseline(const system_config &config)
{
    const auto dist = clt_params(config);
    tas_metrics out;
    out.op = marginal_gain_cdf(dist, config.snr_threshold() / config.mean_snr());
    out.dor = marginal_gain_cdf(dist, effective_snr_threshold(config) / config.mean_snr());
    out.clt_warning = config.ris_elements < clt_warning_elements;
    return out;
}

// Binomial estimate with a confidence interval (Wilson score at 95%).
struct interval_estimate
{
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t count = 0;
    std::int64_t trials = 0;
    bool unresolved = false; // fewer than 100 events: the interval is wide relative to the estimate

    double std_error() const
    {
        if (trials < 1)
            return 0.0;
        return std::sqrt(estimate * (1.0 - estimate) / static_cast<double>(trials));
    }
};

// One evaluated sweep point.
struct sweep_record
{
    std::string series;
    double axis_value = 0.0;
    system_config config;
    mvn_result op;
    mvn_result dor;
    tas_metrics tas;
    std::optional<interval_estimate> mc_op;
    std::optional<interval_estimate> mc_dor;
    std::string error; // empty when the point evaluated cleanly
};

} // namespace risfas

#endif
