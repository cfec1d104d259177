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

#ifndef RISFAS_MONTE_CARLO_HPP
#define RISFAS_MONTE_CARLO_HPP

#include "channel_model.hpp"
#include "fas_geometry.hpp"
#include "metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

// Link-level simulator of the cascade channel with ideal RIS phases.
//
// Model per trial: BS-RIS amplitudes h~_m are i.i.d. unit-power Rayleigh; for each
// element m the RIS-MU field over the ports is CN(0, R) with R the regularized
// port correlation, independent across m. With phases aligned the port-n cascade
// amplitude is A_n = sum_m h~_m |h_{m,n}|, the best port gives max_n A_n^2 / d~
// and the SNR is mean_snr times that gain. The transmitted symbol, noise and RIS
// phase variables enter only through mean_snr.

namespace risfas
{

struct mc_run
{
    std::int64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::int64_t batch = 65536; // trials per work unit; results do not depend on it
    int workers = 1;

    void validate() const
    {
        if (trials < 1000)
            throw std::invalid_argument("mc_run: trials must be >= 1000");
        if (batch < 1)
            throw std::invalid_argument("mc_run: batch must be >= 1");
        if (workers < 1)
            throw std::invalid_argument("mc_run: workers must be >= 1");
    }
};

using mc_estimate = interval_estimate;

inline constexpr double wilson_z95 = 1.959963984540054;

inline mc_estimate wilson_estimate(std::int64_t count, std::int64_t trials, double z = wilson_z95)
{
    if (trials < 1 || count < 0 || count > trials)
        throw std::invalid_argument("wilson_estimate: need 0 <= count <= trials, trials >= 1");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(count) / n;
    const double z2 = z * z;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    mc_estimate out;
    out.estimate = p;
    out.lo = std::clamp(centre - half, 0.0, p);
    out.hi = std::clamp(centre + half, p, 1.0);
    out.count = count;
    out.trials = trials;
    out.unresolved = count < 100;
    return out;
}

// SplitMix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One circularly-symmetric complex Gaussian port vector with covariance R,
// g = L w with L the Cholesky factor of R and w ~ CN(0, I).
template <class URBG>
std::vector<std::complex<double>> draw_correlated_port_field(const spatial_correlation &corr, URBG &rng)
{
    const int n = corr.size();
    const auto &l = corr.cholesky_lower();
    std::normal_distribution<double> half_normal(0.0, std::numbers::sqrt2 / 2.0);
    std::vector<std::complex<double>> w(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n));
    for (auto &x : w)
    {
        const double re = half_normal(rng);
        x = {re, half_normal(rng)};
    }
    for (int i = 0; i < n; ++i)
    {
        std::complex<double> s = 0.0;
        for (int j = 0; j <= i; ++j)
            s += l(i, j) * w[static_cast<std::size_t>(j)];
        g[static_cast<std::size_t>(i)] = s;
    }
    return g;
}

// Port amplitudes |g_n|: marginally unit-power Rayleigh.
template <class URBG>
std::vector<double> draw_correlated_port_amplitudes(const spatial_correlation &corr, URBG &rng)
{
    const auto g = draw_correlated_port_field(corr, rng);
    std::vector<double> a(g.size());
    std::transform(g.begin(), g.end(), a.begin(), [](auto z) { return std::abs(z); });
    return a;
}

// Cascade amplitudes A_n = sum_m h~_m |h_{m,n}| for all ports.
template <class URBG>
std::vector<double> draw_cascade_amplitudes(const spatial_correlation &corr, int ris_elements, URBG &rng)
{
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> a(static_cast<std::size_t>(corr.size()), 0.0);
    for (int m = 0; m < ris_elements; ++m)
    {
        const double bs = std::sqrt(exp1(rng));
        const auto port = draw_correlated_port_amplitudes(corr, rng);
        for (std::size_t n = 0; n < a.size(); ++n)
            a[n] += bs * port[n];
    }
    return a;
}

// SplitMix64 as a standard uniform random bit generator. Seeding is O(1), so
// every trial gets its own addressable stream.
class splitmix64
{
public:
    using result_type = std::uint64_t;

    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

namespace detail
{

// Uniform on (0, 1) from the top 53 bits.
inline double open_unit(splitmix64 &rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// Per-trial best-port SNR.
//
// The trial stream yields, per RIS element, the BS-RIS amplitude and the port-0
// amplitude. Port 0's cascade sum grows monotonically, so once settled(snr0)
// holds for the partial sum the trial is decided and the remaining draws are
// skipped. Otherwise a second stream supplies the port-0 phases and the
// innovations of ports 1..N-1. Both streams depend only on the trial seed.
class cascade_kernel
{
public:
    cascade_kernel(const system_config &config, const spatial_correlation &corr)
        : lower_(corr.cholesky_lower()), m_(config.ris_elements), n_(corr.size()),
          snr_per_amp2_(config.mean_snr() / clt_params(config).d_tilde),
          exp_bs_(static_cast<std::size_t>(m_)), exp_port0_(static_cast<std::size_t>(m_)),
          w_re_(static_cast<std::size_t>(n_)), w_im_(static_cast<std::size_t>(n_)), acc_(static_cast<std::size_t>(n_))
    {
    }

    template <class Settled>
    double best_snr(std::uint64_t trial_seed, Settled settled)
    {
        splitmix64 rng(trial_seed);
        const double l00 = lower_(0, 0);
        double a0 = 0.0;
        for (int m = 0; m < m_; ++m)
        {
            const auto mi = static_cast<std::size_t>(m);
            // unit-power Rayleigh amplitudes are square roots of Exp(1) variates
            exp_bs_[mi] = -std::log(open_unit(rng));
            exp_port0_[mi] = -std::log(open_unit(rng));
            a0 += std::sqrt(exp_bs_[mi] * exp_port0_[mi]);
            const double snr0 = snr_per_amp2_ * (l00 * a0) * (l00 * a0);
            if (settled(snr0))
                return snr0;
        }
        a0 *= l00;
        const double snr0 = snr_per_amp2_ * a0 * a0;
        if (n_ == 1)
            return snr0;

        splitmix64 field(mix_seed(trial_seed, 1));
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        std::normal_distribution<double> half_normal(0.0, std::numbers::sqrt2 / 2.0);
        std::fill(acc_.begin(), acc_.end(), 0.0);
        for (int m = 0; m < m_; ++m)
        {
            const auto mi = static_cast<std::size_t>(m);
            const double bs = std::sqrt(exp_bs_[mi]);
            const double port0 = std::sqrt(exp_port0_[mi]);
            const double th = phase(field);
            w_re_[0] = port0 * std::cos(th);
            w_im_[0] = port0 * std::sin(th);
            for (int j = 1; j < n_; ++j)
            {
                w_re_[static_cast<std::size_t>(j)] = half_normal(field);
                w_im_[static_cast<std::size_t>(j)] = half_normal(field);
            }
            for (int i = 1; i < n_; ++i)
            {
                double re = 0.0, im = 0.0;
                for (int j = 0; j <= i; ++j)
                {
                    re += lower_(i, j) * w_re_[static_cast<std::size_t>(j)];
                    im += lower_(i, j) * w_im_[static_cast<std::size_t>(j)];
                }
                acc_[static_cast<std::size_t>(i)] += bs * std::hypot(re, im);
            }
        }
        double best = a0;
        for (int i = 1; i < n_; ++i)
            best = std::max(best, acc_[static_cast<std::size_t>(i)]);
        return snr_per_amp2_ * best * best;
    }

private:
    Eigen::MatrixXd lower_;
    int m_;
    int n_;
    double snr_per_amp2_;
    std::vector<double> exp_bs_, exp_port0_, w_re_, w_im_, acc_;
};

// Runs blocks of trials (in parallel when workers > 1) and sums fn(block) counts.
template <class BlockFn>
std::int64_t run_blocks(const mc_run &run, BlockFn fn)
{
    const std::int64_t blocks = (run.trials + run.batch - 1) / run.batch;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(blocks), 0);
    auto worker = [&](int id) {
        for (std::int64_t b = id; b < blocks; b += run.workers)
        {
            const std::int64_t first = b * run.batch;
            const std::int64_t size = std::min(run.batch, run.trials - first);
            counts[static_cast<std::size_t>(b)] = fn(b, size);
        }
    };
    if (run.workers == 1)
        worker(0);
    else
    {
        std::vector<std::jthread> pool;
        for (int id = 0; id < run.workers; ++id)
            pool.emplace_back(worker, id);
    }
    std::int64_t total = 0;
    for (auto c : counts)
        total += c;
    return total;
}

// Counts trials whose best-port SNR satisfies counted(snr). settled must be
// monotone and settled(s0) must imply !counted(s) for every s >= s0.
template <class Counted, class Settled>
std::int64_t count_trials(const system_config &config, const spatial_correlation &corr, const mc_run &run,
                          Counted counted, Settled settled)
{
    return run_blocks(run, [&](std::int64_t block, std::int64_t size) {
        cascade_kernel kernel(config, corr);
        std::int64_t c = 0;
        for (std::int64_t t = block * run.batch; t < block * run.batch + size; ++t)
            if (counted(kernel.best_snr(mix_seed(run.seed, static_cast<std::uint64_t>(t)), settled)))
                ++c;
        return c;
    });
}

} // namespace detail

// Empirical outage probability P(snr <= gamma_th).
inline mc_estimate simulate_op(const system_config &config, const spatial_correlation &corr, const mc_run &run)
{
    config.validate();
    run.validate();
    detail::check_correlation_size(config, corr);
    const double thr = config.snr_threshold();
    const auto count = detail::count_trials(
        config, corr, run, [thr](double s) { return s <= thr; }, [thr](double s0) { return s0 > thr; });
    return wilson_estimate(count, run.trials);
}

enum class dor_counting
{
    effective_threshold, // snr < exp(R ln2 / (B T_th)) - 1, early exit on the first port
    delivery_time,       // R / (B log2(1 + snr)) > T_th on the full best-port SNR
};

// Empirical delay outage rate P(T_dt > T_th).
inline mc_estimate simulate_dor(const system_config &config, const spatial_correlation &corr, const mc_run &run,
                                dor_counting mode = dor_counting::effective_threshold)
{
    config.validate();
    run.validate();
    detail::check_correlation_size(config, corr);
    std::int64_t count = 0;
    if (mode == dor_counting::effective_threshold)
    {
        const double thr = effective_snr_threshold(config);
        count = detail::count_trials(
            config, corr, run, [thr](double s) { return s < thr; }, [thr](double s0) { return s0 >= thr; });
    }
    else
    {
        count = detail::count_trials(
            config, corr, run, [&](double s) { return delivery_time(config, s) > config.delay_threshold_s; },
            [](double) { return false; });
    }
    return wilson_estimate(count, run.trials);
}

// Best-port gains max_n A_n^2 / d~ for every trial, in trial order, using the
// same streams as simulate_op.
inline std::vector<double> simulate_gains(const system_config &config, const spatial_correlation &corr,
                                          const mc_run &run)
{
    config.validate();
    run.validate();
    detail::check_correlation_size(config, corr);
    std::vector<double> gains(static_cast<std::size_t>(run.trials));
    const double inv_snr = 1.0 / config.mean_snr();
    detail::run_blocks(run, [&](std::int64_t block, std::int64_t size) {
        detail::cascade_kernel kernel(config, corr);
        for (std::int64_t t = block * run.batch; t < block * run.batch + size; ++t)
            gains[static_cast<std::size_t>(t)] =
                inv_snr * kernel.best_snr(mix_seed(run.seed, static_cast<std::uint64_t>(t)), [](double) { return false; });
        return std::int64_t{0};
    });
    return gains;
}

// Raw gain dump: little-endian IEEE-754 float64, one value per trial, no header.
inline void write_gains_binary(const std::vector<double> &gains, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (double g : gains)
    {
        const auto bits = std::bit_cast<std::uint64_t>(g);
        char bytes[8];
        for (int k = 0; k < 8; ++k)
            bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
        out.write(bytes, 8);
    }
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

// Raw gain dump as CSV: header "gain", one 17-significant-digit value per line.
inline void write_gains_csv(const std::vector<double> &gains, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "gain\n";
    char buf[40];
    for (double g : gains)
    {
        std::snprintf(buf, sizeof buf, "%.17g\n", g);
        out << buf;
    }
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

} // namespace risfas

#endif
