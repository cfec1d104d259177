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

#ifndef RISFAS_GAUSSIAN_COPULA_HPP
#define RISFAS_GAUSSIAN_COPULA_HPP

#include "error.hpp"
#include "fas_geometry.hpp"
#include "special_functions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace risfas
{

// Randomized quasi-Monte Carlo settings for multivariate normal CDFs.
struct rqmc_options
{
    int samples = 8192;       // lattice points per randomization
    int randomizations = 16;  // independent random shifts
    std::uint64_t seed = 0;
};

// Estimate with its standard error. log_value is the natural log of value and
// stays finite when value underflows; relative_error = std_error / value.
struct mvn_result
{
    double value = 0.0;
    double std_error = 0.0;
    double log_value = -std::numeric_limits<double>::infinity();
    double relative_error = 0.0;

    static mvn_result exact(double p)
    {
        return {p, 0.0, std::log(p), 0.0};
    }
};

struct mvn_problem
{
    Eigen::MatrixXd correlation;  // positive definite, unit diagonal
    Eigen::VectorXd upper_limits; // +inf drops a coordinate, -inf gives 0
    rqmc_options rqmc;
};

namespace detail
{

inline std::vector<int> first_primes(int count)
{
    std::vector<int> primes;
    for (int c = 2; static_cast<int>(primes.size()) < count; ++c)
    {
        bool is_prime = true;
        for (int p : primes)
        {
            if (p * p > c)
                break;
            if (c % p == 0)
            {
                is_prime = false;
                break;
            }
        }
        if (is_prime)
            primes.push_back(c);
    }
    return primes;
}

// Sequential-conditioning form of the MVN integrand: Cholesky factor of the
// reordered correlation and the matching reordered limits.
struct conditioned_system
{
    Eigen::MatrixXd lower;
    Eigen::VectorXd limits;
};

// Cholesky with Genz-Bretz variable prioritization: at each step the remaining
// variable with the smallest conditional truncation probability goes next.
inline conditioned_system prioritized_cholesky(Eigen::MatrixXd c, Eigen::VectorXd b)
{
    const Eigen::Index d = c.rows();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(d, d);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(d);

    for (Eigen::Index i = 0; i < d; ++i)
    {
        Eigen::Index best = i;
        double best_limit = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = i; j < d; ++j)
        {
            const double var = c(j, j) - l.row(j).head(i).squaredNorm();
            if (var <= 0.0)
                continue;
            const double t = (b(j) - l.row(j).head(i).dot(y.head(i))) / std::sqrt(var);
            if (t < best_limit)
            {
                best_limit = t;
                best = j;
            }
        }
        if (best != i)
        {
            std::swap(b(i), b(best));
            c.row(i).swap(c.row(best));
            c.col(i).swap(c.col(best));
            l.row(i).swap(l.row(best));
        }

        const double pivot = c(i, i) - l.row(i).head(i).squaredNorm();
        if (!(pivot > 1e-15 * c(i, i)))
            throw factorization_error("mvn_cdf: correlation matrix is not positive definite");
        const double lii = std::sqrt(pivot);
        l(i, i) = lii;
        for (Eigen::Index r = i + 1; r < d; ++r)
            l(r, i) = (c(r, i) - l.row(r).head(i).dot(l.row(i).head(i))) / lii;

        // Mean of the truncated standard normal on (-inf, t], used only for ordering.
        const double t = (b(i) - l.row(i).head(i).dot(y.head(i))) / lii;
        y(i) = -std::exp(log_gaussian_pdf(t) - log_gaussian_cdf(t));
    }
    return {std::move(l), std::move(b)};
}

// log of the conditioning integrand at one point w of [0,1]^{d-1}.
inline double log_integrand(const conditioned_system &sys, std::span<const double> w, std::span<double> y)
{
    const Eigen::Index d = sys.lower.rows();
    double product = 1.0;
    double log_acc = 0.0;
    constexpr double tiny = 0x1p-53;

    for (Eigen::Index i = 0; i < d; ++i)
    {
        double s = 0.0;
        for (Eigen::Index k = 0; k < i; ++k)
            s += sys.lower(i, k) * y[k];
        const double t = (sys.limits(i) - s) / sys.lower(i, i);
        const double e = gaussian_cdf(t);
        double log_e = 0.0;
        if (e > 1e-290)
        {
            product *= e;
            if (product < 1e-250)
            {
                log_acc += std::log(product);
                product = 1.0;
            }
        }
        else
        {
            log_e = log_gaussian_cdf(t);
            log_acc += log_e;
        }
        if (i + 1 < d)
        {
            const double wi = std::clamp(w[i], tiny, 1.0 - tiny);
            y[i] = e > 1e-290 ? gaussian_quantile(std::max(wi * e, std::numeric_limits<double>::min()))
                              : gaussian_quantile_from_log(std::log(wi) + log_e);
        }
    }
    return log_acc + std::log(product);
}

inline double log_sum_exp(std::span<const double> v)
{
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m))
        return m;
    double s = 0.0;
    for (double x : v)
        s += std::exp(x - m);
    return m + std::log(s);
}

} // namespace detail

// Multivariate normal CDF P(X <= b), X ~ N(0, C), by sequential conditioning on a
// prioritized Cholesky factor, integrated with randomly shifted Kronecker lattice
// points (generators frac(sqrt(p)) for successive primes p) under the baker's
// transform. std_error is the spread across randomizations over sqrt(count).
inline mvn_result mvn_cdf(const mvn_problem &problem)
{
    const auto &c = problem.correlation;
    const auto &b = problem.upper_limits;
    if (c.rows() != c.cols() || c.rows() != b.size() || b.size() < 1)
        throw std::invalid_argument("mvn_cdf: correlation and limit dimensions disagree");
    if (problem.rqmc.samples < 128)
        throw std::invalid_argument("mvn_cdf: need at least 128 samples per randomization");
    if (problem.rqmc.randomizations < 8)
        throw std::invalid_argument("mvn_cdf: need at least 8 randomizations");

    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < b.size(); ++i)
    {
        if (std::isnan(b(i)))
            throw std::invalid_argument("mvn_cdf: NaN limit");
        if (b(i) == -std::numeric_limits<double>::infinity())
            return {0.0, 0.0, -std::numeric_limits<double>::infinity(), 0.0};
        if (b(i) != std::numeric_limits<double>::infinity())
            keep.push_back(i);
    }
    const auto d = static_cast<Eigen::Index>(keep.size());
    if (d == 0)
        return mvn_result::exact(1.0);
    if (d == 1)
    {
        const double t = b(keep[0]) / std::sqrt(c(keep[0], keep[0]));
        const double lv = log_gaussian_cdf(t);
        return {gaussian_cdf(t), 0.0, lv, 0.0};
    }

    Eigen::MatrixXd sub(d, d);
    Eigen::VectorXd lim(d);
    for (Eigen::Index i = 0; i < d; ++i)
    {
        lim(i) = b(keep[i]);
        for (Eigen::Index j = 0; j < d; ++j)
            sub(i, j) = c(keep[i], keep[j]);
    }
    const auto sys = detail::prioritized_cholesky(std::move(sub), std::move(lim));

    const auto dims = static_cast<std::size_t>(d - 1);
    std::vector<double> generator(dims);
    {
        const auto primes = detail::first_primes(static_cast<int>(dims));
        for (std::size_t j = 0; j < dims; ++j)
        {
            const double r = std::sqrt(static_cast<double>(primes[j]));
            generator[j] = r - std::floor(r);
        }
    }

    std::mt19937_64 rng(problem.rqmc.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = problem.rqmc.samples;
    const int k_rand = problem.rqmc.randomizations;

    std::vector<double> shift(dims), w(dims), y(dims), log_f(n), log_means(k_rand);
    for (int k = 0; k < k_rand; ++k)
    {
        for (auto &s : shift)
            s = unit(rng);
        for (int i = 0; i < n; ++i)
        {
            const double idx = static_cast<double>(i + 1);
            for (std::size_t j = 0; j < dims; ++j)
            {
                double x = idx * generator[j] + shift[j];
                x -= std::floor(x);
                w[j] = 1.0 - std::abs(2.0 * x - 1.0);
            }
            log_f[i] = detail::log_integrand(sys, w, y);
        }
        log_means[k] = detail::log_sum_exp(log_f) - std::log(static_cast<double>(n));
    }

    mvn_result out;
    out.log_value = detail::log_sum_exp(log_means) - std::log(static_cast<double>(k_rand));
    if (!std::isfinite(out.log_value))
        return {0.0, 0.0, out.log_value, 0.0};
    double ss = 0.0;
    for (double lm : log_means)
    {
        const double r = std::exp(lm - out.log_value) - 1.0;
        ss += r * r;
    }
    out.relative_error = std::sqrt(ss / (k_rand * (k_rand - 1.0)));
    out.value = std::exp(out.log_value);
    out.std_error = out.value * out.relative_error;
    return out;
}

// Limit-case check: all pairwise correlations 1 - 1e-9, limits (t, ..., t).
// The estimate should approach Phi(t).
inline mvn_result mvn_cdf_comonotone_check(double t, int n, const rqmc_options &rqmc = {})
{
    if (n < 1)
        throw std::invalid_argument("mvn_cdf_comonotone_check: n must be >= 1");
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(n, n, 1.0 - 1e-9);
    c.diagonal().setOnes();
    const spatial_correlation reg(c);
    return mvn_cdf({reg.matrix(), Eigen::VectorXd::Constant(n, t), rqmc});
}

// Gaussian copula C_R(u_1, ..., u_n) = Phi_R(Phi^{-1}(u_1), ..., Phi^{-1}(u_n)).
// The quantile is evaluated directly rather than as sqrt(2) erf^{-1}(2u - 1), which
// is the same function without the cancellation near u = 0. Margins at 1 are
// dropped; a single remaining margin returns u exactly.
inline mvn_result copula_cdf(const Eigen::MatrixXd &correlation, std::span<const double> u, const rqmc_options &rqmc = {})
{
    if (static_cast<Eigen::Index>(u.size()) != correlation.rows())
        throw std::invalid_argument("copula_cdf: margin count does not match correlation size");
    std::vector<Eigen::Index> keep;
    for (std::size_t i = 0; i < u.size(); ++i)
    {
        if (!(u[i] >= 0.0 && u[i] <= 1.0))
            throw std::domain_error("copula_cdf: margins must lie in [0,1]");
        if (u[i] == 0.0)
            return {0.0, 0.0, -std::numeric_limits<double>::infinity(), 0.0};
        if (u[i] < 1.0)
            keep.push_back(static_cast<Eigen::Index>(i));
    }
    if (keep.empty())
        return mvn_result::exact(1.0);
    if (keep.size() == 1)
        return mvn_result::exact(u[static_cast<std::size_t>(keep[0])]);

    const auto d = static_cast<Eigen::Index>(keep.size());
    mvn_problem problem{Eigen::MatrixXd(d, d), Eigen::VectorXd(d), rqmc};
    for (Eigen::Index i = 0; i < d; ++i)
    {
        problem.upper_limits(i) = gaussian_quantile(u[static_cast<std::size_t>(keep[i])]);
        for (Eigen::Index j = 0; j < d; ++j)
            problem.correlation(i, j) = correlation(keep[i], keep[j]);
    }
    return mvn_cdf(problem);
}

inline mvn_result copula_cdf(const spatial_correlation &correlation, std::span<const double> u,
                             const rqmc_options &rqmc = {})
{
    return copula_cdf(correlation.matrix(), u, rqmc);
}

// log c_R(u) = -q^T (R^{-1} - I) q / 2 - log det(R) / 2 with q = Phi^{-1}(u).
inline double copula_log_density(const spatial_correlation &correlation, std::span<const double> u)
{
    const int n = correlation.size();
    if (static_cast<int>(u.size()) != n)
        throw std::invalid_argument("copula_density: margin count does not match correlation size");
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i)
    {
        if (!(u[static_cast<std::size_t>(i)] > 0.0 && u[static_cast<std::size_t>(i)] < 1.0))
            throw std::domain_error("copula_density: margins must lie in (0,1)");
        q(i) = gaussian_quantile(u[static_cast<std::size_t>(i)]);
    }
    const Eigen::VectorXd v = correlation.cholesky_lower().triangularView<Eigen::Lower>().solve(q);
    return -0.5 * (v.squaredNorm() - q.squaredNorm()) - 0.5 * correlation.log_det();
}

inline double copula_density(const spatial_correlation &correlation, std::span<const double> u)
{
    return std::exp(copula_log_density(correlation, u));
}

} // namespace risfas

#endif
