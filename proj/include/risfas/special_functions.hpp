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

#ifndef RISFAS_SPECIAL_FUNCTIONS_HPP
#define RISFAS_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace risfas
{

// Standard normal density.
inline double gaussian_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

inline double log_gaussian_pdf(double x)
{
    return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

// Standard normal CDF Phi(x). erfc keeps full relative accuracy in the lower tail.
inline double gaussian_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Upper tail Q(x) = 1 - Phi(x).
inline double gaussian_tail(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

// log Phi(x), finite for every finite x. Below -30 the asymptotic Mills-ratio
// series is used since Phi underflows near -38.
inline double log_gaussian_cdf(double x)
{
    if (x > 0.0)
        return std::log1p(-gaussian_tail(x));
    if (x > -30.0)
        return std::log(gaussian_cdf(x));
    const double z = 1.0 / (x * x);
    const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z * (1.0 - 9.0 * z))));
    return log_gaussian_pdf(x) - std::log(-x) + std::log(series);
}

namespace detail
{

// Wichura's AS 241 (PPND16) for p in (0, 0.5], refined by one Halley step on erfc.
inline double lower_quantile(double p)
{
    const double q = p - 0.5;
    double x;
    if (std::abs(q) <= 0.425)
    {
        const double r = 0.180625 - q * q;
        x = q *
            (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                 45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
              133.14166789178437745) * r + 3.387132872796366608) /
            (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                 21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
              42.313330701600911252) * r + 1.0);
    }
    else
    {
        double r = std::sqrt(-std::log(p));
        if (r <= 5.0)
        {
            r -= 1.6;
            x = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                     1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
                  4.6303378461565452959) * r + 1.42343711074968357734) /
                (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                     0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
                  2.05319162663775882187) * r + 1.0);
        }
        else
        {
            r -= 5.0;
            x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                     0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
                  5.4637849111641143699) * r + 6.6579046435011037772) /
                (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                     7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                  0.59983220655588793769) * r + 1.0);
        }
        x = -x;
    }
    // Halley refinement; the residual is relative to p so the deep tail stays accurate.
    const double e = gaussian_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

} // namespace detail

// Standard normal quantile Phi^{-1}(p). Returns -inf/+inf at p = 0/1.
inline double gaussian_quantile(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("gaussian_quantile: p must lie in [0,1]");
    if (p == 0.0)
        return -std::numeric_limits<double>::infinity();
    if (p == 1.0)
        return std::numeric_limits<double>::infinity();
    if (p <= 0.5)
        return detail::lower_quantile(p);
    return -detail::lower_quantile(1.0 - p); // 1 - p is exact for p in [0.5, 1]
}

// Phi^{-1}(exp(log_p)) for log_p <= 0, usable when exp(log_p) underflows.
inline double gaussian_quantile_from_log(double log_p)
{
    if (!(log_p <= 0.0))
        throw std::domain_error("gaussian_quantile_from_log: log_p must be <= 0");
    if (log_p > -700.0)
        return gaussian_quantile(std::exp(log_p));
    double x = -std::sqrt(-2.0 * log_p);
    for (int it = 0; it < 50; ++it)
    {
        // Newton on log Phi: d/dx log Phi(x) = phi(x) / Phi(x)
        const double lc = log_gaussian_cdf(x);
        const double step = (lc - log_p) * std::exp(lc - log_gaussian_pdf(x));
        x -= step;
        if (std::abs(step) <= 1e-15 * std::abs(x))
            break;
    }
    return x;
}

// Inverse error function on (-1, 1).
inline double inverse_erf(double y)
{
    if (!(std::abs(y) < 1.0))
        throw std::domain_error("inverse_erf: |y| must be < 1");
    if (y == 0.0)
        return y;
    const double ay = std::abs(y);
    const double two_over_sqrt_pi = 2.0 / std::sqrt(std::numbers::pi);
    double x;
    if (ay <= 0.5)
    {
        // Newton on erf; start from the quantile or the linear term for tiny y.
        x = std::max(detail::lower_quantile(0.5 * (1.0 - ay)) / -std::numbers::sqrt2, ay / two_over_sqrt_pi);
        for (int it = 0; it < 3; ++it)
            x -= (std::erf(x) - ay) / (two_over_sqrt_pi * std::exp(-x * x));
    }
    else
    {
        const double c = 1.0 - ay; // exact
        x = -detail::lower_quantile(0.5 * c) / std::numbers::sqrt2;
        for (int it = 0; it < 2; ++it)
            x += (std::erfc(x) - c) / (two_over_sqrt_pi * std::exp(-x * x));
    }
    return y < 0.0 ? -x : x;
}

// Marcum Q-function of order 1/2. Uses Q_{1/2}(a,b) = Q(b-a) + Q(b+a).
inline double marcum_q_half(double a, double b)
{
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::domain_error("marcum_q_half: arguments must be nonnegative");
    return std::min(1.0, gaussian_tail(b - a) + gaussian_tail(b + a));
}

// Result of a log-scaled evaluation: value = sign * exp(log_magnitude).
struct log_scaled
{
    double log_magnitude;
    int sign;
};

// log I_{-1/2}(z) for z > 0, valid for arguments where cosh overflows.
inline log_scaled log_bessel_i_neg_half(double z)
{
    if (!(z > 0.0))
        throw std::domain_error("log_bessel_i_neg_half: z must be > 0");
    // I_{-1/2}(z) = sqrt(2 / (pi z)) cosh(z)
    const double log_cosh = z + std::log1p(std::exp(-2.0 * z)) - std::numbers::ln2;
    return {0.5 * std::log(2.0 / (std::numbers::pi * z)) + log_cosh, 1};
}

// Modified Bessel function I_{-1/2}(z) for 0 < z <= 700. Larger arguments overflow
// double; use log_bessel_i_neg_half there.
inline double bessel_i_neg_half(double z)
{
    if (!(z > 0.0))
        throw std::domain_error("bessel_i_neg_half: z must be > 0");
    if (z > 700.0)
        throw std::overflow_error("bessel_i_neg_half: z > 700, use log_bessel_i_neg_half");
    return std::sqrt(2.0 / (std::numbers::pi * z)) * std::cosh(z);
}

// Distribution of (sigma * Z + sqrt(tau))^2 with Z standard normal, i.e. a
// scaled non-central chi-square with one degree of freedom.
struct noncentral_chi_sq1
{
    double tau;    // non-centrality
    double sigma2; // scale variance

    noncentral_chi_sq1(double tau_, double sigma2_) : tau(tau_), sigma2(sigma2_)
    {
        if (!(tau >= 0.0) || !std::isfinite(tau))
            throw std::domain_error("noncentral_chi_sq1: tau must be finite and >= 0");
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw std::domain_error("noncentral_chi_sq1: sigma2 must be finite and > 0");
    }
};

// F(x) = 1 - Q_{1/2}(sqrt(tau/sigma2), sqrt(x/sigma2)).
// Evaluated as Phi(b-a) - Phi(-b-a), which avoids cancellation in the lower tail.
inline double ncx2_cdf(const noncentral_chi_sq1 &dist, double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("ncx2_cdf: x must be >= 0");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    const double a = std::sqrt(dist.tau / dist.sigma2);
    const double b = std::sqrt(x / dist.sigma2);
    return std::max(0.0, gaussian_cdf(b - a) - gaussian_cdf(-b - a));
}

// Survival function 1 - F(x) = Q_{1/2}(a, b).
inline double ncx2_sf(const noncentral_chi_sq1 &dist, double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("ncx2_sf: x must be >= 0");
    return marcum_q_half(std::sqrt(dist.tau / dist.sigma2), std::sqrt(x / dist.sigma2));
}

// log density. For tau > 0:
//   f(x) = 1/(2 s2) (x/tau)^{-1/4} exp(-(x+tau)/(2 s2)) I_{-1/2}(sqrt(x tau)/s2)
// For tau = 0 the central limit 1/sqrt(2 pi s2 x) exp(-x/(2 s2)) is used.
inline double ncx2_log_pdf(const noncentral_chi_sq1 &dist, double x)
{
    if (!(x > 0.0))
        throw std::domain_error("ncx2_pdf: x must be > 0");
    const double s2 = dist.sigma2;
    if (dist.tau == 0.0)
        return -0.5 * std::log(2.0 * std::numbers::pi * s2 * x) - x / (2.0 * s2);
    const auto bessel = log_bessel_i_neg_half(std::sqrt(x * dist.tau) / s2);
    return -std::log(2.0 * s2) - 0.25 * std::log(x / dist.tau) - (x + dist.tau) / (2.0 * s2) + bessel.log_magnitude;
}

inline double ncx2_pdf(const noncentral_chi_sq1 &dist, double x)
{
    return std::exp(ncx2_log_pdf(dist, x));
}

} // namespace risfas

#endif
