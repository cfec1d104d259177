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
#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "risfas/gaussian_copula.hpp"

using namespace risfas;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

Eigen::MatrixXd equicorrelated(int n, double rho)
{
    Eigen::MatrixXd c = Eigen::MatrixXd::Constant(n, n, rho);
    c.diagonal().setOnes();
    return c;
}

Eigen::MatrixXd two_by_two(double rho) { return equicorrelated(2, rho); }

// Floating point slack on top of k standard errors; with R = I the estimator is
// exact and its standard error is zero.
bool within_se(const mvn_result &r, double target, double k)
{
    return std::abs(r.value - target) <= k * r.std_error + 1e-13 * std::max(target, 1e-300);
}

} // namespace

TEST_CASE("mvn_cdf trivial cases", "[copula]")
{
    const auto one = mvn_cdf({Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1), {}});
    CHECK(one.value == 0.5);
    CHECK(one.std_error == 0.0);

    const auto ind = mvn_cdf({Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), {}});
    CHECK(within_se(ind, 0.25, 5.0));
    CHECK(ind.std_error >= 0.0);

    Eigen::VectorXd lim(3);
    lim << 0.3, std::numeric_limits<double>::infinity(), -0.2;
    const auto dropped = mvn_cdf({equicorrelated(3, 0.4), lim, {}});
    const auto two = mvn_cdf({two_by_two(0.4), Eigen::Vector2d(0.3, -0.2), {}});
    CHECK(dropped.value == two.value);
    lim(1) = -std::numeric_limits<double>::infinity();
    CHECK(mvn_cdf({equicorrelated(3, 0.4), lim, {}}).value == 0.0);
}

TEST_CASE("bivariate orthant against the arcsine law", "[copula]")
{
    const auto half = mvn_cdf({two_by_two(0.5), Eigen::Vector2d::Zero(), {}});
    CHECK(within_se(half, 1.0 / 3.0, 5.0));
    CHECK_THAT(oracle::bivariate_cdf(0.0, 0.0, 0.5), WithinAbs(1.0 / 3.0, 1e-13));
    for (int k = -9; k <= 9; ++k)
    {
        const double rho = 0.1 * k;
        const auto r = mvn_cdf({two_by_two(rho), Eigen::Vector2d::Zero(), {}});
        INFO("rho " << rho << " value " << r.value << " se " << r.std_error);
        CHECK(within_se(r, 0.25 + std::asin(rho) / (2.0 * std::numbers::pi), 5.0));
    }
}

TEST_CASE("bivariate off-origin against quadrature", "[copula]")
{
    for (auto [h, k, rho] : {std::tuple{0.3, -0.7, 0.6}, {-2.0, -1.5, 0.9}, {1.2, 0.4, -0.8}, {-4.0, -4.0, 0.95}})
    {
        const auto r = mvn_cdf({two_by_two(rho), Eigen::Vector2d(h, k), {}});
        const double ref = oracle::bivariate_cdf(h, k, rho);
        INFO("h " << h << " k " << k << " rho " << rho << " value " << r.value << " ref " << ref);
        CHECK(within_se(r, ref, 5.0));
        CHECK_THAT(r.value, WithinRel(ref, 1e-3));
    }
}

TEST_CASE("independent coordinates give the product of margins", "[copula]")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n : {2, 5, 25})
    {
        Eigen::VectorXd lim(n);
        double prod = 1.0;
        for (int i = 0; i < n; ++i)
        {
            lim(i) = u(rng);
            prod *= oracle::Phi(lim(i));
        }
        const auto r = mvn_cdf({Eigen::MatrixXd::Identity(n, n), lim, {}});
        INFO("n " << n << " value " << r.value << " product " << prod);
        CHECK(within_se(r, prod, 5.0));
    }
}

TEST_CASE("near-comonotone limit approaches the univariate CDF", "[copula]")
{
    for (auto [t, n] : {std::pair{0.0, 5}, {1.0, 10}, {-1.0, 25}})
    {
        const auto r = mvn_cdf_comonotone_check(t, n);
        INFO("t " << t << " n " << n << " value " << r.value << " se " << r.std_error);
        CHECK(within_se(r, oracle::Phi(t), 5.0));
    }
}

TEST_CASE("equicorrelated CDF against one-dimensional quadrature", "[copula]")
{
    for (auto [t, n, rho] : {std::tuple{0.0, 5, 1.0 - 1e-9}, {1.0, 10, 1.0 - 1e-9}, {-1.0, 25, 1.0 - 1e-9},
                             {-1.0, 25, 0.5}, {0.5, 8, 0.9}, {-2.5, 16, 0.3}})
    {
        const spatial_correlation reg(equicorrelated(n, rho));
        const auto r = mvn_cdf({reg.matrix(), Eigen::VectorXd::Constant(n, t), {}});
        const double rho_eff = reg.matrix()(0, 1);
        const double ref = oracle::equicorrelated_cdf(t, n, rho_eff);
        INFO("t " << t << " n " << n << " rho " << rho_eff << " value " << r.value << " ref " << ref << " se "
                  << r.std_error);
        CHECK(within_se(r, ref, 5.0));
    }
}

TEST_CASE("mvn_cdf is monotone in each limit", "[copula][property]")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.5, 1.5), step(0.0, 0.5);
    const Eigen::MatrixXd c = equicorrelated(6, 0.35);
    for (int trial = 0; trial < 10; ++trial)
    {
        Eigen::VectorXd lo(6);
        for (int i = 0; i < 6; ++i)
            lo(i) = u(rng);
        Eigen::VectorXd hi = lo;
        hi(trial % 6) += step(rng);
        rqmc_options o;
        o.seed = static_cast<std::uint64_t>(trial);
        const auto a = mvn_cdf({c, lo, o});
        o.seed += 1000;
        const auto b = mvn_cdf({c, hi, o});
        CHECK(b.value >= a.value - 3.0 * std::hypot(a.std_error, b.std_error));
    }
}

TEST_CASE("standard error shrinks with more lattice points", "[copula][property]")
{
    Eigen::MatrixXd c = equicorrelated(8, 0.6);
    const Eigen::VectorXd lim = Eigen::VectorXd::LinSpaced(8, -0.5, 0.9);
    double se1 = 0.0, se4 = 0.0;
    for (int rep = 0; rep < 20; ++rep)
    {
        rqmc_options small{1024, 16, static_cast<std::uint64_t>(rep)};
        rqmc_options large{4096, 16, static_cast<std::uint64_t>(rep)};
        se1 += mvn_cdf({c, lim, small}).std_error;
        se4 += mvn_cdf({c, lim, large}).std_error;
    }
    INFO("mean se at 1x " << se1 / 20 << ", at 4x " << se4 / 20);
    CHECK(se4 <= 0.6 * se1);
}

TEST_CASE("mvn_cdf is reproducible and validates its options", "[copula]")
{
    const Eigen::MatrixXd c = equicorrelated(7, 0.5);
    const Eigen::VectorXd lim = Eigen::VectorXd::Constant(7, 0.2);
    const auto a = mvn_cdf({c, lim, {8192, 16, 42}});
    const auto b = mvn_cdf({c, lim, {8192, 16, 42}});
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto d = mvn_cdf({c, lim, {8192, 16, 43}});
    CHECK(d.value != a.value);
    CHECK(std::abs(d.value - a.value) < 5.0 * std::hypot(a.std_error, d.std_error));
    CHECK_THROWS_AS(mvn_cdf({c, lim, {64, 16, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(mvn_cdf({c, lim, {8192, 4, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(mvn_cdf({c, Eigen::VectorXd::Zero(3), {}}), std::invalid_argument);
    CHECK_THROWS_AS(mvn_cdf({Eigen::MatrixXd::Ones(3, 3), Eigen::VectorXd::Zero(3), {}}), factorization_error);
}

TEST_CASE("deep tail keeps a finite logarithm", "[copula]")
{
    const Eigen::MatrixXd c = equicorrelated(10, 0.3);
    const auto r = mvn_cdf({c, Eigen::VectorXd::Constant(10, -12.0), {}});
    CHECK(std::isfinite(r.log_value));
    CHECK(r.value < 1e-90);
    const double ref = oracle::log_equicorrelated_cdf(-12.0, 10, 0.3);
    INFO("log value " << r.log_value << " reference " << ref << " relative error " << r.relative_error);
    CHECK(std::abs(std::expm1(r.log_value - ref)) <= 5.0 * r.relative_error + 1e-12);
    CHECK(r.log_value >= 10.0 * std::log(oracle::Phi(-12.0)));
}

TEST_CASE("copula_cdf boundary behaviour", "[copula]")
{
    const spatial_correlation c(equicorrelated(3, 0.7));
    CHECK(copula_cdf(c, std::vector<double>{0.3, 0.0, 0.9}).value == 0.0);
    const spatial_correlation one;
    CHECK(copula_cdf(one, std::vector<double>{0.7}).value == 0.7);
    const spatial_correlation ind(Eigen::MatrixXd::Identity(2, 2));
    CHECK(within_se(copula_cdf(ind, std::vector<double>{0.5, 0.5}), 0.25, 5.0));
    CHECK(copula_cdf(c, std::vector<double>{1.0, 0.4, 1.0}).value == 0.4);
    CHECK(copula_cdf(c, std::vector<double>{1.0, 1.0, 1.0}).value == 1.0);

    const auto reduced = copula_cdf(c, std::vector<double>{0.3, 1.0, 0.6});
    const auto pair = copula_cdf(c.matrix().block(0, 0, 2, 2), std::vector<double>{0.3, 0.6});
    CHECK(reduced.value == pair.value);
    CHECK_THROWS_AS(copula_cdf(c, std::vector<double>{0.3, 1.2, 0.6}), std::domain_error);
    CHECK_THROWS_AS(copula_cdf(c, std::vector<double>{0.3, 0.6}), std::invalid_argument);
}

TEST_CASE("copula_cdf is nondecreasing along the diagonal", "[copula][property]")
{
    const auto c = spatial_correlation(equicorrelated(5, 0.45));
    double prev = 0.0, prev_se = 0.0;
    for (double u = 0.05; u < 1.0; u += 0.05)
    {
        const auto r = copula_cdf(c, std::vector<double>(5, u));
        CHECK(r.value >= prev - 3.0 * std::hypot(r.std_error, prev_se));
        CHECK(r.value <= u + 5.0 * r.std_error);
        CHECK(r.value >= std::pow(u, 5) - 5.0 * r.std_error);
        prev = r.value;
        prev_se = r.std_error;
    }
}

TEST_CASE("copula_density", "[copula]")
{
    const spatial_correlation ind(Eigen::MatrixXd::Identity(4, 4));
    for (double u : {0.01, 0.3, 0.77})
        CHECK_THAT(copula_density(ind, std::vector<double>(4, u)), WithinRel(1.0, 1e-14));

    const spatial_correlation half(two_by_two(0.5));
    CHECK_THAT(copula_density(half, std::vector<double>{0.5, 0.5}), WithinRel(1.154700538379251529, 1e-14));

    const spatial_correlation strong(two_by_two(0.9));
    const double anti = copula_density(strong, std::vector<double>{0.9, 0.1});
    CHECK(anti > 0.0);
    CHECK(anti < 1.0);

    for (auto [u1, u2, rho] : {std::tuple{0.9, 0.1, 0.9}, {0.2, 0.35, -0.4}, {0.999, 0.98, 0.7}})
    {
        const spatial_correlation c(two_by_two(rho));
        const double x = oracle::gaussian_quantile_ref(u1), y = oracle::gaussian_quantile_ref(u2);
        const double ref = oracle::bivariate_pdf(x, y, rho) / (oracle::phi(x) * oracle::phi(y));
        CHECK_THAT(copula_density(c, std::vector<double>{u1, u2}), WithinRel(ref, 1e-10));
    }
    CHECK_THROWS_AS(copula_density(half, std::vector<double>{0.0, 0.5}), std::domain_error);
}
