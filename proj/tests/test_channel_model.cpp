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

#include "oracles.hpp"
#include "risfas/channel_model.hpp"
#include "risfas/monte_carlo.hpp"

using namespace risfas;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

system_config with(int m, port_grid grid, double p_dbm = 15.0)
{
    system_config c;
    c.ris_elements = m;
    c.grid = grid;
    c.tx_power_dbm = p_dbm;
    return c;
}

// r at which the marginal CDF sits near Phi(z): (mu_A + z sigma_A)^2 / d~.
double gain_at(const cascade_gain_distribution &d, double z)
{
    const double a = d.mu_a + z * std::sqrt(d.sigma2_a);
    return a * a / d.d_tilde;
}

} // namespace

TEST_CASE("cascade constants", "[channel]")
{
    const auto d100 = clt_params(with(100, {1, 1, 1.0, 1.0}));
    CHECK_THAT(d100.mu_a, WithinRel(78.5398163397448310, 1e-15));
    CHECK_THAT(d100.sigma2_a, WithinRel(38.3149724931915086, 1e-15));
    CHECK(d100.tau == d100.mu_a * d100.mu_a);
    CHECK_THAT(clt_params(with(1, {1, 1, 1.0, 1.0})).mu_a, WithinRel(std::numbers::pi / 4.0, 1e-15));

    const auto d125 = clt_params(with(125, {1, 1, 1.0, 1.0}));
    CHECK_THAT(d125.d_tilde, WithinRel(3.2e16, 1e-14));
    CHECK_THAT(d125.d_tilde, WithinRel(std::pow(2000.0 * 2000.0, 2.5), 1e-14));
    CHECK(d125.amplitude_squared().tau == d125.tau);
}

TEST_CASE("unit conventions", "[channel]")
{
    CHECK_THAT(db_to_linear(30.0), WithinRel(1000.0, 1e-15));
    CHECK_THAT(linear_to_db(db_to_linear(-7.3)), WithinAbs(-7.3, 1e-13));
    const system_config c;
    CHECK_THAT(c.mean_snr(), WithinRel(std::pow(10.0, 13.5), 1e-13)); // 135 dB
    CHECK(c.snr_threshold() == 1.0);
    system_config bad;
    bad.pathloss_exp = 2.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.d_ris_mu_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = {};
    bad.ris_elements = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("marginal gain CDF", "[channel]")
{
    const auto d = clt_params(with(100, {1, 1, 1.0, 1.0}));
    CHECK(marginal_gain_cdf(d, 0.0) == 0.0);
    CHECK(marginal_gain_cdf(d, 1e3 * d.tau / d.d_tilde) == 1.0);
    CHECK_THAT(marginal_gain_cdf(d, d.tau / d.d_tilde), WithinAbs(0.5, 0.02));
    double prev = 0.0;
    for (double z = -8.0; z <= 8.0; z += 0.25)
    {
        const double f = marginal_gain_cdf(d, gain_at(d, z));
        CHECK(f >= prev);
        CHECK_THAT(f, WithinAbs(oracle::ncx2_cdf_quadrature(d.tau, d.sigma2_a, gain_at(d, z) * d.d_tilde), 1e-12));
        prev = f;
    }
    CHECK_THROWS_AS(marginal_gain_cdf(d, -1.0), std::domain_error);
}

TEST_CASE("single port reduces to the marginal", "[channel]")
{
    const auto cfg = with(100, {1, 1, 1.0, 1.0});
    const spatial_correlation one;
    const auto d = clt_params(cfg);
    for (int k = 0; k < 20; ++k)
    {
        const double r = gain_at(d, -4.0 + 0.4 * k);
        const auto f = fas_gain_cdf(cfg, one, r);
        CHECK(f.value == marginal_gain_cdf(d, r));
        CHECK(f.std_error == 0.0);
        const auto p = fas_gain_pdf(cfg, one, r);
        CHECK_THAT(p.value, WithinRel(d.d_tilde * ncx2_pdf(d.amplitude_squared(), r * d.d_tilde), 1e-12));
        CHECK_THAT(p.value, WithinRel(d.d_tilde * oracle::ncx2_pdf_branches(d.tau, d.sigma2_a, r * d.d_tilde), 1e-9));
    }
}

TEST_CASE("best-port CDF basic properties", "[channel]")
{
    const auto cfg = with(100, {2, 2, 1.0, 1.0});
    const auto corr = build_correlation_matrix(cfg.grid);
    const auto d = clt_params(cfg);
    CHECK(fas_gain_cdf(cfg, corr, 0.0).value == 0.0);
    CHECK(fas_gain_cdf(cfg, corr, 1e4 * gain_at(d, 0.0)).value == 1.0);
    double prev = 0.0, prev_se = 0.0;
    for (double z = -4.0; z <= 4.0; z += 0.25)
    {
        const double r = gain_at(d, z);
        const auto f = fas_gain_cdf(cfg, corr, r);
        CHECK(f.value >= prev - 3.0 * std::hypot(f.std_error, prev_se));
        CHECK(f.value <= marginal_gain_cdf(d, r) + 5.0 * f.std_error);
        prev = f.value;
        prev_se = f.std_error;
    }
    CHECK_THROWS_AS(fas_gain_cdf(with(100, {3, 3, 1.0, 1.0}), corr, 1.0), std::invalid_argument);
}

TEST_CASE("more ports at a fixed aperture lower the CDF", "[channel][property]")
{
    for (double z : {-1.0, 0.0, 1.0})
    {
        double prev = 1.0, prev_se = 0.0;
        for (int side : {1, 2, 3})
        {
            const auto cfg = with(125, {side, side, 1.0, 1.0});
            const auto f = fas_gain_cdf(cfg, build_correlation_matrix(cfg.grid), gain_at(clt_params(cfg), z));
            INFO("z " << z << " N " << side * side << " F " << f.value);
            CHECK(f.value <= prev + 5.0 * std::hypot(f.std_error, prev_se));
            prev = f.value;
            prev_se = f.std_error;
        }
    }
}

TEST_CASE("identity correlation gives the independent maximum", "[channel]")
{
    const auto cfg = with(100, {2, 2, 1.0, 1.0});
    const spatial_correlation ind(Eigen::MatrixXd::Identity(4, 4));
    const auto d = clt_params(cfg);
    for (double z : {-2.0, -0.5, 0.7, 2.0})
    {
        const double r = gain_at(d, z);
        const auto f = fas_gain_cdf(cfg, ind, r);
        const double u = marginal_gain_cdf(d, r);
        CHECK(std::abs(f.value - std::pow(u, 4)) <= 5.0 * f.std_error + 1e-13);
    }
}

TEST_CASE("best-port CDF against the simulator at the default operating point", "[channel][mc]")
{
    const auto cfg = with(100, {2, 2, 1.0, 1.0});
    const auto corr = build_correlation_matrix(cfg.grid);
    const auto a = fas_gain_cdf(cfg, corr, cfg.snr_threshold() / cfg.mean_snr());
    mc_run run;
    run.trials = 1'000'000;
    run.seed = 21;
    const auto m = simulate_op(cfg, corr, run);
    // a zero count still has a Wilson half-width, used as the simulator's error
    const double se_mc = std::max(m.std_error(), (m.hi - m.lo) / (2.0 * wilson_z95));
    INFO("analytical " << a.value << " +- " << a.std_error << ", simulated " << m.estimate << " [" << m.lo << ", " << m.hi << "]");
    CHECK(std::abs(a.value - m.estimate) <= 5.0 * std::hypot(a.std_error, se_mc));
}

TEST_CASE("best-port density", "[channel]")
{
    const auto cfg = with(100, {2, 2, 1.0, 1.0});
    const auto corr = build_correlation_matrix(cfg.grid);
    const auto d = clt_params(cfg);
    const double scale = d.tau / d.d_tilde;

    const auto tiny = fas_gain_pdf(cfg, corr, 1e-12 * scale);
    INFO("density near zero " << tiny.value << ", log " << tiny.log_value);
    const double peak = fas_gain_pdf(cfg, corr, gain_at(d, 0.5)).value;
    CHECK(tiny.value < 1e-100 * peak);
    CHECK(tiny.value < marginal_gain_pdf(d, 1e-12 * scale));
    CHECK(fas_gain_pdf(cfg, corr, gain_at(d, -6.0)).value < 1e-6 * fas_gain_pdf(cfg, corr, gain_at(d, 0.5)).value);

    // integral over a probe interval against the CDF increment
    const double lo = gain_at(d, -1.0), hi = gain_at(d, 1.5);
    rqmc_options fine{16384, 16, 3};
    const double mass =
        oracle::integrate([&](double r) { return fas_gain_pdf(cfg, corr, r, fine).value; }, lo, hi, 8);
    const double inc = fas_gain_cdf(cfg, corr, hi, fine).value - fas_gain_cdf(cfg, corr, lo, fine).value;
    INFO("integral " << mass << " increment " << inc);
    CHECK_THAT(mass, WithinAbs(inc, 1e-3));

    // finite difference of the CDF
    const double r0 = gain_at(d, 0.3), h = 1e-3 * r0;
    rqmc_options fixed{65536, 16, 9};
    const double fd = (fas_gain_cdf(cfg, corr, r0 + h, fixed).value - fas_gain_cdf(cfg, corr, r0 - h, fixed).value) / (2 * h);
    CHECK_THAT(fas_gain_pdf(cfg, corr, r0, fixed).value, WithinRel(fd, 1e-2));

    CHECK_THROWS_AS(fas_gain_pdf(cfg, corr, 0.0), std::domain_error);
}

TEST_CASE("joint density on the diagonal differs from the best-port density", "[channel]")
{
    const auto cfg = with(100, {2, 2, 1.0, 1.0});
    const auto corr = build_correlation_matrix(cfg.grid);
    const auto d = clt_params(cfg);
    const double r = gain_at(d, 0.4);
    const double joint = fas_gain_product_form_density(cfg, corr, r);
    CHECK(joint > 0.0);
    CHECK(std::abs(joint - fas_gain_pdf(cfg, corr, r).value) > 0.1 * fas_gain_pdf(cfg, corr, r).value);
    const spatial_correlation one;
    const auto c1 = with(100, {1, 1, 1.0, 1.0});
    CHECK_THAT(fas_gain_product_form_density(c1, one, r), WithinRel(fas_gain_pdf(c1, one, r).value, 1e-14));
}
