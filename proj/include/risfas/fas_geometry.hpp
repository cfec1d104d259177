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

#ifndef RISFAS_FAS_GEOMETRY_HPP
#define RISFAS_FAS_GEOMETRY_HPP

#include "error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace risfas
{

// Planar fluid antenna: n1 x n2 ports spread uniformly over w1 x w2 wavelengths.
// Port indices are 1-based, mapped row-major: n = (i1 - 1) * n2 + i2.
struct port_grid
{
    int n1 = 1;
    int n2 = 1;
    double w1 = 0.0; // wavelengths
    double w2 = 0.0; // wavelengths

    int size() const { return n1 * n2; }

    void validate() const
    {
        if (n1 < 1 || n2 < 1)
            throw std::invalid_argument("port_grid: port counts must be >= 1");
        if (!(w1 >= 0.0) || !(w2 >= 0.0) || !std::isfinite(w1) || !std::isfinite(w2))
            throw std::invalid_argument("port_grid: aperture sizes must be finite and >= 0");
        if ((n1 > 1 && w1 <= 0.0) || (n2 > 1 && w2 <= 0.0))
            throw std::invalid_argument("port_grid: an axis with several ports needs a positive size");
    }

    // Axis offsets in wavelengths between ports whose indices differ by d1, d2.
    // A single-port axis contributes no offset.
    double axis1_offset(int d1) const { return n1 > 1 ? std::abs(d1) * w1 / (n1 - 1) : 0.0; }
    double axis2_offset(int d2) const { return n2 > 1 ? std::abs(d2) * w2 / (n2 - 1) : 0.0; }
};

inline int map_index(const port_grid &grid, int i1, int i2)
{
    if (i1 < 1 || i1 > grid.n1 || i2 < 1 || i2 > grid.n2)
        throw std::out_of_range("map_index: 2D port index out of range");
    return (i1 - 1) * grid.n2 + i2;
}

inline std::pair<int, int> unmap_index(const port_grid &grid, int n)
{
    if (n < 1 || n > grid.size())
        throw std::out_of_range("unmap_index: port index out of range");
    return {(n - 1) / grid.n2 + 1, (n - 1) % grid.n2 + 1};
}

// Normalized sinc, sin(pi t) / (pi t).
inline double sinc(double t)
{
    if (t == 0.0)
        return 1.0;
    const double x = std::numbers::pi * t;
    return std::sin(x) / x;
}

// Half-space isotropic scattering correlation between ports n and m (1-based):
// sinc(2 d / lambda) with d the port separation.
inline double port_correlation(const port_grid &grid, int n, int m)
{
    const auto [a1, a2] = unmap_index(grid, n);
    const auto [b1, b2] = unmap_index(grid, m);
    if (n == m)
        return 1.0;
    const double d1 = grid.axis1_offset(a1 - b1);
    const double d2 = grid.axis2_offset(a2 - b2);
    return sinc(2.0 * std::sqrt(d1 * d1 + d2 * d2));
}

// Port correlation matrix with its regularized, factorized form.
//
// The regularized matrix is R' = (1 - delta) R + delta I with eigenvalues below
// floor = eigen_floor_rel * lambda_max raised to the floor and the result rescaled
// to unit diagonal. When no eigenvalue falls below the floor R' is left untouched.
class spatial_correlation
{
public:
    static constexpr double default_eigen_floor_rel = 1e-10;

    spatial_correlation() : spatial_correlation(Eigen::MatrixXd::Identity(1, 1)) {}

    explicit spatial_correlation(Eigen::MatrixXd raw, double delta = 0.0,
                                 double eigen_floor_rel = default_eigen_floor_rel)
        : raw_(std::move(raw)), delta_(delta)
    {
        if (raw_.rows() < 1 || raw_.rows() != raw_.cols())
            throw std::invalid_argument("spatial_correlation: matrix must be square and non-empty");
        if (!(delta >= 0.0 && delta < 1.0))
            throw std::invalid_argument("spatial_correlation: delta must lie in [0,1)");
        if (!(eigen_floor_rel >= 0.0))
            throw std::invalid_argument("spatial_correlation: eigen floor must be >= 0");

        const Eigen::Index n = raw_.rows();
        regularized_ = (1.0 - delta) * raw_ + delta * Eigen::MatrixXd::Identity(n, n);
        regularized_ = 0.5 * (regularized_ + regularized_.transpose());

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(regularized_);
        if (eig.info() != Eigen::Success)
            throw factorization_error("spatial_correlation: eigendecomposition failed");
        raw_min_eigenvalue_ = eig.eigenvalues().minCoeff();
        eigen_floor_ = eigen_floor_rel * eig.eigenvalues().maxCoeff();
        if (raw_min_eigenvalue_ < eigen_floor_)
        {
            Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(eigen_floor_);
            Eigen::MatrixXd clipped = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
            Eigen::VectorXd inv_sd = clipped.diagonal().cwiseSqrt().cwiseInverse();
            regularized_ = inv_sd.asDiagonal() * clipped * inv_sd.asDiagonal();
            regularized_ = 0.5 * (regularized_ + regularized_.transpose());
            regularized_.diagonal().setOnes();
        }

        llt_.compute(regularized_);
        if (llt_.info() != Eigen::Success)
            throw factorization_error("spatial_correlation: regularized matrix is not positive definite");
        lower_ = llt_.matrixL();
        log_det_ = 2.0 * lower_.diagonal().array().log().sum();
    }

    int size() const { return static_cast<int>(raw_.rows()); }

    // Matrix as built, before regularization.
    const Eigen::MatrixXd &raw() const { return raw_; }
    // Positive definite matrix used by all downstream computations.
    const Eigen::MatrixXd &matrix() const { return regularized_; }
    // Lower Cholesky factor of matrix().
    const Eigen::MatrixXd &cholesky_lower() const { return lower_; }

    double delta() const { return delta_; }
    double eigen_floor() const { return eigen_floor_; }
    double raw_min_eigenvalue() const { return raw_min_eigenvalue_; }
    double log_det() const { return log_det_; }

    // x = matrix()^{-1} b via the Cholesky factor.
    Eigen::VectorXd solve(const Eigen::VectorXd &b) const { return llt_.solve(b); }

private:
    Eigen::MatrixXd raw_;
    Eigen::MatrixXd regularized_;
    Eigen::MatrixXd lower_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double delta_ = 0.0;
    double eigen_floor_ = 0.0;
    double raw_min_eigenvalue_ = 1.0;
    double log_det_ = 0.0;
};

inline Eigen::MatrixXd correlation_matrix(const port_grid &grid)
{
    grid.validate();
    const int n = grid.size();
    Eigen::MatrixXd r(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            r(i - 1, j - 1) = r(j - 1, i - 1) = port_correlation(grid, i, j);
    return r;
}

inline spatial_correlation build_correlation_matrix(const port_grid &grid, double delta = 0.0,
                                                    double eigen_floor_rel = spatial_correlation::default_eigen_floor_rel)
{
    return spatial_correlation(correlation_matrix(grid), delta, eigen_floor_rel);
}

// Monte Carlo estimate of E{exp(j k(w,v)^T (r_n - r_m))} under half-space
// isotropic scattering, f(w, v) = cos(v) / (2 pi) on [-pi/2, pi/2]^2.
struct correlation_estimate
{
    Eigen::MatrixXd real;      // converges to the sinc correlation
    Eigen::MatrixXd imag;      // converges to zero
    Eigen::MatrixXd std_error; // standard error of each real-part entry
    std::int64_t samples = 0;
};

inline correlation_estimate validate_correlation_mc(const port_grid &grid, std::int64_t samples, std::uint64_t seed)
{
    grid.validate();
    if (samples < 10000)
        throw std::invalid_argument("validate_correlation_mc: need at least 1e4 samples");

    const int n = grid.size();
    // Port positions (y, z) in wavelengths; x = 0 on the antenna plane.
    Eigen::VectorXd py(n), pz(n);
    for (int p = 1; p <= n; ++p)
    {
        const auto [i1, i2] = unmap_index(grid, p);
        py(p - 1) = grid.axis2_offset(i2 - 1);
        pz(p - 1) = grid.axis1_offset(i1 - 1);
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> azimuth(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    std::uniform_real_distribution<double> sine_elevation(-1.0, 1.0);

    constexpr std::int64_t block = 4096;
    Eigen::MatrixXd c(n, block), s(n, block), c2(n, block), s2(n, block);
    Eigen::MatrixXd sum_re = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd sum_im = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd sum_re2 = Eigen::MatrixXd::Zero(n, n); // sum of cos(2 dphi)

    for (std::int64_t done = 0; done < samples; done += block)
    {
        const std::int64_t b = std::min(block, samples - done);
        for (std::int64_t k = 0; k < b; ++k)
        {
            const double omega = azimuth(rng);
            const double nu = std::asin(sine_elevation(rng));
            // k^T r / (2 pi / lambda) for r = (0, y, z)
            const double ky = std::cos(nu) * std::sin(omega);
            const double kz = std::sin(nu);
            for (int p = 0; p < n; ++p)
            {
                const double phase = 2.0 * std::numbers::pi * (ky * py(p) + kz * pz(p));
                c(p, k) = std::cos(phase);
                s(p, k) = std::sin(phase);
                c2(p, k) = std::cos(2.0 * phase);
                s2(p, k) = std::sin(2.0 * phase);
            }
        }
        const auto cb = c.leftCols(b), sb = s.leftCols(b), c2b = c2.leftCols(b), s2b = s2.leftCols(b);
        // cos(a - b) = cos a cos b + sin a sin b, sin(a - b) = sin a cos b - cos a sin b
        sum_re.noalias() += cb * cb.transpose() + sb * sb.transpose();
        sum_im.noalias() += sb * cb.transpose() - cb * sb.transpose();
        sum_re2.noalias() += c2b * c2b.transpose() + s2b * s2b.transpose();
    }

    const double ns = static_cast<double>(samples);
    correlation_estimate out;
    out.samples = samples;
    out.real = sum_re / ns;
    out.imag = sum_im / ns;
    // E[cos^2 x] = (1 + E[cos 2x]) / 2
    Eigen::MatrixXd second = (Eigen::MatrixXd::Ones(n, n) + sum_re2 / ns) / 2.0;
    Eigen::MatrixXd var = (second - out.real.cwiseAbs2()).cwiseMax(0.0);
    out.std_error = (var * (ns / (ns - 1.0)) / ns).cwiseSqrt();
    out.real.diagonal().setOnes();
    out.imag.diagonal().setZero();
    out.std_error.diagonal().setZero();
    return out;
}

// Full matrix, row-major, 17 significant digits.
inline void write_matrix_csv(const Eigen::MatrixXd &m, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    char buf[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
        {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

} // namespace risfas

#endif
