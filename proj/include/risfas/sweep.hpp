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

#ifndef RISFAS_SWEEP_HPP
#define RISFAS_SWEEP_HPP

#include "channel_model.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "monte_carlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace risfas
{

enum class sweep_axis
{
    tx_power_dbm,
    ris_elements,
    ports_n,
    aperture_w,
    bandwidth_hz,
    data_bits,
};

inline std::string_view axis_name(sweep_axis a)
{
    switch (a)
    {
    case sweep_axis::tx_power_dbm: return "tx_power_dbm";
    case sweep_axis::ris_elements: return "ris_elements";
    case sweep_axis::ports_n: return "ports_n";
    case sweep_axis::aperture_w: return "aperture_w";
    case sweep_axis::bandwidth_hz: return "bandwidth_hz";
    case sweep_axis::data_bits: return "data_bits";
    }
    return "";
}

inline std::optional<sweep_axis> parse_axis(std::string_view s)
{
    for (auto a : {sweep_axis::tx_power_dbm, sweep_axis::ris_elements, sweep_axis::ports_n, sweep_axis::aperture_w,
                   sweep_axis::bandwidth_hz, sweep_axis::data_bits})
        if (axis_name(a) == s)
            return a;
    return std::nullopt;
}

struct sweep_spec
{
    system_config base;
    sweep_axis axis = sweep_axis::tx_power_dbm;
    std::vector<double> values;
    std::optional<mc_run> mc;
    std::string output_path = "sweep.csv";
    std::string series; // label carried into every record
    rqmc_options rqmc;
    double delta = 0.0;
    double eigen_floor_rel = spatial_correlation::default_eigen_floor_rel;
};

// Config at one axis value. ports_n must be a perfect square (n1 = n2 = sqrt(N));
// aperture_w is an area in wavelengths^2 (w1 = w2 = sqrt(W)).
inline system_config apply_axis(const system_config &base, sweep_axis axis, double v)
{
    system_config c = base;
    switch (axis)
    {
    case sweep_axis::tx_power_dbm: c.tx_power_dbm = v; break;
    case sweep_axis::ris_elements: c.ris_elements = static_cast<int>(std::lround(v)); break;
    case sweep_axis::ports_n:
    {
        const int side = static_cast<int>(std::lround(std::sqrt(v)));
        c.grid.n1 = c.grid.n2 = side;
        break;
    }
    case sweep_axis::aperture_w: c.grid.w1 = c.grid.w2 = std::sqrt(v); break;
    case sweep_axis::bandwidth_hz: c.bandwidth_hz = v; break;
    case sweep_axis::data_bits: c.data_bits = v; break;
    }
    return c;
}

inline void validate_spec(const sweep_spec &spec)
{
    if (spec.values.empty())
        throw config_error("values: at least one axis value is required");
    if (spec.values.size() > 1)
    {
        const bool inc = spec.values[1] > spec.values[0];
        for (std::size_t i = 1; i < spec.values.size(); ++i)
            if (inc ? !(spec.values[i] > spec.values[i - 1]) : !(spec.values[i] < spec.values[i - 1]))
                throw config_error("values: must be strictly monotone");
    }
    for (double v : spec.values)
    {
        if (!std::isfinite(v))
            throw config_error("values: must be finite");
        switch (spec.axis)
        {
        case sweep_axis::ris_elements:
            if (v < 1 || v != std::floor(v))
                throw config_error("values: ris_elements values must be integers >= 1");
            break;
        case sweep_axis::ports_n:
        {
            const double side = std::round(std::sqrt(v));
            if (v < 1 || side * side != v)
                throw config_error("values: ports_n values must be perfect squares >= 1");
            break;
        }
        case sweep_axis::aperture_w:
        case sweep_axis::bandwidth_hz:
        case sweep_axis::data_bits:
            if (!(v > 0.0))
                throw config_error("values: " + std::string(axis_name(spec.axis)) + " values must be > 0");
            break;
        case sweep_axis::tx_power_dbm: break;
        }
        try
        {
            apply_axis(spec.base, spec.axis, v).validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(std::string("values: ") + e.what());
        }
    }
    if (spec.mc)
    {
        try
        {
            spec.mc->validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(std::string("trials/batch: ") + e.what());
        }
    }
    if (spec.rqmc.samples < 128 || spec.rqmc.randomizations < 8)
        throw config_error("rqmc_samples must be >= 128 and rqmc_randomizations >= 8");
    if (!(spec.delta >= 0.0 && spec.delta < 1.0))
        throw config_error("delta: must lie in [0,1)");
    if (!(spec.eigen_floor_rel >= 0.0))
        throw config_error("eigen_floor: must be >= 0");
}

// Key reference printed by the CLI help.
inline constexpr std::string_view config_keys_help = R"(Config file: one "key = value" per line, '#' starts a comment.
  axis                 tx_power_dbm | ris_elements | ports_n | aperture_w | bandwidth_hz | data_bits (required)
  values               comma-separated, strictly monotone axis values (required)
                       ports_n: perfect squares N (grid sqrt(N) x sqrt(N)); aperture_w: area in wavelengths^2
  output_path          CSV output path                       [sweep.csv]
  tx_power_dbm         transmit power P, dBm                 [15]
  noise_dbm            noise power sigma^2, dBm              [-120]
  pathloss_exp         path-loss exponent alpha (> 2)        [2.5]
  d_bs_ris_m           BS-RIS distance, m                    [2000]
  d_ris_mu_m           RIS-user distance, m                  [2000]
  ris_elements         RIS elements M                        [125]
  n1, n2               ports per axis                        [1, 1]
  w1, w2               aperture per axis, wavelengths        [1, 1]
  snr_threshold_db     SNR threshold gamma_th, dB            [0]
  delay_threshold_s    delay threshold T_th, s               [0.003]
  data_bits            payload R, bits                       [3000]
  bandwidth_hz         bandwidth B, Hz                       [2e6]
  trials               Monte Carlo trials; enables simulation (>= 1000)
  batch                Monte Carlo trials per work unit      [65536]
  seed                 base seed for RQMC and Monte Carlo    [1]
  rqmc_samples         lattice points per randomization      [8192]
  rqmc_randomizations  random shifts                         [16]
  delta                correlation nugget weight in [0,1)    [0]
  eigen_floor          eigenvalue floor relative to max      [1e-10])";

namespace detail
{

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view key, std::string_view text, std::size_t line)
{
    double v = 0.0;
    const auto *first = text.data();
    const auto *last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last)
        throw config_error(std::string(key) + ": cannot parse '" + std::string(text) + "' as a number", line);
    return v;
}

inline std::int64_t parse_integer(std::string_view key, std::string_view text, std::size_t line)
{
    const double v = parse_real(key, text, line);
    if (v != std::floor(v) || std::abs(v) > 9.0e15)
        throw config_error(std::string(key) + ": expected an integer, got '" + std::string(text) + "'", line);
    return static_cast<std::int64_t>(v);
}

} // namespace detail

// Parses the line-oriented config format (see config_keys_help). With
// require_sweep = false, axis and values may be omitted (grid-only uses).
inline sweep_spec parse_config_text(std::string_view text, bool require_sweep = true)
{
    sweep_spec spec;
    std::map<std::string, std::size_t> seen;
    bool have_axis = false;
    bool have_values = false;
    mc_run mc;
    bool have_trials = false;
    std::uint64_t seed = 1;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_error("expected 'key = value'", line_no);
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("missing key before '='", line_no);
        if (!seen.emplace(key, line_no).second)
            throw config_error("duplicate key '" + key + "'", line_no);

        auto real = [&] { return detail::parse_real(key, value, line_no); };
        auto integer = [&] { return detail::parse_integer(key, value, line_no); };
        auto &b = spec.base;

        if (key == "axis")
        {
            const auto a = parse_axis(value);
            if (!a)
                throw config_error("axis: unknown axis '" + std::string(value) + "'", line_no);
            spec.axis = *a;
            have_axis = true;
        }
        else if (key == "values")
        {
            std::string_view rest = value;
            while (true)
            {
                const auto comma = rest.find(',');
                spec.values.push_back(detail::parse_real(key, detail::trim(rest.substr(0, comma)), line_no));
                if (comma == std::string_view::npos)
                    break;
                rest = rest.substr(comma + 1);
            }
            have_values = true;
        }
        else if (key == "output_path")
        {
            if (value.empty())
                throw config_error("output_path: empty", line_no);
            spec.output_path = std::string(value);
        }
        else if (key == "tx_power_dbm") b.tx_power_dbm = real();
        else if (key == "noise_dbm") b.noise_dbm = real();
        else if (key == "pathloss_exp") b.pathloss_exp = real();
        else if (key == "d_bs_ris_m") b.d_bs_ris_m = real();
        else if (key == "d_ris_mu_m") b.d_ris_mu_m = real();
        else if (key == "ris_elements") b.ris_elements = static_cast<int>(integer());
        else if (key == "n1") b.grid.n1 = static_cast<int>(integer());
        else if (key == "n2") b.grid.n2 = static_cast<int>(integer());
        else if (key == "w1") b.grid.w1 = real();
        else if (key == "w2") b.grid.w2 = real();
        else if (key == "snr_threshold_db") b.snr_threshold_db = real();
        else if (key == "delay_threshold_s") b.delay_threshold_s = real();
        else if (key == "data_bits") b.data_bits = real();
        else if (key == "bandwidth_hz") b.bandwidth_hz = real();
        else if (key == "trials")
        {
            mc.trials = integer();
            have_trials = true;
        }
        else if (key == "batch") mc.batch = integer();
        else if (key == "seed")
        {
            const auto s = integer();
            if (s < 0)
                throw config_error("seed: must be >= 0", line_no);
            seed = static_cast<std::uint64_t>(s);
        }
        else if (key == "rqmc_samples") spec.rqmc.samples = static_cast<int>(integer());
        else if (key == "rqmc_randomizations") spec.rqmc.randomizations = static_cast<int>(integer());
        else if (key == "delta") spec.delta = real();
        else if (key == "eigen_floor") spec.eigen_floor_rel = real();
        else
            throw config_error("unknown key '" + key + "'", line_no);
    }

    if (require_sweep && !have_axis)
        throw config_error("axis: required");
    if (require_sweep && !have_values)
        throw config_error("values: required");
    spec.rqmc.seed = seed;
    mc.seed = seed;
    if (have_trials)
        spec.mc = mc;
    try
    {
        spec.base.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw config_error(e.what());
    }
    if (require_sweep || have_values)
        validate_spec(spec);
    return spec;
}

inline sweep_spec parse_config(const std::filesystem::path &path, bool require_sweep = true)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), require_sweep);
}

// Evaluates one axis value. Analytical OP and DOR share the RQMC seed, so DOR is
// bitwise the OP at the effective threshold.
inline sweep_record evaluate_point(const sweep_spec &spec, std::size_t index)
{
    sweep_record rec;
    rec.series = spec.series;
    rec.axis_value = spec.values.at(index);
    try
    {
        rec.config = apply_axis(spec.base, spec.axis, rec.axis_value);
        rec.config.validate();
        const auto corr = build_correlation_matrix(rec.config.grid, spec.delta, spec.eigen_floor_rel);
        rqmc_options rqmc = spec.rqmc;
        rqmc.seed = mix_seed(spec.rqmc.seed, index);
        rec.op = outage_probability(rec.config, corr, rqmc);
        rec.dor = delay_outage_rate(rec.config, corr, rqmc);
        rec.tas = tas_baseline(rec.config);
        if (spec.mc)
        {
            mc_run run = *spec.mc;
            run.seed = mix_seed(spec.mc->seed, index);
            rec.mc_op = simulate_op(rec.config, corr, run);
            rec.mc_dor = simulate_dor(rec.config, corr, run);
        }
    }
    catch (const std::exception &e)
    {
        rec.error = e.what();
    }
    return rec;
}

struct sweep_options
{
    int workers = 1;
    std::ostream *progress = &std::cerr; // nullptr silences progress
};

// Evaluates all axis values; records come back in axis order.
inline std::vector<sweep_record> run_sweep(const sweep_spec &spec, const sweep_options &opts = {})
{
    validate_spec(spec);
    const std::size_t n = spec.values.size();
    std::vector<sweep_record> out(n);
    std::mutex progress_mutex;
    std::size_t done = 0;
    auto worker = [&](std::size_t id, std::size_t stride) {
        for (std::size_t i = id; i < n; i += stride)
        {
            out[i] = evaluate_point(spec, i);
            if (opts.progress)
            {
                std::lock_guard lock(progress_mutex);
                ++done;
                *opts.progress << "[" << done << "/" << n << "] " << (spec.series.empty() ? "" : spec.series + " ")
                               << axis_name(spec.axis) << "=" << spec.values[i]
                               << (out[i].error.empty() ? "" : " error: " + out[i].error) << '\n';
            }
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, opts.workers));
    if (workers == 1)
        worker(0, 1);
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t id = 0; id < workers; ++id)
            pool.emplace_back(worker, id, workers);
    }
    return out;
}

inline constexpr std::string_view csv_header =
    "series,axis,tx_power_dbm,ris_elements,n1,n2,w1,w2,bandwidth_hz,data_bits,"
    "op,op_se,op_log10,dor,dor_se,dor_log10,tas_op,tas_dor,"
    "mc_op,mc_op_lo,mc_op_hi,mc_dor,mc_dor_lo,mc_dor_hi,mc_unresolved,clt_warning,error";

namespace detail
{
inline std::string fmt_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_text(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}
} // namespace detail

// CSV with csv_header columns; reals at 17 significant digits, LF endings.
inline void emit_csv(const std::vector<sweep_record> &records, const std::filesystem::path &path)
{
    if (records.empty())
        throw std::invalid_argument("emit_csv: no records");
    std::ostringstream os;
    os << csv_header << '\n';
    const auto r = [](double v) { return detail::fmt_real(v); };
    const auto log10_of = [](const mvn_result &m) { return m.log_value / std::numbers::ln10; };
    for (const auto &rec : records)
    {
        const auto &c = rec.config;
        os << detail::csv_text(rec.series) << ',' << r(rec.axis_value) << ',' << r(c.tx_power_dbm) << ','
           << c.ris_elements << ',' << c.grid.n1 << ',' << c.grid.n2 << ',' << r(c.grid.w1) << ',' << r(c.grid.w2)
           << ',' << r(c.bandwidth_hz) << ',' << r(c.data_bits) << ',';
        if (rec.error.empty())
            os << r(rec.op.value) << ',' << r(rec.op.std_error) << ',' << r(log10_of(rec.op)) << ','
               << r(rec.dor.value) << ',' << r(rec.dor.std_error) << ',' << r(log10_of(rec.dor)) << ','
               << r(rec.tas.op) << ',' << r(rec.tas.dor) << ',';
        else
            os << ",,,,,,,,";
        if (rec.mc_op)
            os << r(rec.mc_op->estimate) << ',' << r(rec.mc_op->lo) << ',' << r(rec.mc_op->hi) << ',';
        else
            os << ",,,";
        if (rec.mc_dor)
            os << r(rec.mc_dor->estimate) << ',' << r(rec.mc_dor->lo) << ',' << r(rec.mc_dor->hi) << ',';
        else
            os << ",,,";
        if (rec.mc_op)
            os << ((rec.mc_op->unresolved || (rec.mc_dor && rec.mc_dor->unresolved)) ? 1 : 0);
        os << ',' << (rec.tas.clt_warning ? 1 : 0) << ',' << detail::csv_text(rec.error) << '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << os.str();
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

// Gnuplot script plotting one curve per series from a CSV written by emit_csv.
inline void write_plot_script(const std::vector<sweep_record> &records, sweep_axis axis,
                              const std::filesystem::path &csv_path, const std::filesystem::path &script_path)
{
    const bool delay = axis == sweep_axis::bandwidth_hz || axis == sweep_axis::data_bits;
    const int metric_col = delay ? 14 : 11;
    const int tas_col = delay ? 18 : 17;
    std::vector<std::string> series;
    for (const auto &r : records)
        if (std::find(series.begin(), series.end(), r.series) == series.end())
            series.push_back(r.series);

    std::ofstream out(script_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + script_path.string() + " for writing");
    out << "# gnuplot script generated by ris-fas\n"
        << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set logscale y\n"
        << "set format y '10^{%L}'\n"
        << "set xlabel '" << axis_name(axis) << "'\n"
        << "set ylabel '" << (delay ? "delay outage rate" : "outage probability") << "'\n"
        << "set terminal pngcairo size 900,650\n"
        << "set output '" << csv_path.stem().string() << ".png'\n"
        << "file = '" << csv_path.filename().string() << "'\n"
        << "plot \\\n";
    for (std::size_t i = 0; i < series.size(); ++i)
    {
        const auto label = series[i].empty() ? std::string("FAS") : series[i];
        out << "  file using 2:(strcol(1) eq '" << detail::csv_text(series[i]) << "' ? $" << metric_col
            << " : 1/0) with linespoints title '" << label << "', \\\n"
            << "  file using 2:(strcol(1) eq '" << detail::csv_text(series[i]) << "' ? $" << tas_col
            << " : 1/0) with lines dashtype 2 title '" << label << " TAS'" << (i + 1 < series.size() ? ", \\" : "")
            << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed for " + script_path.string());
}

// ---- figure-family presets ----

// Transmit power for the presets with a fixed P (OP vs N, W, M and the DOR
// families); the OP-vs-P families sweep it.
inline constexpr double preset_tx_power_dbm = 5.0;

inline const std::vector<std::string> &preset_names()
{
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig3a", "fig3b", "fig3c",
                                                "fig3d", "fig4a", "fig4b", "fig4c", "fig4d"};
    return names;
}

// Series making up a preset. Every series uses the same base seed; points get
// seeds derived from (series index, point index).
inline std::vector<sweep_spec> preset(const std::string &name, std::uint64_t seed = 1)
{
    auto range = [](double lo, double hi, double step) {
        std::vector<double> v;
        for (int k = 0; lo + k * step <= hi + 1e-9 * step; ++k)
            v.push_back(lo + k * step);
        return v;
    };
    auto make = [&](sweep_axis axis, std::vector<double> values, int m, int side, double w) {
        sweep_spec s;
        s.base.tx_power_dbm = preset_tx_power_dbm;
        s.base.ris_elements = m;
        s.base.grid = {side, side, w, w};
        s.axis = axis;
        s.values = std::move(values);
        s.output_path = name + ".csv";
        s.rqmc.seed = seed;
        std::ostringstream label;
        if (axis != sweep_axis::ris_elements)
            label << "M=" << m << ' ';
        if (axis != sweep_axis::ports_n)
            label << "N=" << side << 'x' << side << ' ';
        if (axis != sweep_axis::aperture_w)
            label << "W=" << w << 'x' << w;
        s.series = std::string(detail::trim(label.str()));
        return s;
    };

    std::vector<sweep_spec> out;
    const std::vector<int> ms{105, 125};
    if (name == "fig2a")
    {
        for (int m : ms)
            for (int side : {2, 4})
                out.push_back(make(sweep_axis::tx_power_dbm, range(0.0, 15.0, 1.0), m, side, 1.0));
    }
    else if (name == "fig2b")
    {
        for (int m : ms)
            for (double w : {1.0, 3.0})
                out.push_back(make(sweep_axis::tx_power_dbm, range(0.0, 15.0, 1.0), m, 5, w));
    }
    else if (name == "fig3a")
    {
        for (int m : ms)
            out.push_back(make(sweep_axis::ports_n, {1, 4, 9, 16, 25, 36}, m, 1, 1.0));
    }
    else if (name == "fig3b")
    {
        for (int m : ms)
            out.push_back(make(sweep_axis::aperture_w, range(1.0, 9.0, 1.0), m, 5, 1.0));
    }
    else if (name == "fig3c")
    {
        for (int side : {2, 4, 5})
            out.push_back(make(sweep_axis::ris_elements, range(60.0, 140.0, 10.0), 125, side, 1.0));
    }
    else if (name == "fig3d")
    {
        for (double w : {1.0, 2.0, 3.0})
            out.push_back(make(sweep_axis::ris_elements, range(60.0, 140.0, 10.0), 125, 5, w));
    }
    else if (name == "fig4a" || name == "fig4c")
    {
        const auto axis = name == "fig4a" ? sweep_axis::bandwidth_hz : sweep_axis::data_bits;
        const auto values = name == "fig4a" ? range(0.5e6, 5e6, 0.5e6) : range(1000.0, 6000.0, 1000.0);
        for (int m : ms)
            for (int side : {2, 4})
                out.push_back(make(axis, values, m, side, 1.0));
    }
    else if (name == "fig4b" || name == "fig4d")
    {
        const auto axis = name == "fig4b" ? sweep_axis::bandwidth_hz : sweep_axis::data_bits;
        const auto values = name == "fig4b" ? range(0.5e6, 5e6, 0.5e6) : range(1000.0, 6000.0, 1000.0);
        for (int m : ms)
            for (double w : {1.0, 3.0})
                out.push_back(make(axis, values, m, 5, w));
    }
    else
        throw config_error("unknown preset '" + name + "'");
    return out;
}

// Runs every series of a preset; point seeds are derived per series.
inline std::vector<sweep_record> run_preset(const std::vector<sweep_spec> &series, const sweep_options &opts = {})
{
    std::vector<sweep_record> all;
    for (std::size_t s = 0; s < series.size(); ++s)
    {
        sweep_spec spec = series[s];
        spec.rqmc.seed = mix_seed(series[s].rqmc.seed, 1000 + s);
        if (spec.mc)
            spec.mc->seed = mix_seed(series[s].mc->seed, 1000 + s);
        auto recs = run_sweep(spec, opts);
        all.insert(all.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
    }
    return all;
}

} // namespace risfas

#endif
