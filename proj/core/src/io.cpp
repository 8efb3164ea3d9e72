/*
 * Copyright 2026 The varscale Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "varscale/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "varscale/error.hpp"

namespace varscale::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

[[noreturn]] void parse_fail(std::string_view what, std::size_t line_no, std::string_view line) {
    fail(ErrorKind::parse_error, std::string(what) + " at line " + std::to_string(line_no) +
                                     ": '" + std::string(line) + "'");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::parse_error, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::config_error, "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) fail(ErrorKind::config_error, "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        fail(ErrorKind::config_error, "cannot replace '" + path.string() + "'");
    }
}

std::vector<double> parse_pnl_csv(std::string_view text) {
    std::vector<double> values;
    const auto lines = split_lines(text);
    bool seen_content = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 1) parse_fail("expected one column", i + 1, line);
        double v = 0.0;
        if (!parse_double(fields[0], v)) {
            // Only the first non-blank line may be a header.
            if (!seen_content) {
                seen_content = true;
                continue;
            }
            parse_fail("not a finite number", i + 1, line);
        }
        seen_content = true;
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_pnl_csv(const std::filesystem::path& path) {
    return parse_pnl_csv(read_file(path));
}

MarketHistory parse_market_history(std::string_view history_csv, std::string_view rates_csv,
                                   double dividend_yield, double skew) {
    MarketHistory h;
    h.dividend_yield = dividend_yield;
    h.skew = skew;
    std::map<std::string, std::size_t, std::less<>> date_index;
    std::map<std::string, std::size_t, std::less<>> asset_index;
    struct Obs {
        std::size_t date;
        std::size_t asset;
        double spot;
        double vol;
    };
    std::vector<Obs> obs;

    const auto lines = split_lines(history_csv);
    bool first = true;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 4) parse_fail("expected date,asset,spot,atm3m_vol", i + 1, line);
        double spot = 0.0;
        double vol = 0.0;
        const bool numeric = parse_double(f[2], spot) && parse_double(f[3], vol);
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            parse_fail("spot and vol must be finite numbers", i + 1, line);
        }
        first = false;
        auto [d_it, d_new] = date_index.try_emplace(std::string(f[0]), h.dates.size());
        if (d_new) h.dates.emplace_back(f[0]);
        auto [a_it, a_new] = asset_index.try_emplace(std::string(f[1]), h.assets.size());
        if (a_new) h.assets.emplace_back(f[1]);
        obs.push_back({d_it->second, a_it->second, spot, vol});
    }
    if (h.dates.empty()) fail(ErrorKind::parse_error, "market history has no observations");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    h.spots.assign(h.assets.size(), std::vector<double>(h.dates.size(), nan));
    h.atm_vols.assign(h.assets.size(), std::vector<double>(h.dates.size(), nan));
    for (const Obs& o : obs) {
        if (!std::isnan(h.spots[o.asset][o.date])) {
            fail(ErrorKind::misaligned_history, "duplicate observation for " + h.assets[o.asset] +
                                                    " on " + h.dates[o.date]);
        }
        h.spots[o.asset][o.date] = o.spot;
        h.atm_vols[o.asset][o.date] = o.vol;
    }
    for (std::size_t a = 0; a < h.assets.size(); ++a) {
        for (std::size_t d = 0; d < h.dates.size(); ++d) {
            if (std::isnan(h.spots[a][d])) {
                fail(ErrorKind::misaligned_history,
                     "missing observation for " + h.assets[a] + " on " + h.dates[d]);
            }
        }
    }

    h.rates.assign(h.dates.size(), nan);
    const auto rate_lines = split_lines(rates_csv);
    first = true;
    for (std::size_t i = 0; i < rate_lines.size(); ++i) {
        const auto line = trim(rate_lines[i]);
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 2) parse_fail("expected date,rate", i + 1, line);
        double r = 0.0;
        if (!parse_double(f[1], r)) {
            if (first) {
                first = false;
                continue;
            }
            parse_fail("rate must be a finite number", i + 1, line);
        }
        first = false;
        const auto it = date_index.find(f[0]);
        if (it == date_index.end()) {
            fail(ErrorKind::misaligned_history, "rate given for unknown date " + std::string(f[0]));
        }
        h.rates[it->second] = r;
    }
    for (std::size_t d = 0; d < h.dates.size(); ++d) {
        if (std::isnan(h.rates[d])) {
            fail(ErrorKind::misaligned_history, "missing rate on " + h.dates[d]);
        }
    }
    validate(h);
    return h;
}

MarketHistory read_market_history(const std::filesystem::path& history_csv,
                                  const std::filesystem::path& rates_csv, double dividend_yield,
                                  double skew) {
    return parse_market_history(read_file(history_csv), read_file(rates_csv), dividend_yield, skew);
}

std::string market_history_csv(const MarketHistory& h) {
    std::string out = "date,asset,spot,atm3m_vol\n";
    for (std::size_t d = 0; d < h.n_days(); ++d) {
        for (std::size_t a = 0; a < h.n_assets(); ++a) {
            out += h.dates[d] + ',' + h.assets[a] + ',' + fmt(h.spots[a][d]) + ',' +
                   fmt(h.atm_vols[a][d]) + '\n';
        }
    }
    return out;
}

std::string rates_csv(const MarketHistory& h) {
    std::string out = "date,rate\n";
    for (std::size_t d = 0; d < h.n_days(); ++d) out += h.dates[d] + ',' + fmt(h.rates[d]) + '\n';
    return out;
}

nlohmann::json to_json(const DistParams& params) {
    nlohmann::json j;
    if (const auto* n = std::get_if<NormalParams>(&params)) {
        j = {{"mu", n->mu}, {"sigma2", n->sigma2}, {"horizon", n->horizon}};
    } else if (const auto* st = std::get_if<StudentTParams>(&params)) {
        j = {{"mu", st->mu}, {"sigma", st->sigma}, {"nu", st->nu}};
    } else {
        const auto& vg = std::get<VGParams>(params);
        j = {{"mu", vg.mu}, {"sigma", vg.sigma}, {"theta", vg.theta}, {"k", vg.k},
             {"horizon", vg.horizon}};
    }
    return j;
}

nlohmann::json to_json(const FitResult& fit) {
    return {{"family", std::string(to_string(family_of(fit.params)))},
            {"params", to_json(fit.params)},
            {"mse", fit.mse},
            {"converged", fit.converged},
            {"iterations", fit.iterations}};
}

nlohmann::json to_json(const RegimeReport& r) {
    return {{"alpha", r.alpha},         {"horizon", r.horizon},
            {"nu_star", r.nu_star},     {"x_star", r.x_star},
            {"fitted_nu", r.fitted_nu}, {"regime", std::string(to_string(r.regime))}};
}

nlohmann::json to_json(const VaRFigure& v) {
    nlohmann::json j = {{"alpha", v.alpha},
                        {"horizon", v.horizon},
                        {"value", v.value},
                        {"method", std::string(to_string(v.method))},
                        {"family", std::string(to_string(family_of(v.one_day)))},
                        {"one_day_params", to_json(v.one_day)},
                        {"zero_mean", v.zero_mean}};
    if (v.nu_star > 0.0) j["nu_star"] = v.nu_star;
    return j;
}

nlohmann::json to_json(const SweepReport& r) {
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : r.failures) failures.push_back({{"repeat", f.repeat}, {"error", f.message}});
    // Histogram of fitted nu in unit-width bins from 2.
    std::map<int, int> bins;
    for (const auto& row : r.rows) ++bins[static_cast<int>(std::floor(row.nu))];
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& [lo, count] : bins) {
        hist.push_back({{"nu_from", lo}, {"nu_to", lo + 1}, {"count", count}});
    }
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); };
    return {{"seed", r.seed},
            {"n_repeats", r.n_repeats},
            {"n_succeeded", r.rows.size()},
            {"alpha", r.options.alpha},
            {"horizon", r.options.horizon},
            {"window", r.options.window},
            {"as_of", r.options.as_of},
            {"nu_star", r.nu_star},
            {"nu_median", num(r.median_nu())},
            {"nu_mean", num(r.mean_nu())},
            {"nu_stdev", num(r.stdev_nu())},
            {"non_convergence_fraction", num(r.non_convergence_fraction())},
            {"nu_histogram", hist},
            {"failures", failures}};
}

std::string sweep_detail_csv(const SweepReport& r) {
    std::string out = "repeat,nu,mse_N,mse_ST,mse_VG,var_ratio,regime\n";
    for (const auto& row : r.rows) {
        out += std::to_string(row.repeat) + ',' + fmt(row.nu) + ',' + fmt(row.mse_normal) + ',' +
               fmt(row.mse_st) + ',' + fmt(row.mse_vg) + ',' + fmt(row.var_ratio) + ',' +
               std::string(to_string(row.regime)) + '\n';
    }
    return out;
}

std::string grid_csv(const DensityGrid& grid) {
    std::string out = "x,weight\n";
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
        out += fmt(grid.centre(i)) + ',' + fmt(grid.weights[i]) + '\n';
    }
    return out;
}

std::string curve_csv(const std::vector<std::pair<double, double>>& points,
                      std::string_view x_name, std::string_view y_name) {
    std::string out = std::string(x_name) + ',' + std::string(y_name) + '\n';
    for (const auto& [x, y] : points) out += fmt(x) + ',' + fmt(y) + '\n';
    return out;
}

}  // namespace varscale::io
