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

#ifndef VARSCALE_IO_HPP_
#define VARSCALE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "varscale/convergence.hpp"
#include "varscale/convolution.hpp"
#include "varscale/fitting.hpp"
#include "varscale/portfolio.hpp"
#include "varscale/riskmeasure.hpp"

namespace varscale::io {

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Single-column P&L: one number per line, optional non-numeric header,
/// blank lines ignored. Throws Error(parse_error) naming the bad line.
std::vector<double> parse_pnl_csv(std::string_view text);
std::vector<double> read_pnl_csv(const std::filesystem::path& path);

/// Long-format history (date,asset,spot,atm3m_vol) plus a date,rate file.
/// Dates keep their first-seen order; every asset must appear on every date.
MarketHistory parse_market_history(std::string_view history_csv, std::string_view rates_csv,
                                   double dividend_yield = 0.03, double skew = 0.0);
MarketHistory read_market_history(const std::filesystem::path& history_csv,
                                  const std::filesystem::path& rates_csv,
                                  double dividend_yield = 0.03, double skew = 0.0);
std::string market_history_csv(const MarketHistory& history);
std::string rates_csv(const MarketHistory& history);

nlohmann::json to_json(const DistParams& params);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const RegimeReport& report);
nlohmann::json to_json(const VaRFigure& figure);
/// Summary only; per-repeat rows go to sweep_detail_csv.
nlohmann::json to_json(const SweepReport& report);

/// Columns: repeat,nu,mse_N,mse_ST,mse_VG,var_ratio,regime.
std::string sweep_detail_csv(const SweepReport& report);
/// Columns: x,weight (cell centres).
std::string grid_csv(const DensityGrid& grid);
/// Two-column curve with the given header names.
std::string curve_csv(const std::vector<std::pair<double, double>>& points,
                      std::string_view x_name, std::string_view y_name);

}  // namespace varscale::io

#endif  // VARSCALE_IO_HPP_
