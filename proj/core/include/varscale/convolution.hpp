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

#ifndef VARSCALE_CONVOLUTION_HPP_
#define VARSCALE_CONVOLUTION_HPP_

#include <cstddef>
#include <vector>

#include "varscale/distributions.hpp"

namespace varscale {

/// Probability masses on a uniform grid. Cell i covers
/// [x_min + i dx, x_min + (i + 1) dx) and its mass sits at the cell centre.
struct DensityGrid {
    double x_min = 0.0;
    double dx = 1.0;
    std::vector<double> weights;
    /// Largest n for which an n-fold convolution stays inside the grid.
    int support_steps = 1;
    /// Mass of the underlying law lying outside the grid before
    /// renormalisation (for convolved grids, n times the input's).
    double truncated_mass = 0.0;

    std::size_t n_cells() const noexcept { return weights.size(); }
    double centre(std::size_t i) const noexcept {
        return x_min + (static_cast<double>(i) + 0.5) * dx;
    }
};

inline constexpr std::size_t kMinGridCells = std::size_t{1} << 14;
inline constexpr std::size_t kDefaultGridCells = std::size_t{1} << 18;
inline constexpr std::size_t kMaxGridCells = std::size_t{1} << 23;

struct GridOptions {
    std::size_t n_cells = kDefaultGridCells;
    std::size_t max_cells = kMaxGridCells;
    /// Truncated mass above which the grid is widened once.
    double max_truncated_mass = 1e-7;
};

/// Default half-width in standard deviations: 40 for the t family, whose
/// power tails need room, 20 otherwise.
double default_tail_sigmas(Family family) noexcept;

/// Throws Error(invalid_params) unless dx > 0, weights are finite and
/// non-negative, total mass is 1 within 1e-6 and the cell count is a power of
/// two no smaller than 2^14.
void validate(const DensityGrid& grid);

/// Grid over location +- tail_sigmas * sd * sqrt(n_steps). Cell masses are
/// the midpoint density times dx (the VG cell holding a singular centre uses
/// the exact distribution-function difference), renormalised to one. If the
/// law puts more than options.max_truncated_mass outside, the half-width is
/// doubled once, doubling the cell count while it stays under the cap.
DensityGrid discretize(const DistParams& params, int n_steps, double tail_sigmas,
                       const GridOptions& options = {});

/// Grid over an explicit [x_lo, x_hi]; works for laws without a variance.
/// The range should be centred on the location so that the n-fold sum for
/// n <= support_steps stays inside it.
DensityGrid discretize_range(const DistParams& params, double x_lo, double x_hi,
                             std::size_t n_cells, int support_steps);

/// Law of the sum of n iid draws from the grid: real FFT, n-th power of the
/// transform, inverse FFT, negatives clipped and mass renormalised. Throws
/// Error(wrap_around) when n exceeds the grid's support_steps or the two
/// edge cells of the result carry more than 1e-9 mass.
DensityGrid convolve_n_fft(const DensityGrid& grid, int n);

/// VG is closed under convolution: the horizon is multiplied by n.
VGParams vg_convolve_analytic(const VGParams& params, int n);

/// Square-root-of-time rule: the horizon is multiplied by n.
NormalParams normal_srtr(const NormalParams& params, int n);

double grid_mean(const DensityGrid& grid);
double grid_variance(const DensityGrid& grid);

/// Distribution function at the right edge of each cell.
std::vector<double> grid_cdf(const DensityGrid& grid);

/// Level-p quantile by linear interpolation of the distribution function
/// between cell edges. Throws Error(insufficient_tail_mass) when p is not
/// resolved inside the grid.
double grid_quantile(const DensityGrid& grid, double p);

}  // namespace varscale

#endif  // VARSCALE_CONVOLUTION_HPP_
