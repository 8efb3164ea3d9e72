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

#include "varscale/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numeric>

#include <fftw3.h>

#include "varscale/error.hpp"
#include "varscale/special.hpp"

namespace varscale {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct FftwBuffer {
    explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
        if (ptr == nullptr) fail(ErrorKind::resource_limit, "FFT buffer allocation failed");
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    void* ptr;
};

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {
        if (plan_ == nullptr) fail(ErrorKind::numeric_failure, "FFTW planning failed");
    }
    ~Plan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

// Midpoint masses for every cell, before renormalisation.
std::vector<double> cell_masses(const DistParams& params, double x_min, double dx,
                                std::size_t n_cells) {
    std::vector<double> w(n_cells);
    auto at = [&](std::size_t i) { return x_min + (static_cast<double>(i) + 0.5) * dx; };

    if (const auto* n = std::get_if<NormalParams>(&params)) {
        const double m = n->mu * n->horizon;
        const double sd = std::sqrt(n->sigma2 * n->horizon);
        for (std::size_t i = 0; i < n_cells; ++i) {
            w[i] = special::normal_pdf((at(i) - m) / sd) / sd * dx;
        }
        return w;
    }
    if (const auto* st = std::get_if<StudentTParams>(&params)) {
        const double log_norm = special::log_gamma(0.5 * (st->nu + 1.0)) -
                                special::log_gamma(0.5 * st->nu) -
                                0.5 * std::log(st->nu) - special::log_pi * 0.5 -
                                std::log(st->sigma);
        const double power = -0.5 * (st->nu + 1.0);
        for (std::size_t i = 0; i < n_cells; ++i) {
            const double t = (at(i) - st->mu) / st->sigma;
            w[i] = std::exp(log_norm + power * std::log1p(t * t / st->nu)) * dx;
        }
        return w;
    }
    const auto& vg = std::get<VGParams>(params);
    const double c = vg.mu * vg.horizon;
    for (std::size_t i = 0; i < n_cells; ++i) {
        const double x = at(i);
        if (std::fabs(x - c) < dx) {
            // The density may be unbounded at the centre: use exact mass.
            const double lo = x - 0.5 * dx;
            w[i] = cumulative(params, lo + dx) - cumulative(params, lo);
        } else {
            w[i] = density(params, x) * dx;
        }
    }
    return w;
}

DensityGrid build_grid(const DistParams& params, double x_lo, double x_hi,
                       std::size_t n_cells, int support_steps) {
    DensityGrid g;
    g.x_min = x_lo;
    g.dx = (x_hi - x_lo) / static_cast<double>(n_cells);
    g.support_steps = support_steps;
    g.weights = cell_masses(params, g.x_min, g.dx, n_cells);
    g.truncated_mass = std::max(0.0, cumulative(params, x_lo)) +
                       std::max(0.0, 1.0 - cumulative(params, x_hi));
    const double total = std::accumulate(g.weights.begin(), g.weights.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
        fail(ErrorKind::numeric_failure, "discretize: grid carries no probability mass");
    }
    for (double& w : g.weights) w /= total;
    return g;
}

}  // namespace

double default_tail_sigmas(Family family) noexcept {
    return family == Family::student_t ? 40.0 : 20.0;
}

void validate(const DensityGrid& grid) {
    require(std::isfinite(grid.dx) && grid.dx > 0.0, ErrorKind::invalid_params,
            "DensityGrid: dx must be positive");
    require(std::isfinite(grid.x_min), ErrorKind::invalid_params,
            "DensityGrid: x_min must be finite");
    require(is_power_of_two(grid.n_cells()) && grid.n_cells() >= kMinGridCells,
            ErrorKind::invalid_params, "DensityGrid: cell count must be a power of two >= 2^14");
    require(grid.support_steps >= 1, ErrorKind::invalid_params,
            "DensityGrid: support_steps must be positive");
    double total = 0.0;
    for (double w : grid.weights) {
        require(std::isfinite(w) && w >= 0.0, ErrorKind::invalid_params,
                "DensityGrid: weights must be finite and non-negative");
        total += w;
    }
    require(std::fabs(total - 1.0) <= 1e-6, ErrorKind::invalid_params,
            "DensityGrid: weights must sum to one");
}

DensityGrid discretize(const DistParams& params, int n_steps, double tail_sigmas,
                       const GridOptions& options) {
    validate(params);
    require(n_steps >= 1, ErrorKind::invalid_params, "discretize: n_steps must be >= 1");
    require(std::isfinite(tail_sigmas) && tail_sigmas > 0.0, ErrorKind::invalid_params,
            "discretize: tail_sigmas must be positive");
    require(is_power_of_two(options.n_cells) && options.n_cells >= kMinGridCells,
            ErrorKind::invalid_params, "discretize: cell count must be a power of two >= 2^14");
    if (options.n_cells > options.max_cells) {
        fail(ErrorKind::resource_limit, "discretize: requested cells exceed the configured cap");
    }

    // variance() throws undefined_variance for t with nu <= 2.
    const double sd = std::sqrt(variance(params));
    const double loc = mean(params);
    double half = tail_sigmas * sd * std::sqrt(static_cast<double>(n_steps));
    std::size_t cells = options.n_cells;

    DensityGrid g = build_grid(params, loc - half, loc + half, cells, n_steps);
    if (g.truncated_mass > options.max_truncated_mass) {
        half *= 2.0;
        if (cells * 2 <= options.max_cells) cells *= 2;
        g = build_grid(params, loc - half, loc + half, cells, n_steps);
    }
    return g;
}

DensityGrid discretize_range(const DistParams& params, double x_lo, double x_hi,
                             std::size_t n_cells, int support_steps) {
    validate(params);
    require(std::isfinite(x_lo) && std::isfinite(x_hi) && x_hi > x_lo,
            ErrorKind::invalid_params, "discretize_range: need a finite range with x_hi > x_lo");
    require(is_power_of_two(n_cells) && n_cells >= kMinGridCells, ErrorKind::invalid_params,
            "discretize_range: cell count must be a power of two >= 2^14");
    if (n_cells > kMaxGridCells) {
        fail(ErrorKind::resource_limit, "discretize_range: requested cells exceed the cap");
    }
    require(support_steps >= 1, ErrorKind::invalid_params,
            "discretize_range: support_steps must be >= 1");
    return build_grid(params, x_lo, x_hi, n_cells, support_steps);
}

DensityGrid convolve_n_fft(const DensityGrid& grid, int n) {
    validate(grid);
    require(n >= 1, ErrorKind::invalid_params, "convolve_n_fft: n must be >= 1");
    if (n > grid.support_steps) {
        fail(ErrorKind::wrap_around, "convolve_n_fft: grid support is too narrow for n steps");
    }
    if (n == 1) return grid;

    const std::size_t size = grid.n_cells();
    const std::size_t half = size / 2;
    const std::size_t n_freq = half + 1;

    FftwBuffer real_buf(sizeof(double) * size);
    FftwBuffer freq_buf(sizeof(fftw_complex) * n_freq);
    auto* real = static_cast<double*>(real_buf.ptr);
    auto* freq = static_cast<fftw_complex*>(freq_buf.ptr);

    std::unique_ptr<Plan> forward;
    std::unique_ptr<Plan> backward;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        const int len = static_cast<int>(size);
        forward = std::make_unique<Plan>(fftw_plan_dft_r2c_1d(len, real, freq, FFTW_ESTIMATE));
        backward = std::make_unique<Plan>(fftw_plan_dft_c2r_1d(len, freq, real, FFTW_ESTIMATE));
    }

    // Rotate so the middle cell sits at index 0: sums of n offsets from it
    // then land at offset indices modulo the grid length.
    for (std::size_t i = 0; i < size; ++i) real[i] = grid.weights[(i + half) % size];
    forward->execute();
    for (std::size_t j = 0; j < n_freq; ++j) {
        std::complex<double> z(freq[j][0], freq[j][1]);
        z = std::pow(z, n);
        freq[j][0] = z.real();
        freq[j][1] = z.imag();
    }
    backward->execute();

    DensityGrid out;
    out.dx = grid.dx;
    out.support_steps = std::max(1, grid.support_steps / n);
    out.truncated_mass = std::min(1.0, grid.truncated_mass * n);
    const double middle = grid.centre(half);
    out.x_min = n * middle - (static_cast<double>(half) + 0.5) * grid.dx;
    out.weights.resize(size);
    const double scale = 1.0 / static_cast<double>(size);
    double total = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        const double v = real[(i + size - half) % size] * scale;
        if (!std::isfinite(v)) fail(ErrorKind::numeric_failure, "convolve_n_fft: non-finite output");
        out.weights[i] = std::max(0.0, v);
        total += out.weights[i];
    }
    if (!(total > 0.0)) fail(ErrorKind::numeric_failure, "convolve_n_fft: output has no mass");
    for (double& w : out.weights) w /= total;

    if (out.weights.front() + out.weights.back() > 1e-9) {
        fail(ErrorKind::wrap_around, "convolve_n_fft: mass reached the grid boundary");
    }
    return out;
}

VGParams vg_convolve_analytic(const VGParams& params, int n) {
    validate(params);
    require(n >= 1, ErrorKind::invalid_params, "vg_convolve_analytic: n must be >= 1");
    VGParams out = params;
    out.horizon *= n;
    return out;
}

NormalParams normal_srtr(const NormalParams& params, int n) {
    validate(params);
    require(n >= 1, ErrorKind::invalid_params, "normal_srtr: n must be >= 1");
    NormalParams out = params;
    out.horizon *= n;
    return out;
}

double grid_mean(const DensityGrid& grid) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.n_cells(); ++i) m += grid.weights[i] * grid.centre(i);
    return m;
}

double grid_variance(const DensityGrid& grid) {
    const double m = grid_mean(grid);
    double v = 0.0;
    for (std::size_t i = 0; i < grid.n_cells(); ++i) {
        const double d = grid.centre(i) - m;
        v += grid.weights[i] * d * d;
    }
    return v;
}

std::vector<double> grid_cdf(const DensityGrid& grid) {
    std::vector<double> cdf(grid.n_cells());
    std::partial_sum(grid.weights.begin(), grid.weights.end(), cdf.begin());
    return cdf;
}

double grid_quantile(const DensityGrid& grid, double p) {
    require(p > 0.0 && p < 1.0, ErrorKind::domain_error, "grid_quantile: p must lie in (0, 1)");
    const std::vector<double> cdf = grid_cdf(grid);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), p);
    if (it == cdf.begin() || it == cdf.end()) {
        fail(ErrorKind::insufficient_tail_mass, "grid_quantile: level not resolved inside the grid");
    }
    const auto i = static_cast<std::size_t>(it - cdf.begin());
    const double below = cdf[i - 1];
    const double frac = grid.weights[i] > 0.0 ? (p - below) / grid.weights[i] : 0.0;
    return grid.x_min + (static_cast<double>(i) + frac) * grid.dx;
}

}  // namespace varscale
