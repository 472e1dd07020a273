// SPDX-License-Identifier: MIT
/**
 * @file core_model.hpp
 * @brief Domain types, uniform grids and finite-difference operators.
 *
 * Everything here is a value type. A Field owns its samples and is never
 * mutated after construction, so fields and trajectories can be shared
 * freely between threads.
 */

#pragma once

#include "fhd/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fhd {

/// Travelling-wave speed and asymptotic background level of a soliton.
struct SolitonParams {
    double lambda_speed = 0.5;
    double v0 = 1.0;

    void validate() const {
        if (!std::isfinite(lambda_speed) || !std::isfinite(v0)) {
            throw DomainError("soliton parameters must be finite");
        }
        if (v0 <= 0.0) {
            throw DomainError("background level v0 must be positive");
        }
    }

    /// Simple root of the pseudopotential, the bottom of the depression.
    [[nodiscard]] double turning_value() const { return lambda_speed / (v0 * v0); }

    /// Linearized decay rate of the tails, sqrt((v0^3 - Lambda) / v0^3).
    [[nodiscard]] double decay_rate() const {
        const double v03 = v0 * v0 * v0;
        return std::sqrt((v03 - lambda_speed) / v03);
    }
};

/**
 * Uniform one-dimensional mesh.
 *
 * Node i sits at x_min + i*dx. Periodic grids identify x_max with x_min and
 * leave the right endpoint out, so dx = (x_max - x_min)/n; otherwise both
 * endpoints are nodes and dx = (x_max - x_min)/(n - 1).
 */
class Grid1D {
public:
    static constexpr std::size_t kMinNodes = 8;

    Grid1D(double x_min, double x_max, std::size_t n, bool periodic)
        : x_min_(x_min), x_max_(x_max), n_(n), periodic_(periodic) {
        if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
            throw DomainError("grid bounds must be finite");
        }
        if (!(x_max > x_min)) {
            throw DomainError("grid requires x_max > x_min");
        }
        if (n < kMinNodes) {
            throw DomainError("grid requires at least 8 nodes, got " + std::to_string(n));
        }
        dx_ = (x_max - x_min) / static_cast<double>(periodic ? n : n - 1);
    }

    [[nodiscard]] double x_min() const { return x_min_; }
    [[nodiscard]] double x_max() const { return x_max_; }
    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] bool periodic() const { return periodic_; }
    [[nodiscard]] double dx() const { return dx_; }
    [[nodiscard]] double length() const { return x_max_ - x_min_; }

    [[nodiscard]] double node(std::size_t i) const {
        return x_min_ + static_cast<double>(i) * dx_;
    }

    [[nodiscard]] std::vector<double> nodes() const {
        std::vector<double> x(n_);
        for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
        return x;
    }

    /// Same domain and convention with a different node count.
    [[nodiscard]] Grid1D with_size(std::size_t n) const {
        return Grid1D(x_min_, x_max_, n, periodic_);
    }

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    bool periodic_;
    double dx_ = 0.0;
};

inline Grid1D make_grid(double x_min, double x_max, std::size_t n, bool periodic) {
    return Grid1D(x_min, x_max, n, periodic);
}

/// Samples of v on the nodes of a grid at a single instant.
class Field {
public:
    Field(Grid1D grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw DomainError("field has " + std::to_string(values_.size()) +
                              " values for a grid of " + std::to_string(grid_.size()) +
                              " nodes");
        }
        for (double v : values_) {
            if (!std::isfinite(v)) throw DomainError("field values must be finite");
        }
    }

    template <typename Fn>
    static Field from_function(const Grid1D& grid, Fn&& fn) {
        std::vector<double> values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) values[i] = fn(grid.node(i));
        return Field(grid, std::move(values));
    }

    static Field constant(const Grid1D& grid, double value) {
        return Field(grid, std::vector<double>(grid.size(), value));
    }

    [[nodiscard]] const Grid1D& grid() const { return grid_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    [[nodiscard]] double min() const { return *std::min_element(values_.begin(), values_.end()); }
    [[nodiscard]] double max() const { return *std::max_element(values_.begin(), values_.end()); }

    [[nodiscard]] bool all_positive() const {
        return std::all_of(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
    }

    void require_positive(const char* what) const {
        if (!all_positive()) throw DomainError(std::string(what) + " requires a strictly positive field");
    }

private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Time-ordered frames sharing one grid.
class Trajectory {
public:
    Trajectory() = default;

    void append(double t, Field frame) {
        if (!frames_.empty()) {
            if (!(t > times_.back())) throw DomainError("trajectory times must be strictly increasing");
            if (!(frame.grid() == frames_.front().grid())) {
                throw DomainError("trajectory frames must share one grid");
            }
        }
        times_.push_back(t);
        frames_.push_back(std::move(frame));
    }

    [[nodiscard]] std::span<const double> times() const { return times_; }
    [[nodiscard]] const std::vector<Field>& frames() const { return frames_; }
    [[nodiscard]] std::size_t size() const { return frames_.size(); }
    [[nodiscard]] bool empty() const { return frames_.empty(); }
    [[nodiscard]] const Field& front() const { return frames_.front(); }
    [[nodiscard]] const Field& back() const { return frames_.back(); }
    [[nodiscard]] const Grid1D& grid() const { return frames_.front().grid(); }

private:
    std::vector<double> times_;
    std::vector<Field> frames_;
};

namespace detail {

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
    const auto m = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

// 4th-order central stencils:
//   f'   = (f[-2] - 8 f[-1] + 8 f[+1] - f[+2]) / (12 dx)
//   f''' = (f[-3] - 8 f[-2] + 13 f[-1] - 13 f[+1] + 8 f[+2] - f[+3]) / (8 dx^3)
inline void periodic_d1(std::span<const double> f, double dx, std::span<double> out) {
    const std::size_t n = f.size();
    const double s = 1.0 / (12.0 * dx);
    auto at = [&](std::size_t i, std::ptrdiff_t k) { return f[wrap(static_cast<std::ptrdiff_t>(i) + k, n)]; };
    for (std::size_t i = 0; i < 2; ++i) {
        out[i] = (at(i, -2) - 8.0 * at(i, -1) + 8.0 * at(i, 1) - at(i, 2)) * s;
        const std::size_t j = n - 1 - i;
        out[j] = (at(j, -2) - 8.0 * at(j, -1) + 8.0 * at(j, 1) - at(j, 2)) * s;
    }
    for (std::size_t i = 2; i + 2 < n; ++i) {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    }
}

inline void periodic_d3(std::span<const double> f, double dx, std::span<double> out) {
    const std::size_t n = f.size();
    const double s = 1.0 / (8.0 * dx * dx * dx);
    auto stencil = [&](std::size_t i) {
        auto at = [&](std::ptrdiff_t k) { return f[wrap(static_cast<std::ptrdiff_t>(i) + k, n)]; };
        return (at(-3) - 8.0 * at(-2) + 13.0 * at(-1) - 13.0 * at(1) + 8.0 * at(2) - at(3)) * s;
    };
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = stencil(i);
        out[n - 1 - i] = stencil(n - 1 - i);
    }
    for (std::size_t i = 3; i + 3 < n; ++i) {
        out[i] = (f[i - 3] - 8.0 * f[i - 2] + 13.0 * f[i - 1] - 13.0 * f[i + 1] + 8.0 * f[i + 2] -
                  f[i + 3]) *
                 s;
    }
}

// Non-periodic first derivative: central interior, 4th-order one-sided closures.
inline void bounded_d1(std::span<const double> f, double dx, std::span<double> out) {
    const std::size_t n = f.size();
    const double s = 1.0 / (12.0 * dx);
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    }
    out[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * s;
    out[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * s;
}

}  // namespace detail

/**
 * Span-level derivative kernel used by the time integrator to avoid
 * per-step allocation. `out` must not alias `f`.
 */
inline void derivative_into(std::span<const double> f, const Grid1D& grid, int order,
                            std::span<double> out) {
    if (f.size() != grid.size() || out.size() != grid.size()) {
        throw DomainError("derivative buffers must match the grid size");
    }
    switch (order) {
        case 1:
            if (grid.periodic()) {
                detail::periodic_d1(f, grid.dx(), out);
            } else {
                detail::bounded_d1(f, grid.dx(), out);
            }
            return;
        case 3:
            if (!grid.periodic()) {
                throw DomainError("third derivative is only supported on periodic grids");
            }
            detail::periodic_d3(f, grid.dx(), out);
            return;
        default:
            throw DomainError("derivative order must be 1 or 3, got " + std::to_string(order));
    }
}

/// 4th-order accurate derivative of order 1 or 3.
inline Field derivative(const Field& field, int order) {
    std::vector<double> out(field.size());
    derivative_into(field.values(), field.grid(), order, out);
    return Field(field.grid(), std::move(out));
}

}  // namespace fhd
