// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "duoseed/detrand.hpp"
#include "duoseed/expr.hpp"

namespace duoseed {

enum class ModeKind : std::uint8_t {
    F1_VS_F2, F2_VS_F1, F2_VS_INDEX, F1_VS_INDEX, INDEX_VS_F1, INDEX_VS_F2,
    F1_VS_X1, F2_VS_X1, F1_VS_X2, F2_VS_X2, X1_VS_F1, X1_VS_F2, X2_VS_F1, X2_VS_F2,
};

inline constexpr std::size_t kModeCount = 14;

/// Lower-case name ("f1_vs_f2").
std::string_view mode_name(ModeKind m) noexcept;
/// Case-insensitive lookup.
std::optional<ModeKind> mode_from_name(std::string_view name) noexcept;

struct GenerateParams {
    SeedKey seed{"0"};
    double start = -std::numbers::pi;
    double stop = std::numbers::pi;
    double step = 0.01;
    ModeKind mode = ModeKind::F1_VS_F2;

    /// Throws InvalidParams with where() = "start" / "stop" / "step".
    void validate() const;
    friend bool operator==(const GenerateParams&, const GenerateParams&) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct PointSet {
    std::vector<Point> points;
    std::vector<std::uint64_t> source_index; // 1-based grid traversal index
    std::uint64_t dropped = 0;

    std::size_t size() const noexcept { return points.size(); }
    friend bool operator==(const PointSet&, const PointSet&) = default;
};

/// I = [start + k*step, k = 0 .. floor((stop-start)/step) - 1].
std::vector<double> build_interval(double start, double stop, double step);

/// Prime-space grid I x I in x-major order: outer loop over x, inner over y.
std::vector<Point> build_grid(double start, double stop, double step);

/// The mode table: output pair from the grid point, its 1-based index and
/// the two function values.
Point map_mode(ModeKind mode, const Point& xy, std::uint64_t index, double f1, double f2) noexcept;

/// Observer invoked for every grid point with the raw (f1, f2) values,
/// before mode mapping and filtering.
using EvaluationTap = std::function<void(std::uint64_t index, double f1, double f2)>;

/**
 * Maps the grid through (f1, f2). One stream seeded from params.seed; per
 * point f1 is evaluated before f2, both in every mode. Points whose mapped
 * pair is non-finite are dropped and counted after the stream has advanced.
 */
PointSet transform(const std::vector<Point>& grid, const Equation& f1, const Equation& f2,
                   const GenerateParams& params, const EvaluationTap& tap = {});

/// build_grid + transform.
PointSet generate_points(const Equation& f1, const Equation& f2, const GenerateParams& params);

} // namespace duoseed
