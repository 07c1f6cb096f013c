// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "duoseed/genspace.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "duoseed/error.hpp"

namespace duoseed {

namespace {

constexpr std::array<std::string_view, kModeCount> kModeNames = {
    "f1_vs_f2", "f2_vs_f1", "f2_vs_index", "f1_vs_index", "index_vs_f1", "index_vs_f2", "f1_vs_x1",
    "f2_vs_x1", "f1_vs_x2", "f2_vs_x2",    "x1_vs_f1",    "x1_vs_f2",    "x2_vs_f1",   "x2_vs_f2",
};

std::size_t interval_size(double start, double stop, double step) {
    const double n = std::floor((stop - start) / step);
    return n >= 1.0 ? static_cast<std::size_t>(n) : 0;
}

} // namespace

std::string_view mode_name(ModeKind m) noexcept { return kModeNames[static_cast<std::size_t>(m)]; }

std::optional<ModeKind> mode_from_name(std::string_view name) noexcept {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (std::size_t i = 0; i < kModeNames.size(); ++i)
        if (kModeNames[i] == lower) return static_cast<ModeKind>(i);
    return std::nullopt;
}

void GenerateParams::validate() const {
    if (!std::isfinite(start)) throw InvalidParams("start must be finite", "start");
    if (!std::isfinite(stop)) throw InvalidParams("stop must be finite", "stop");
    if (!(std::isfinite(step) && step > 0.0)) throw InvalidParams("step must be > 0", "step");
    if (!(stop > start)) throw InvalidParams("stop must be greater than start", "stop");
    if (interval_size(start, stop, step) == 0)
        throw InvalidParams("interval is empty: floor((stop-start)/step) < 1", "step");
}

std::vector<double> build_interval(double start, double stop, double step) {
    GenerateParams probe;
    probe.start = start;
    probe.stop = stop;
    probe.step = step;
    probe.validate();
    const std::size_t n = interval_size(start, stop, step);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = start + static_cast<double>(k) * step;
    return out;
}

std::vector<Point> build_grid(double start, double stop, double step) {
    const auto axis = build_interval(start, stop, step);
    std::vector<Point> grid;
    grid.reserve(axis.size() * axis.size());
    for (double x : axis)
        for (double y : axis) grid.push_back({x, y});
    return grid;
}

Point map_mode(ModeKind mode, const Point& p, std::uint64_t index, double f1, double f2) noexcept {
    const double i = static_cast<double>(index);
    switch (mode) {
    case ModeKind::F1_VS_F2: return {f1, f2};
    case ModeKind::F2_VS_F1: return {f2, f1};
    case ModeKind::F2_VS_INDEX: return {f2, i};
    case ModeKind::F1_VS_INDEX: return {f1, i};
    case ModeKind::INDEX_VS_F1: return {i, f1};
    case ModeKind::INDEX_VS_F2: return {i, f2};
    case ModeKind::F1_VS_X1: return {f1, p.x};
    case ModeKind::F2_VS_X1: return {f2, p.x};
    case ModeKind::F1_VS_X2: return {f1, p.y};
    case ModeKind::F2_VS_X2: return {f2, p.y};
    case ModeKind::X1_VS_F1: return {p.x, f1};
    case ModeKind::X1_VS_F2: return {p.x, f2};
    case ModeKind::X2_VS_F1: return {p.y, f1};
    case ModeKind::X2_VS_F2: return {p.y, f2};
    }
    return {f1, f2};
}

PointSet transform(const std::vector<Point>& grid, const Equation& f1, const Equation& f2,
                   const GenerateParams& params, const EvaluationTap& tap) {
    params.validate();
    if (grid.empty()) throw InvalidParams("grid is empty", "step");
    Rng rng(params.seed);
    PointSet out;
    out.points.reserve(grid.size());
    out.source_index.reserve(grid.size());
    std::uint64_t index = 0;
    for (const Point& p : grid) {
        ++index;
        const double v1 = evaluate(f1, p.x, p.y, rng);
        const double v2 = evaluate(f2, p.x, p.y, rng);
        if (tap) tap(index, v1, v2);
        const Point q = map_mode(params.mode, p, index, v1, v2);
        if (std::isfinite(q.x) && std::isfinite(q.y)) {
            out.points.push_back(q);
            out.source_index.push_back(index);
        } else {
            ++out.dropped;
        }
    }
    return out;
}

PointSet generate_points(const Equation& f1, const Equation& f2, const GenerateParams& params) {
    params.validate();
    return transform(build_grid(params.start, params.stop, params.step), f1, f2, params);
}

} // namespace duoseed
