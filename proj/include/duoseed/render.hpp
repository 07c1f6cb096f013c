// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "duoseed/genspace.hpp"

namespace duoseed {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct Rgba {
    std::uint8_t r = 0, g = 0, b = 0, a = 255;
    friend bool operator==(const Rgba&, const Rgba&) = default;
};

/// `#rgb`, `#rrggbb`, single-letter base codes (b g r c m y k w) or a CSS
/// keyword (case-insensitive). See docs/colors.md.
std::optional<Rgb> parse_color(std::string_view text) noexcept;
/// parse_color or InvalidParams("unknown color", where).
Rgb require_color(std::string_view text, const std::string& where);
std::size_t named_color_count() noexcept;

enum class ProjectionKind : std::uint8_t { Rectilinear, Polar, Lambert };
enum class MarkerKind : std::uint8_t { Point, Circle, Square, Triangle, Plus, Cross, Diamond };

std::string_view projection_name(ProjectionKind p) noexcept;
std::optional<ProjectionKind> projection_from_name(std::string_view s) noexcept;
std::string_view marker_name(MarkerKind m) noexcept;
/// Accepts the names above and matplotlib symbols (. o s ^ + x D).
std::optional<MarkerKind> marker_from_name(std::string_view s) noexcept;

/// Per-point scalars mapped through a gradient whose stops sit at equal
/// parameter intervals.
struct ScalarColors {
    std::vector<double> values;
    std::vector<std::string> cmap{"black", "white"};
    friend bool operator==(const ScalarColors&, const ScalarColors&) = default;
};

/// Either one color text for every point or per-point scalars.
using ColorSpec = std::variant<std::string, ScalarColors>;

struct PlotSpec {
    ColorSpec color = std::string("black");
    std::string bgcolor = "white";
    double spot_size = 1.0; // marker extent in canvas units
    MarkerKind marker = MarkerKind::Point;
    double linewidth = 0.0; // outline width in canvas units
    double alpha = 0.1;
    ProjectionKind projection = ProjectionKind::Rectilinear;
    double rotation = 0.0; // degrees, counter-clockwise

    /// Throws InvalidParams naming the field ("alpha", "spot_size", ...).
    void validate() const;
    friend bool operator==(const PlotSpec&, const PlotSpec&) = default;
};

std::vector<Point> project(std::span<const Point> points, ProjectionKind kind);

/// Counter-clockwise rotation about the center of the bounding box.
std::vector<Point> rotate(std::span<const Point> points, double degrees);

/**
 * One RGBA per point. Scalars are min-max normalized (all equal -> 0.5) and
 * interpolated linearly between neighbouring stops; channels are rounded
 * half away from zero. The alpha channel is round(alpha * 255).
 */
std::vector<Rgba> resolve_colors(const ColorSpec& spec, std::size_t n, double alpha = 1.0);

/// Projected, rotated and fitted geometry shared by both image encoders.
struct Layout {
    int width = 0;
    int height = 0;
    Rgb background;
    std::vector<Point> canvas; // canvas coordinates, y down
    std::vector<Rgba> colors;  // one per point, or a single entry when uniform
    bool uniform = true;

    const Rgba& color_of(std::size_t i) const { return uniform ? colors.front() : colors[i]; }
};

inline constexpr double kCanvasMargin = 0.05;

/// Throws RenderError on empty input or non-positive dimensions.
Layout layout(std::span<const Point> points, const PlotSpec& spec, int width, int height);

std::string render_svg(std::span<const Point> points, const PlotSpec& spec, int width, int height);
std::string render_png(std::span<const Point> points, const PlotSpec& spec, int width, int height);

/// Straight (non-premultiplied) 8-bit RGBA, row-major.
std::vector<std::uint8_t> rasterize(const Layout& lay, const PlotSpec& spec);
/// 8-bit RGBA, non-interlaced.
std::string encode_png(std::span<const std::uint8_t> rgba, int width, int height);

} // namespace duoseed
