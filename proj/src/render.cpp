// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "duoseed/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "duoseed/error.hpp"

namespace duoseed {

namespace {

constexpr std::array<std::string_view, 3> kProjectionNames = {"rectilinear", "polar", "lambert"};
constexpr std::array<std::string_view, 7> kMarkerNames = {"point", "circle", "square", "triangle",
                                                          "plus",  "cross",  "diamond"};
constexpr std::array<std::string_view, 7> kMarkerSymbols = {".", "o", "s", "^", "+", "x", "D"};

std::uint8_t channel(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

struct Bounds {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(const Point& p) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    double cx() const { return 0.5 * (min_x + max_x); }
    double cy() const { return 0.5 * (min_y + max_y); }
};

Bounds bounds_of(std::span<const Point> points) {
    Bounds b;
    for (const auto& p : points) b.add(p);
    return b;
}

} // namespace

std::string_view projection_name(ProjectionKind p) noexcept {
    return kProjectionNames[static_cast<std::size_t>(p)];
}

std::optional<ProjectionKind> projection_from_name(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kProjectionNames.size(); ++i)
        if (kProjectionNames[i] == s) return static_cast<ProjectionKind>(i);
    return std::nullopt;
}

std::string_view marker_name(MarkerKind m) noexcept { return kMarkerNames[static_cast<std::size_t>(m)]; }

std::optional<MarkerKind> marker_from_name(std::string_view s) noexcept {
    for (std::size_t i = 0; i < kMarkerNames.size(); ++i)
        if (kMarkerNames[i] == s || kMarkerSymbols[i] == s) return static_cast<MarkerKind>(i);
    return std::nullopt;
}

void PlotSpec::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must lie in [0,1]", "alpha");
    if (!(std::isfinite(spot_size) && spot_size > 0.0))
        throw InvalidParams("spot_size must be > 0", "spot_size");
    if (!(std::isfinite(linewidth) && linewidth >= 0.0))
        throw InvalidParams("linewidth must be >= 0", "linewidth");
    if (!std::isfinite(rotation)) throw InvalidParams("rotation must be finite", "rotation");
    require_color(bgcolor, "bgcolor");
    if (const auto* c = std::get_if<std::string>(&color)) {
        require_color(*c, "color");
    } else {
        const auto& s = std::get<ScalarColors>(color);
        if (s.cmap.empty()) throw InvalidParams("cmap must not be empty", "cmap");
        for (const auto& stop : s.cmap) require_color(stop, "cmap");
        for (double v : s.values)
            if (!std::isfinite(v)) throw InvalidParams("per-point color values must be finite", "color");
    }
}

std::vector<Point> project(std::span<const Point> points, ProjectionKind kind) {
    std::vector<Point> out(points.begin(), points.end());
    switch (kind) {
    case ProjectionKind::Rectilinear: break;
    case ProjectionKind::Polar:
        // (theta, r) -> (r cos theta, r sin theta)
        for (auto& p : out) p = {p.y * std::cos(p.x), p.y * std::sin(p.x)};
        break;
    case ProjectionKind::Lambert:
        for (auto& p : out) p.x = std::asin(std::clamp(p.x, -1.0, 1.0));
        break;
    }
    return out;
}

std::vector<Point> rotate(std::span<const Point> points, double degrees) {
    std::vector<Point> out(points.begin(), points.end());
    if (degrees == 0.0 || out.empty()) return out;
    const Bounds b = bounds_of(points);
    const double cx = b.cx(), cy = b.cy();
    const double rad = degrees * std::numbers::pi / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    for (auto& p : out) {
        const double dx = p.x - cx, dy = p.y - cy;
        p = {cx + c * dx - s * dy, cy + s * dx + c * dy};
    }
    return out;
}

std::vector<Rgba> resolve_colors(const ColorSpec& spec, std::size_t n, double alpha) {
    const std::uint8_t a = channel(alpha * 255.0);
    if (const auto* text = std::get_if<std::string>(&spec)) {
        const Rgb c = require_color(*text, "color");
        return std::vector<Rgba>(n, Rgba{c.r, c.g, c.b, a});
    }
    const auto& sc = std::get<ScalarColors>(spec);
    if (sc.values.size() != n)
        throw InvalidParams("per-point color count " + std::to_string(sc.values.size()) +
                                " does not match point count " + std::to_string(n),
                            "color");
    if (sc.cmap.empty()) throw InvalidParams("cmap must not be empty", "cmap");
    std::vector<Rgb> stops;
    stops.reserve(sc.cmap.size());
    for (const auto& s : sc.cmap) stops.push_back(require_color(s, "cmap"));

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : sc.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const std::size_t segments = stops.size() - 1;
    std::vector<Rgba> out;
    out.reserve(n);
    for (double v : sc.values) {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        if (segments == 0) {
            out.push_back({stops[0].r, stops[0].g, stops[0].b, a});
            continue;
        }
        const double pos = t * static_cast<double>(segments);
        const std::size_t k = std::min(static_cast<std::size_t>(pos), segments - 1);
        const double f = pos - static_cast<double>(k);
        const Rgb& c0 = stops[k];
        const Rgb& c1 = stops[k + 1];
        auto mix = [f](std::uint8_t u, std::uint8_t w) { return channel(u + (w - u) * f); };
        out.push_back({mix(c0.r, c1.r), mix(c0.g, c1.g), mix(c0.b, c1.b), a});
    }
    return out;
}

Layout layout(std::span<const Point> points, const PlotSpec& spec, int width, int height) {
    if (points.empty()) throw RenderError("cannot render an empty artwork", "points");
    if (width <= 0 || height <= 0) throw RenderError("image dimensions must be positive", "dims");
    spec.validate();

    Layout lay;
    lay.width = width;
    lay.height = height;
    lay.background = require_color(spec.bgcolor, "bgcolor");
    lay.uniform = std::holds_alternative<std::string>(spec.color);
    lay.colors = resolve_colors(spec.color, lay.uniform ? 1 : points.size(), spec.alpha);

    lay.canvas = rotate(project(points, spec.projection), spec.rotation);
    const Bounds b = bounds_of(lay.canvas);
    const double dw = b.max_x - b.min_x, dh = b.max_y - b.min_y;
    const double aw = width * (1.0 - 2.0 * kCanvasMargin), ah = height * (1.0 - 2.0 * kCanvasMargin);
    double scale = 1.0;
    if (dw > 0.0 && dh > 0.0)
        scale = std::min(aw / dw, ah / dh);
    else if (dw > 0.0)
        scale = aw / dw;
    else if (dh > 0.0)
        scale = ah / dh;
    const double cx = b.cx(), cy = b.cy();
    const double ox = 0.5 * width, oy = 0.5 * height;
    for (auto& p : lay.canvas) p = {ox + (p.x - cx) * scale, oy - (p.y - cy) * scale};
    return lay;
}

// ---- SVG -----------------------------------------------------------------

namespace {

void put(std::string& out, double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    out.append(buf, r.ptr);
}

void put_hex(std::string& out, const Rgba& c) {
    static constexpr char digits[] = "0123456789abcdef";
    out += '#';
    for (std::uint8_t v : {c.r, c.g, c.b}) {
        out += digits[v >> 4];
        out += digits[v & 15];
    }
}

bool line_marker(MarkerKind m) { return m == MarkerKind::Plus || m == MarkerKind::Cross; }

double line_marker_width(const PlotSpec& spec) {
    return spec.linewidth > 0.0 ? spec.linewidth : spec.spot_size / 4.0;
}

/// Paint attributes for one color: fill for solid markers, stroke for line
/// markers, plus the optional outline.
void put_paint(std::string& out, const Rgba& c, const PlotSpec& spec) {
    const double opacity = c.a / 255.0;
    if (line_marker(spec.marker)) {
        out += " fill=\"none\" stroke=\"";
        put_hex(out, c);
        out += "\" stroke-opacity=\"";
        put(out, opacity);
        out += "\" stroke-width=\"";
        put(out, line_marker_width(spec));
        out += '"';
        return;
    }
    out += " fill=\"";
    put_hex(out, c);
    out += "\" fill-opacity=\"";
    put(out, opacity);
    out += '"';
    if (spec.linewidth > 0.0) {
        out += " stroke=\"";
        put_hex(out, c);
        out += "\" stroke-opacity=\"";
        put(out, opacity);
        out += "\" stroke-width=\"";
        put(out, spec.linewidth);
        out += '"';
    }
}

void put_vertex(std::string& out, double x, double y) {
    put(out, x);
    out += ',';
    put(out, y);
}

void put_marker(std::string& out, const Point& p, const PlotSpec& spec) {
    const double h = spec.spot_size / 2.0;
    switch (spec.marker) {
    case MarkerKind::Point:
    case MarkerKind::Circle:
        out += "<circle cx=\"";
        put(out, p.x);
        out += "\" cy=\"";
        put(out, p.y);
        out += "\" r=\"";
        put(out, h);
        out += '"';
        break;
    case MarkerKind::Square:
        out += "<rect x=\"";
        put(out, p.x - h);
        out += "\" y=\"";
        put(out, p.y - h);
        out += "\" width=\"";
        put(out, spec.spot_size);
        out += "\" height=\"";
        put(out, spec.spot_size);
        out += '"';
        break;
    case MarkerKind::Triangle:
        out += "<polygon points=\"";
        put_vertex(out, p.x, p.y - h);
        out += ' ';
        put_vertex(out, p.x - h, p.y + h);
        out += ' ';
        put_vertex(out, p.x + h, p.y + h);
        out += '"';
        break;
    case MarkerKind::Diamond:
        out += "<polygon points=\"";
        put_vertex(out, p.x, p.y - h);
        out += ' ';
        put_vertex(out, p.x + h, p.y);
        out += ' ';
        put_vertex(out, p.x, p.y + h);
        out += ' ';
        put_vertex(out, p.x - h, p.y);
        out += '"';
        break;
    case MarkerKind::Plus:
        out += "<path d=\"M";
        put_vertex(out, p.x - h, p.y);
        out += 'L';
        put_vertex(out, p.x + h, p.y);
        out += 'M';
        put_vertex(out, p.x, p.y - h);
        out += 'L';
        put_vertex(out, p.x, p.y + h);
        out += '"';
        break;
    case MarkerKind::Cross:
        out += "<path d=\"M";
        put_vertex(out, p.x - h, p.y - h);
        out += 'L';
        put_vertex(out, p.x + h, p.y + h);
        out += 'M';
        put_vertex(out, p.x - h, p.y + h);
        out += 'L';
        put_vertex(out, p.x + h, p.y - h);
        out += '"';
        break;
    }
}

} // namespace

std::string render_svg(std::span<const Point> points, const PlotSpec& spec, int width, int height) {
    const Layout lay = layout(points, spec, width, height);
    std::string out;
    out.reserve(256 + lay.canvas.size() * (lay.uniform ? 56 : 110));
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"";
    out += std::to_string(width);
    out += "\" height=\"";
    out += std::to_string(height);
    out += "\" viewBox=\"0 0 ";
    out += std::to_string(width);
    out += ' ';
    out += std::to_string(height);
    out += "\">\n<rect x=\"0\" y=\"0\" width=\"";
    out += std::to_string(width);
    out += "\" height=\"";
    out += std::to_string(height);
    out += "\" fill=\"";
    put_hex(out, {lay.background.r, lay.background.g, lay.background.b, 255});
    out += "\"/>\n";
    if (lay.uniform) {
        out += "<g";
        put_paint(out, lay.colors.front(), spec);
        out += ">\n";
    } else {
        out += "<g>\n";
    }
    for (std::size_t i = 0; i < lay.canvas.size(); ++i) {
        put_marker(out, lay.canvas[i], spec);
        if (!lay.uniform) put_paint(out, lay.colors[i], spec);
        out += "/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string render_png(std::span<const Point> points, const PlotSpec& spec, int width, int height) {
    const Layout lay = layout(points, spec, width, height);
    const auto pixels = rasterize(lay, spec);
    return encode_png(pixels, width, height);
}

} // namespace duoseed
