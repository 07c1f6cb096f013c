// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "duoseed/render.hpp"

namespace duoseed {

namespace {

constexpr int kSubsamples = 4; // per axis

struct Segment {
    Point a, b;
};

double segment_distance(const Point& p, const Segment& s) {
    const double vx = s.b.x - s.a.x, vy = s.b.y - s.a.y;
    const double wx = p.x - s.a.x, wy = p.y - s.a.y;
    const double len2 = vx * vx + vy * vy;
    const double t = len2 > 0.0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
    const double dx = wx - t * vx, dy = wy - t * vy;
    return std::sqrt(dx * dx + dy * dy);
}

bool inside_polygon(const Point& p, const std::array<Point, 4>& v, std::size_t n) {
    bool in = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y) &&
            p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x)
            in = !in;
    }
    return in;
}

/// Marker geometry around one canvas position. The outline is rasterized by
/// growing the shape by half the line width.
struct Shape {
    MarkerKind kind;
    Point c;
    double h;      // half extent
    double grow;   // outline half width for solid markers
    double half_w; // half stroke width for line markers
    std::array<Point, 4> poly{};
    std::size_t corners = 0;
    std::array<Segment, 2> lines{};

    Shape(MarkerKind k, const Point& center, const PlotSpec& spec) : kind(k), c(center) {
        h = spec.spot_size / 2.0;
        grow = spec.linewidth / 2.0;
        half_w = (spec.linewidth > 0.0 ? spec.linewidth : spec.spot_size / 4.0) / 2.0;
        switch (kind) {
        case MarkerKind::Triangle:
            poly = {Point{c.x, c.y - h}, Point{c.x - h, c.y + h}, Point{c.x + h, c.y + h}, Point{}};
            corners = 3;
            break;
        case MarkerKind::Diamond:
            poly = {Point{c.x, c.y - h}, Point{c.x + h, c.y}, Point{c.x, c.y + h}, Point{c.x - h, c.y}};
            corners = 4;
            break;
        case MarkerKind::Plus:
            lines = {Segment{{c.x - h, c.y}, {c.x + h, c.y}}, Segment{{c.x, c.y - h}, {c.x, c.y + h}}};
            break;
        case MarkerKind::Cross:
            lines = {Segment{{c.x - h, c.y - h}, {c.x + h, c.y + h}},
                     Segment{{c.x - h, c.y + h}, {c.x + h, c.y - h}}};
            break;
        default: break;
        }
    }

    double reach() const {
        const bool line = kind == MarkerKind::Plus || kind == MarkerKind::Cross;
        return h + (line ? half_w : grow);
    }

    double area() const {
        const double r = h + grow;
        switch (kind) {
        case MarkerKind::Point:
        case MarkerKind::Circle: return std::numbers::pi * r * r;
        case MarkerKind::Square: return 4.0 * r * r;
        case MarkerKind::Triangle:
        case MarkerKind::Diamond: return 2.0 * r * r;
        case MarkerKind::Plus:
        case MarkerKind::Cross: return 2.0 * (2.0 * h) * (2.0 * half_w);
        }
        return 0.0;
    }

    bool contains(const Point& p) const {
        const double dx = p.x - c.x, dy = p.y - c.y;
        switch (kind) {
        case MarkerKind::Point:
        case MarkerKind::Circle: {
            const double r = h + grow;
            return dx * dx + dy * dy <= r * r;
        }
        case MarkerKind::Square: return std::fabs(dx) <= h + grow && std::fabs(dy) <= h + grow;
        case MarkerKind::Triangle:
        case MarkerKind::Diamond: {
            if (inside_polygon(p, poly, corners)) return true;
            if (grow <= 0.0) return false;
            for (std::size_t i = 0, j = corners - 1; i < corners; j = i++)
                if (segment_distance(p, {poly[j], poly[i]}) <= grow) return true;
            return false;
        }
        case MarkerKind::Plus:
        case MarkerKind::Cross:
            return segment_distance(p, lines[0]) <= half_w || segment_distance(p, lines[1]) <= half_w;
        }
        return false;
    }
};

} // namespace

std::vector<std::uint8_t> rasterize(const Layout& lay, const PlotSpec& spec) {
    const int w = lay.width, h = lay.height;
    std::vector<float> rgb(static_cast<std::size_t>(w) * h * 3);
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = lay.background.r;
        rgb[i + 1] = lay.background.g;
        rgb[i + 2] = lay.background.b;
    }
    auto blend = [&](int px, int py, const Rgba& c, double coverage) {
        const float a = static_cast<float>(c.a / 255.0 * coverage);
        float* d = &rgb[(static_cast<std::size_t>(py) * w + px) * 3];
        d[0] += (c.r - d[0]) * a;
        d[1] += (c.g - d[1]) * a;
        d[2] += (c.b - d[2]) * a;
    };

    constexpr double inv = 1.0 / (kSubsamples * kSubsamples);
    for (std::size_t i = 0; i < lay.canvas.size(); ++i) {
        const Shape shape(spec.marker, lay.canvas[i], spec);
        const Rgba& color = lay.color_of(i);
        const double r = shape.reach();
        const int x0 = std::max(0, static_cast<int>(std::floor(shape.c.x - r)));
        const int x1 = std::min(w - 1, static_cast<int>(std::floor(shape.c.x + r)));
        const int y0 = std::max(0, static_cast<int>(std::floor(shape.c.y - r)));
        const int y1 = std::min(h - 1, static_cast<int>(std::floor(shape.c.y + r)));
        bool hit = false;
        for (int py = y0; py <= y1; ++py) {
            for (int px = x0; px <= x1; ++px) {
                int n = 0;
                for (int sy = 0; sy < kSubsamples; ++sy)
                    for (int sx = 0; sx < kSubsamples; ++sx)
                        n += shape.contains({px + (sx + 0.5) / kSubsamples, py + (sy + 0.5) / kSubsamples});
                if (n > 0) {
                    hit = true;
                    blend(px, py, color, n * inv);
                }
            }
        }
        // Markers smaller than the subsample pitch still leave their area.
        if (!hit) {
            const int px = static_cast<int>(std::floor(shape.c.x));
            const int py = static_cast<int>(std::floor(shape.c.y));
            if (px >= 0 && px < w && py >= 0 && py < h) blend(px, py, color, std::min(1.0, shape.area()));
        }
    }

    std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h * 4);
    for (std::size_t p = 0, q = 0; q < out.size(); p += 3, q += 4) {
        for (int k = 0; k < 3; ++k)
            out[q + k] = static_cast<std::uint8_t>(std::clamp(std::lround(rgb[p + k]), 0L, 255L));
        out[q + 3] = 255;
    }
    return out;
}

} // namespace duoseed
