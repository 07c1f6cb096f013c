// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "duoseed/persist.hpp"

#include <charconv>
#include <cmath>

#include "duoseed/error.hpp"

namespace duoseed {

using ojson = nlohmann::ordered_json;

namespace {

std::string index_path(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

ojson parse_document(std::string_view bytes) {
    try {
        return ojson::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what(), "$");
    } catch (const nlohmann::json::out_of_range& e) {
        // Literals such as 1e999 overflow while parsing, before a path exists.
        throw ConfigError(std::string("non-finite number in input: ") + e.what(), "$");
    }
}

const ojson& require_object(const ojson& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object at " + path, path);
    return j;
}

double get_number(const ojson& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("expected a number at " + path, path);
    return j.get<double>();
}

int get_int(const ojson& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError("expected an integer at " + path, path);
    return j.get<int>();
}

std::string get_string(const ojson& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError("expected a string at " + path, path);
    return j.get<std::string>();
}

SeedKey get_seed(const ojson& j, const std::string& path) {
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_number_unsigned())
        text = std::to_string(j.get<std::uint64_t>());
    else if (j.is_number_integer())
        text = std::to_string(j.get<std::int64_t>());
    else
        throw ConfigError("expected a seed (string or integer) at " + path, path);
    try {
        return SeedKey(text);
    } catch (const InvalidSeed& e) {
        throw InvalidParams(e.what(), path);
    }
}

std::string equation_text(const ojson& j, const std::string& path) {
    const std::string text = get_string(j, path);
    try {
        return serialize(parse(text, Dialect::Legacy));
    } catch (const ParseError& e) {
        throw ConfigError(std::string("unparseable equation: ") + e.what(), path);
    }
}

void keep_unknown(ojson& extras, std::vector<std::string>* warnings, const std::string& key,
                  const ojson& value, const std::string& path) {
    extras[key] = value;
    if (warnings) warnings->push_back("unknown key " + path + "." + key + " preserved");
}

ojson grammar_to_json(const GenConfig& g) {
    ojson j = ojson::object();
    j["c_min"] = g.c_min;
    j["c_max"] = g.c_max;
    j["d_min"] = g.d_min;
    j["d_max"] = g.d_max;
    j["wrap_p"] = g.wrap_p;
    return j;
}

GenConfig grammar_from_json(const ojson& j, const std::string& path) {
    require_object(j, path);
    GenConfig g;
    for (const auto& [key, value] : j.items()) {
        const std::string p = path + "." + key;
        if (key == "c_min") g.c_min = get_int(value, p);
        else if (key == "c_max") g.c_max = get_int(value, p);
        else if (key == "d_min") g.d_min = get_int(value, p);
        else if (key == "d_max") g.d_max = get_int(value, p);
        else if (key == "wrap_p") g.wrap_p = get_number(value, p);
        else throw ConfigError("unknown key " + p, p);
    }
    try {
        g.validate();
    } catch (const InvalidParams& e) {
        throw InvalidParams(e.what(), path + "." + e.where());
    }
    return g;
}

void put_shortest(std::string& out, double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    const std::string_view s(buf, static_cast<std::size_t>(r.ptr - buf));
    out += s;
    // Keep a fraction or exponent so "-0" and integral values reload as doubles.
    if (s.find_first_of(".e") == std::string_view::npos) out += ".0";
}

} // namespace

// ---- plot ----------------------------------------------------------------

ojson plot_to_json(const PlotSpec& plot) {
    ojson j = ojson::object();
    if (const auto* c = std::get_if<std::string>(&plot.color)) {
        j["color"] = *c;
    } else {
        const auto& s = std::get<ScalarColors>(plot.color);
        j["color"] = s.values;
        j["cmap"] = s.cmap;
    }
    j["bgcolor"] = plot.bgcolor;
    j["spot_size"] = plot.spot_size;
    j["marker"] = std::string(marker_name(plot.marker));
    j["linewidth"] = plot.linewidth;
    j["alpha"] = plot.alpha;
    j["projection"] = std::string(projection_name(plot.projection));
    j["rotation"] = plot.rotation;
    return j;
}

PlotSpec plot_from_json(const ojson& j, PlotSpec base, const std::string& path, ojson* extras,
                        std::vector<std::string>* warnings) {
    require_object(j, path);
    std::optional<std::vector<std::string>> cmap;
    for (const auto& [key, value] : j.items()) {
        const std::string p = path + "." + key;
        if (key == "color") {
            if (value.is_string()) {
                base.color = value.get<std::string>();
            } else if (value.is_array()) {
                ScalarColors sc;
                if (const auto* prev = std::get_if<ScalarColors>(&base.color)) sc.cmap = prev->cmap;
                sc.values.reserve(value.size());
                for (std::size_t i = 0; i < value.size(); ++i)
                    sc.values.push_back(get_number(value[i], index_path(p, i)));
                base.color = std::move(sc);
            } else {
                throw ConfigError("expected a color name or an array of numbers at " + p, p);
            }
        } else if (key == "cmap") {
            if (!value.is_array()) throw ConfigError("expected an array of colors at " + p, p);
            std::vector<std::string> stops;
            for (std::size_t i = 0; i < value.size(); ++i) stops.push_back(get_string(value[i], index_path(p, i)));
            cmap = std::move(stops);
        } else if (key == "bgcolor") {
            base.bgcolor = get_string(value, p);
        } else if (key == "spot_size") {
            base.spot_size = get_number(value, p);
        } else if (key == "marker") {
            const auto name = get_string(value, p);
            const auto m = marker_from_name(name);
            if (!m) throw InvalidParams("unknown marker '" + name + "'", p);
            base.marker = *m;
        } else if (key == "linewidth") {
            base.linewidth = get_number(value, p);
        } else if (key == "alpha") {
            base.alpha = get_number(value, p);
        } else if (key == "projection") {
            const auto name = get_string(value, p);
            const auto proj = projection_from_name(name);
            if (!proj) throw InvalidParams("unknown projection '" + name + "'", p);
            base.projection = *proj;
        } else if (key == "rotation") {
            base.rotation = get_number(value, p);
        } else if (extras) {
            keep_unknown(*extras, warnings, key, value, path);
        } else {
            throw ConfigError("unknown key " + p, p);
        }
    }
    if (cmap) {
        if (auto* sc = std::get_if<ScalarColors>(&base.color))
            sc->cmap = std::move(*cmap);
        else if (warnings)
            warnings->push_back(path + ".cmap ignored: color is not a per-point list");
    }
    try {
        base.validate();
    } catch (const InvalidParams& e) {
        throw InvalidParams(e.what(), path + "." + e.where());
    }
    return base;
}

// ---- config --------------------------------------------------------------

std::string save_config(const ArtworkConfig& cfg) {
    ojson root = ojson::object();
    root["format_version"] = cfg.format_version;
    root["f1"] = cfg.f1;
    root["f2"] = cfg.f2;
    ojson gen = ojson::object();
    gen["seed"] = cfg.generate.seed.text();
    gen["start"] = cfg.generate.start;
    gen["step"] = cfg.generate.step;
    gen["stop"] = cfg.generate.stop;
    gen["mode"] = std::string(mode_name(cfg.generate.mode));
    if (cfg.func_seed) gen["func_seed"] = cfg.func_seed->text();
    if (cfg.grammar) gen["grammar"] = grammar_to_json(*cfg.grammar);
    for (const auto& [k, v] : cfg.extra_generate.items()) gen[k] = v;
    root["generate"] = std::move(gen);
    ojson plot = plot_to_json(cfg.plot);
    for (const auto& [k, v] : cfg.extra_plot.items()) plot[k] = v;
    root["plot"] = std::move(plot);
    for (const auto& [k, v] : cfg.extra_root.items()) root[k] = v;
    return root.dump(2) + "\n";
}

ArtworkConfig load_config(std::string_view bytes) {
    const ojson root = parse_document(bytes);
    require_object(root, "$");
    ArtworkConfig cfg;
    auto* warnings = &cfg.warnings;

    if (const auto it = root.find("format_version"); it != root.end()) {
        cfg.format_version = get_string(*it, "$.format_version");
        if (cfg.format_version != kFormatVersion)
            throw ConfigError("unsupported format_version '" + cfg.format_version + "'", "$.format_version");
    }

    const auto gen_it = root.find("generate");
    if (gen_it == root.end()) throw ConfigError("missing required key $.generate", "$.generate");
    const ojson& gen = require_object(*gen_it, "$.generate");

    for (const char* key : {"f1", "f2"}) {
        std::string path = std::string("$.") + key;
        const ojson* node = nullptr;
        if (const auto it = root.find(key); it != root.end()) {
            node = &*it;
        } else if (const auto nested = gen.find(key); nested != gen.end()) {
            node = &*nested;
            path = std::string("$.generate.") + key;
        }
        if (!node) throw ConfigError("missing required key $." + std::string(key), "$." + std::string(key));
        (key[1] == '1' ? cfg.f1 : cfg.f2) = equation_text(*node, path);
    }

    bool have_seed = false;
    for (const auto& [key, value] : gen.items()) {
        const std::string p = "$.generate." + key;
        if (key == "seed") {
            cfg.generate.seed = get_seed(value, p);
            have_seed = true;
        } else if (key == "start") {
            cfg.generate.start = get_number(value, p);
        } else if (key == "stop") {
            cfg.generate.stop = get_number(value, p);
        } else if (key == "step") {
            cfg.generate.step = get_number(value, p);
        } else if (key == "mode") {
            const auto name = get_string(value, p);
            const auto m = mode_from_name(name);
            if (!m) throw InvalidParams("unknown mode '" + name + "'", p);
            cfg.generate.mode = *m;
        } else if (key == "func_seed") {
            cfg.func_seed = get_seed(value, p);
        } else if (key == "grammar") {
            cfg.grammar = grammar_from_json(value, p);
        } else if (key == "f1" || key == "f2") {
            // legacy location, consumed above
        } else {
            keep_unknown(cfg.extra_generate, warnings, key, value, "$.generate");
        }
    }
    if (!have_seed) throw ConfigError("missing required key $.generate.seed", "$.generate.seed");
    try {
        cfg.generate.validate();
    } catch (const InvalidParams& e) {
        throw InvalidParams(e.what(), "$.generate." + e.where());
    }

    if (const auto it = root.find("plot"); it != root.end())
        cfg.plot = plot_from_json(*it, PlotSpec{}, "$.plot", &cfg.extra_plot, warnings);

    for (const auto& [key, value] : root.items()) {
        if (key == "format_version" || key == "f1" || key == "f2" || key == "generate" || key == "plot" ||
            key == "matplotlib_version")
            continue;
        keep_unknown(cfg.extra_root, warnings, key, value, "$");
    }
    return cfg;
}

// ---- data ----------------------------------------------------------------

std::string save_data(const ArtworkData& data) {
    const PointSet& ps = data.points;
    std::string out;
    out.reserve(64 + ps.size() * 56);
    out += "{\n  \"format_version\": ";
    out += ojson(data.format_version).dump();
    out += ",\n  \"dropped\": ";
    out += std::to_string(ps.dropped);
    out += ",\n  \"points\": [";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        out += i == 0 ? "\n    [" : ",\n    [";
        put_shortest(out, ps.points[i].x);
        out += ',';
        put_shortest(out, ps.points[i].y);
        out += ']';
    }
    out += ps.size() ? "\n  ],\n" : "],\n";
    out += "  \"source_index\": [";
    for (std::size_t i = 0; i < ps.source_index.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ps.source_index[i]);
    }
    out += "],\n  \"plot\": ";
    out += plot_to_json(data.plot).dump();
    out += "\n}\n";
    return out;
}

ArtworkData load_data(std::string_view bytes) {
    const ojson root = parse_document(bytes);
    require_object(root, "$");
    ArtworkData data;
    if (const auto it = root.find("format_version"); it != root.end()) {
        data.format_version = get_string(*it, "$.format_version");
        if (data.format_version != kFormatVersion)
            throw ConfigError("unsupported format_version '" + data.format_version + "'", "$.format_version");
    }
    const auto pts = root.find("points");
    if (pts == root.end()) throw ConfigError("missing required key $.points", "$.points");
    if (!pts->is_array()) throw ConfigError("expected an array at $.points", "$.points");
    PointSet& ps = data.points;
    ps.points.reserve(pts->size());
    for (std::size_t i = 0; i < pts->size(); ++i) {
        const std::string p = index_path("$.points", i);
        const ojson& pair = (*pts)[i];
        if (!pair.is_array() || pair.size() != 2) throw ConfigError("expected an [x, y] pair at " + p, p);
        Point pt;
        for (std::size_t k = 0; k < 2; ++k) {
            const std::string pk = index_path(p, k);
            const double v = get_number(pair[k], pk);
            if (!std::isfinite(v)) throw ConfigError("non-finite coordinate at " + pk, pk);
            (k == 0 ? pt.x : pt.y) = v;
        }
        ps.points.push_back(pt);
    }
    if (const auto it = root.find("source_index"); it != root.end()) {
        if (!it->is_array() || it->size() != ps.size())
            throw ConfigError("$.source_index must list one index per point", "$.source_index");
        ps.source_index.reserve(ps.size());
        for (std::size_t i = 0; i < it->size(); ++i) {
            const ojson& v = (*it)[i];
            if (!v.is_number_unsigned()) {
                const std::string p = index_path("$.source_index", i);
                throw ConfigError("expected a non-negative integer at " + p, p);
            }
            ps.source_index.push_back(v.get<std::uint64_t>());
        }
    } else {
        for (std::size_t i = 0; i < ps.size(); ++i) ps.source_index.push_back(i + 1);
    }
    if (const auto it = root.find("dropped"); it != root.end()) {
        if (!it->is_number_unsigned()) throw ConfigError("expected a non-negative integer at $.dropped", "$.dropped");
        ps.dropped = it->get<std::uint64_t>();
    }
    if (const auto it = root.find("plot"); it != root.end()) {
        ojson ignored = ojson::object();
        data.plot = plot_from_json(*it, PlotSpec{}, "$.plot", &ignored);
    }
    return data;
}

// ---- regeneration ----------------------------------------------------------

std::vector<double> align_scalars(const std::vector<double>& values, std::size_t n) {
    if (values.size() == n) return values;
    if (values.empty()) throw InvalidParams("per-point color list is empty", "color");
    std::vector<double> out(n);
    const std::uint64_t m = values.size();
    for (std::size_t j = 0; j < n; ++j) out[j] = values[static_cast<std::size_t>(j * m / n)];
    return out;
}

namespace {

void align_plot(Artwork& a) {
    a.plot = a.config.plot;
    if (auto* sc = std::get_if<ScalarColors>(&a.plot.color)) {
        if (sc->values.size() != a.points.size()) {
            a.config.warnings.push_back("per-point colors resampled from " + std::to_string(sc->values.size()) +
                                        " to " + std::to_string(a.points.size()) + " values");
            sc->values = align_scalars(sc->values, a.points.size());
        }
    }
}

} // namespace

std::pair<Equation, Equation> generate_equations(const SeedKey& func_seed, const GenConfig& grammar) {
    Rng rng(func_seed);
    Equation f1 = generate_equation(rng, grammar);
    Equation f2 = generate_equation(rng, grammar);
    return {std::move(f1), std::move(f2)};
}

Artwork create_artwork(const SeedKey& func_seed, const GenConfig& grammar, const GenerateParams& params,
                       const PlotSpec& plot) {
    const auto [f1, f2] = generate_equations(func_seed, grammar);
    Artwork a;
    a.config.f1 = serialize(f1);
    a.config.f2 = serialize(f2);
    a.config.generate = params;
    a.config.func_seed = func_seed;
    a.config.grammar = grammar;
    a.config.plot = plot;
    a.points = generate_points(f1, f2, params);
    align_plot(a);
    return a;
}

Artwork regenerate(const ArtworkConfig& cfg) {
    const Equation f1 = parse(cfg.f1, Dialect::Legacy);
    const Equation f2 = parse(cfg.f2, Dialect::Legacy);
    Artwork a;
    a.config = cfg;
    a.points = generate_points(f1, f2, cfg.generate);
    align_plot(a);
    return a;
}

} // namespace duoseed
