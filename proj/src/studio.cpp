// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "duoseed/studio.hpp"

#include <charconv>
#include <cstdio>
#include <random>

#include "httplib.h"

#include "duoseed/error.hpp"

namespace duoseed {

using ojson = nlohmann::ordered_json;

std::string random_seed_text() {
    std::random_device rd;
    return std::to_string(static_cast<std::uint32_t>(rd()));
}

namespace {

constexpr int kDefaultSide = 1000;
constexpr int kMaxSide = 8192;

StudioService::Reply error_reply(int status, const std::string& message, const std::string& path) {
    ojson body = ojson::object();
    body["error"] = message;
    body["path"] = path;
    return {status, "application/json", body.dump() + "\n"};
}

ojson parse_body(std::string_view body) {
    try {
        return ojson::parse(body.begin(), body.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what(), "$");
    } catch (const nlohmann::json::out_of_range& e) {
        throw ConfigError(std::string("non-finite number in input: ") + e.what(), "$");
    }
}

const ojson& object_at(const ojson& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object at " + path, path);
    return j;
}

double number_at(const ojson& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("expected a number at " + path, path);
    return j.get<double>();
}

int int_at(const ojson& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError("expected an integer at " + path, path);
    return j.get<int>();
}

SeedKey seed_at(const ojson& j, const std::string& path) {
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

int side_at(const ojson& j, const std::string& path) {
    const int v = int_at(j, path);
    if (v < 1 || v > kMaxSide) throw InvalidParams(path + " must be in [1, 8192]", path);
    return v;
}

std::size_t downsample_at(const ojson& j, const std::string& path) {
    const int v = int_at(j, path);
    if (v < 1) throw InvalidParams("downsample must be >= 1", path);
    return static_cast<std::size_t>(v);
}

GenConfig grammar_at(const ojson& j, const std::string& path) {
    object_at(j, path);
    GenConfig g;
    for (const auto& [key, value] : j.items()) {
        const std::string p = path + "." + key;
        if (key == "c_min") g.c_min = int_at(value, p);
        else if (key == "c_max") g.c_max = int_at(value, p);
        else if (key == "d_min") g.d_min = int_at(value, p);
        else if (key == "d_max") g.d_max = int_at(value, p);
        else if (key == "wrap_p") g.wrap_p = number_at(value, p);
        else throw ConfigError("unknown key " + p, p);
    }
    try {
        g.validate();
    } catch (const InvalidParams& e) {
        throw InvalidParams(e.what(), path + "." + e.where());
    }
    return g;
}

void put_number(std::string& out, double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, r.ptr);
}

std::string token_for(const std::string& config_text, int width, int height) {
    const std::string key = config_text + "|" + std::to_string(width) + "x" + std::to_string(height);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
    return hex;
}

template <class F>
StudioService::Reply guarded(F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        return error_reply(400, e.what(), e.where());
    } catch (const ConfigError& e) {
        return error_reply(400, e.what(), e.where());
    } catch (const InvalidParams& e) {
        return error_reply(422, e.what(), e.where());
    } catch (const InvalidSeed& e) {
        return error_reply(422, e.what(), e.where());
    } catch (const RenderError& e) {
        return error_reply(422, e.what(), e.where());
    } catch (const nlohmann::json::exception& e) {
        return error_reply(400, e.what(), "$");
    } catch (const std::exception& e) {
        return error_reply(500, e.what(), "");
    }
}

} // namespace

StudioService::StudioService(std::size_t cache_capacity) : capacity_(cache_capacity ? cache_capacity : 1) {}

StudioService::Reply StudioService::generate(std::string_view body) {
    return guarded([&] {
        const ojson req = parse_body(body);
        object_at(req, "$");

        std::optional<SeedKey> func_seed, seed;
        GenerateParams params;
        GenConfig grammar;
        PlotSpec plot;
        std::optional<std::size_t> downsample;
        int width = kDefaultSide, height = kDefaultSide;

        for (const auto& [key, value] : req.items()) {
            if (key == "func_seed") {
                func_seed = seed_at(value, key);
            } else if (key == "seed") {
                seed = seed_at(value, key);
            } else if (key == "generate") {
                object_at(value, key);
                for (const auto& [gk, gv] : value.items()) {
                    const std::string p = "generate." + gk;
                    if (gk == "start") params.start = number_at(gv, p);
                    else if (gk == "stop") params.stop = number_at(gv, p);
                    else if (gk == "step") params.step = number_at(gv, p);
                    else if (gk == "seed") seed = seed_at(gv, p);
                    else if (gk == "func_seed") func_seed = seed_at(gv, p);
                    else if (gk == "grammar") grammar = grammar_at(gv, p);
                    else if (gk == "mode") {
                        if (!gv.is_string()) throw ConfigError("expected a string at " + p, p);
                        const auto m = mode_from_name(gv.get<std::string>());
                        if (!m) throw InvalidParams("unknown mode '" + gv.get<std::string>() + "'", p);
                        params.mode = *m;
                    } else {
                        throw ConfigError("unknown key " + p, p);
                    }
                }
            } else if (key == "plot") {
                plot = plot_from_json(value, PlotSpec{}, "plot");
            } else if (key == "downsample") {
                downsample = downsample_at(value, key);
            } else if (key == "width") {
                width = side_at(value, key);
            } else if (key == "height") {
                height = side_at(value, key);
            } else {
                throw ConfigError("unknown key " + key, key);
            }
        }

        params.seed = seed ? *seed : SeedKey(random_seed_text());
        try {
            params.validate();
        } catch (const InvalidParams& e) {
            throw InvalidParams(e.what(), "generate." + e.where());
        }
        const SeedKey fs = func_seed ? *func_seed : SeedKey(random_seed_text());
        return respond(create_artwork(fs, grammar, params, plot), width, height, downsample);
    });
}

StudioService::Reply StudioService::render(std::string_view body) {
    return guarded([&] {
        ojson req = parse_body(body);
        object_at(req, "$");

        std::optional<std::size_t> downsample;
        int width = kDefaultSide, height = kDefaultSide;
        ojson overrides = ojson::object();
        if (auto it = req.find("overrides"); it != req.end()) {
            overrides = object_at(*it, "$.overrides");
            req.erase(it);
        }
        if (auto it = req.find("downsample"); it != req.end()) {
            downsample = downsample_at(*it, "$.downsample");
            req.erase(it);
        }
        if (auto it = req.find("width"); it != req.end()) {
            width = side_at(*it, "$.width");
            req.erase(it);
        }
        if (auto it = req.find("height"); it != req.end()) {
            height = side_at(*it, "$.height");
            req.erase(it);
        }

        ArtworkConfig cfg = load_config(req.dump());
        cfg.plot = plot_from_json(overrides, cfg.plot, "$.overrides");
        return respond(regenerate(cfg), width, height, downsample);
    });
}

StudioService::Reply StudioService::export_artifact(std::string_view token, std::string_view format) {
    return guarded([&]() -> Reply {
        if (format != "svg" && format != "png" && format != "config" && format != "data")
            return error_reply(400, "unknown export format '" + std::string(format) + "'", "format");
        const auto entry = lookup(std::string(token));
        if (!entry) return error_reply(404, "unknown or expired token", "token");
        const Artwork& a = entry->artwork;
        if (format == "svg") return {200, "image/svg+xml", entry->svg};
        if (format == "png") return {200, "image/png", render_png(a.points.points, a.plot, entry->width, entry->height)};
        if (format == "config") return {200, "application/json", save_config(a.config)};
        ArtworkData data;
        data.points = a.points;
        data.plot = a.plot;
        return {200, "application/json", save_data(data)};
    });
}

StudioService::Reply StudioService::health() const {
    ojson body = ojson::object();
    body["name"] = "duoseed";
    body["version"] = DUOSEED_VERSION;
    return {200, "application/json", body.dump() + "\n"};
}

StudioService::Reply StudioService::respond(Artwork artwork, int width, int height,
                                            std::optional<std::size_t> downsample) {
    auto entry = std::make_shared<Entry>();
    entry->svg = render_svg(artwork.points.points, artwork.plot, width, height);
    entry->width = width;
    entry->height = height;
    const std::string config_text = save_config(artwork.config);
    const std::string token = token_for(config_text, width, height);

    const auto& pts = artwork.points.points;
    const std::size_t n = pts.size();
    const std::size_t stride = downsample && *downsample < n ? (n + *downsample - 1) / *downsample : 1;

    std::string out;
    out.reserve(entry->svg.size() + config_text.size() + (n / stride) * 44 + 256);
    out += "{\"token\":\"";
    out += token;
    out += "\",\"config\":";
    out += ojson::parse(config_text).dump();
    out += ",\"dropped\":";
    out += std::to_string(artwork.points.dropped);
    out += ",\"points_total\":";
    out += std::to_string(n);
    out += ",\"points_preview\":[";
    for (std::size_t i = 0; i < n; i += stride) {
        if (i) out += ',';
        out += '[';
        put_number(out, pts[i].x);
        out += ',';
        put_number(out, pts[i].y);
        out += ']';
    }
    out += "],\"svg\":";
    out += ojson(entry->svg).dump();
    out += "}\n";

    entry->artwork = std::move(artwork);
    remember(token, std::move(entry));
    return {200, "application/json", std::move(out)};
}

void StudioService::remember(const std::string& token, std::shared_ptr<const Entry> entry) {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(token); it != cache_.end()) {
        order_.erase(it->second.second);
        cache_.erase(it);
    }
    order_.push_front(token);
    cache_.emplace(token, std::make_pair(std::move(entry), order_.begin()));
    while (cache_.size() > capacity_) {
        cache_.erase(order_.back());
        order_.pop_back();
    }
}

std::shared_ptr<const StudioService::Entry> StudioService::lookup(const std::string& token) {
    std::lock_guard lock(mutex_);
    const auto it = cache_.find(token);
    if (it == cache_.end()) return nullptr;
    order_.splice(order_.begin(), order_, it->second.second);
    return it->second.first;
}

std::size_t StudioService::cached() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

void StudioService::mount(httplib::Server& server, const std::optional<std::string>& ui_dir) {
    const auto send = [](httplib::Response& res, const Reply& r) {
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Post("/api/generate",
                [this, send](const httplib::Request& req, httplib::Response& res) { send(res, generate(req.body)); });
    server.Post("/api/render",
                [this, send](const httplib::Request& req, httplib::Response& res) { send(res, render(req.body)); });
    server.Get("/api/export", [this, send](const httplib::Request& req, httplib::Response& res) {
        const std::string format = req.get_param_value("format");
        const Reply r = export_artifact(req.get_param_value("token"), format);
        send(res, r);
        if (r.status == 200) {
            const char* ext = format == "svg" ? "svg" : format == "png" ? "png" : "json";
            const std::string name = format == "data" ? "artwork-data" : format == "config" ? "artwork-config" : "artwork";
            res.set_header("Content-Disposition", "attachment; filename=\"" + name + "." + ext + "\"");
        }
    });
    if (ui_dir && !server.set_mount_point("/", *ui_dir)) throw Error("ui directory not found: " + *ui_dir, "ui-dir");
}

} // namespace duoseed
