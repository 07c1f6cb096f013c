// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <string>
#include <thread>
#include <vector>

#include "duoseed/error.hpp"
#include "duoseed/persist.hpp"
#include "duoseed/studio.hpp"
#include "httplib.h"
#include "json.hpp"

using namespace duoseed;
using nlohmann::json;

namespace {

// Small grid keeps each request cheap.
const std::string kSpecified =
    R"({"func_seed":"41868","seed":"10798","generate":{"start":-2,"stop":2,"step":0.1,"mode":"f1_vs_f2"},)"
    R"("plot":{"color":"teal","bgcolor":"white"},"width":300,"height":200})";

json body_of(const StudioService::Reply& r) { return json::parse(r.body); }

} // namespace

TEST_CASE("empty request materializes both seeds") {
    StudioService s;
    const auto r = s.generate(R"({"generate":{"step":0.2}})");
    REQUIRE(r.status == 200);
    CHECK(r.content_type == "application/json");
    const json b = body_of(r);
    CHECK_FALSE(b["svg"].get<std::string>().empty());
    CHECK(b["config"]["generate"]["seed"].is_string());
    CHECK(b["config"]["generate"]["func_seed"].is_string());
    CHECK(b["token"].get<std::string>().size() == 16);

    const auto defaults = s.generate("{}");
    REQUIRE(defaults.status == 200);
    const json d = body_of(defaults);
    CHECK(d["points_total"].get<std::size_t>() + d["dropped"].get<std::size_t>() == 394384);
    CHECK(d["config"]["generate"].contains("seed"));
    CHECK(d["config"]["generate"].contains("func_seed"));
}

TEST_CASE("fully specified requests are deterministic") {
    StudioService a, b;
    const auto r1 = a.generate(kSpecified);
    const auto r2 = b.generate(kSpecified);
    REQUIRE(r1.status == 200);
    CHECK(r1.body == r2.body);
    CHECK(body_of(r1)["svg"] == body_of(r2)["svg"]);
    CHECK(body_of(r1)["svg"].get<std::string>().find("width=\"300\"") != std::string::npos);
}

TEST_CASE("embedded config regenerates the response's points") {
    StudioService s;
    const json b = body_of(s.generate(kSpecified));
    const Artwork art = regenerate(load_config(b["config"].dump()));
    const auto& preview = b["points_preview"];
    REQUIRE(preview.size() == art.points.size());
    for (std::size_t i = 0; i < art.points.size(); ++i) {
        REQUIRE(preview[i][0].get<double>() == art.points.points[i].x);
        REQUIRE(preview[i][1].get<double>() == art.points.points[i].y);
    }
    CHECK(b["dropped"].get<std::size_t>() == art.points.dropped);
}

TEST_CASE("downsampled preview is a subset of the full point set") {
    StudioService s;
    json req = json::parse(kSpecified);
    const json full = body_of(s.generate(req.dump()));
    req["downsample"] = 100;
    const json small = body_of(s.generate(req.dump()));
    const auto& fp = full["points_preview"];
    const auto& sp = small["points_preview"];
    CHECK(sp.size() <= 100);
    CHECK(sp.size() >= 50);
    CHECK(small["points_total"] == full["points_total"]);
    std::size_t j = 0;
    for (const auto& p : sp) {
        while (j < fp.size() && fp[j] != p) ++j;
        REQUIRE(j < fp.size());
    }
    CHECK(small["svg"] == full["svg"]);

    req["downsample"] = 0;
    CHECK(s.generate(req.dump()).status == 422);
}

TEST_CASE("generate rejections") {
    StudioService s;
    const auto step = s.generate(R"({"generate": {"step": -1}})");
    CHECK(step.status == 422);
    CHECK(body_of(step)["path"] == "generate.step");
    CHECK(s.generate("{").status == 400);
    CHECK(s.generate("[]").status == 400);
    CHECK(s.generate(R"({"bogus": 1})").status == 400);
    CHECK(s.generate(R"({"generate": {"mode": "f3_vs_f1"}})").status == 422);
    CHECK(s.generate(R"({"seed": "   "})").status == 422);
    CHECK(s.generate(R"({"plot": {"alpha": 3}, "generate": {"step": 0.5}})").status == 422);
    CHECK(s.generate(R"({"width": 0})").status == 422);
    CHECK(s.generate(R"({"generate": {"step": 1e999}})").status == 400);
    CHECK(s.cached() == 0);
}

TEST_CASE("render applies overrides without touching the points") {
    StudioService s;
    const json original = body_of(s.generate(kSpecified));
    json req = original["config"];
    req["width"] = 300;
    req["height"] = 200;

    const json same = body_of(s.render(req.dump()));
    CHECK(same["svg"] == original["svg"]);
    CHECK(same["token"] == original["token"]);

    req["overrides"] = {{"rotation", 90}};
    const auto turned = s.render(req.dump());
    REQUIRE(turned.status == 200);
    const json t = body_of(turned);
    CHECK(t["points_preview"] == original["points_preview"]);
    CHECK(t["config"]["generate"] == original["config"]["generate"]);
    CHECK(t["config"]["plot"]["rotation"] == 90.0);
    CHECK(t["svg"] != original["svg"]);
    CHECK(t["token"] != original["token"]);
}

TEST_CASE("render rejections") {
    StudioService s;
    json cfg = body_of(s.generate(kSpecified))["config"];
    json bad = cfg;
    bad["f1"] = "uniform(-1,1)*sin(";
    const auto r = s.render(bad.dump());
    CHECK(r.status == 400);
    CHECK(body_of(r)["path"] == "$.f1");

    json bad_override = cfg;
    bad_override["overrides"] = {{"alpha", -1}};
    const auto o = s.render(bad_override.dump());
    CHECK(o.status == 422);
    CHECK(body_of(o)["path"] == "$.overrides.alpha");

    json no_seed = cfg;
    no_seed["generate"].erase("seed");
    CHECK(s.render(no_seed.dump()).status == 400);
}

TEST_CASE("export formats") {
    StudioService s;
    const json b = body_of(s.generate(kSpecified));
    const std::string token = b["token"];

    const auto svg = s.export_artifact(token, "svg");
    CHECK(svg.status == 200);
    CHECK(svg.content_type == "image/svg+xml");
    CHECK(svg.body == b["svg"].get<std::string>());

    const auto png = s.export_artifact(token, "png");
    CHECK(png.status == 200);
    CHECK(png.content_type == "image/png");
    REQUIRE(png.body.size() > 4);
    CHECK(png.body.substr(0, 4) == std::string("\x89PNG", 4));

    const auto cfg = s.export_artifact(token, "config");
    CHECK(cfg.status == 200);
    CHECK(cfg.content_type == "application/json");
    const ArtworkConfig loaded = load_config(cfg.body);
    CHECK(loaded.generate.seed.text() == "10798");

    const auto data = s.export_artifact(token, "data");
    CHECK(data.status == 200);
    CHECK(load_data(data.body).points.size() == b["points_total"].get<std::size_t>());

    CHECK(s.export_artifact(token, "gif").status == 400);
    CHECK(s.export_artifact("0000000000000000", "svg").status == 404);
    CHECK(s.export_artifact("0000000000000000", "gif").status == 400);
}

TEST_CASE("token cache evicts least recently used") {
    StudioService s(2);
    std::vector<std::string> tokens;
    for (const char* seed : {"1", "2", "3"}) {
        json req = json::parse(kSpecified);
        req["seed"] = seed;
        req["generate"]["step"] = 0.5;
        tokens.push_back(body_of(s.generate(req.dump()))["token"]);
    }
    CHECK(s.cached() == 2);
    CHECK(s.export_artifact(tokens[0], "svg").status == 404);
    CHECK(s.export_artifact(tokens[1], "svg").status == 200);

    // Touching tokens[1] makes tokens[2] the eviction candidate.
    json req = json::parse(kSpecified);
    req["seed"] = "4";
    req["generate"]["step"] = 0.5;
    s.generate(req.dump());
    CHECK(s.export_artifact(tokens[1], "svg").status == 200);
    CHECK(s.export_artifact(tokens[2], "svg").status == 404);
}

TEST_CASE("concurrent requests stay independent") {
    StudioService s;
    const std::string expected = s.generate(kSpecified).body;
    std::vector<std::string> got(6);
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < got.size(); ++i)
        workers.emplace_back([&, i] { got[i] = s.generate(kSpecified).body; });
    for (auto& w : workers) w.join();
    for (const auto& g : got) CHECK(g == expected);
    CHECK(s.cached() == 1);
}

TEST_CASE("health is stable") {
    StudioService s;
    const auto a = s.health(), b = s.health();
    CHECK(a.status == 200);
    CHECK(a.body == b.body);
    CHECK(body_of(a)["version"] == DUOSEED_VERSION);
}

TEST_CASE("routes over HTTP") {
    StudioService s;
    httplib::Server server;
    s.mount(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread loop([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client c("127.0.0.1", port);
    auto pre = c.Options("/api/generate");
    REQUIRE(pre);
    CHECK(pre->status == 204);
    CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

    auto gen = c.Post("/api/generate", kSpecified, "application/json");
    REQUIRE(gen);
    CHECK(gen->status == 200);
    const std::string token = json::parse(gen->body)["token"];

    auto png = c.Get("/api/export?format=png&token=" + token);
    REQUIRE(png);
    CHECK(png->status == 200);
    CHECK(png->get_header_value("Content-Type") == "image/png");
    CHECK(png->get_header_value("Content-Disposition").find("artwork.png") != std::string::npos);

    auto cfg = c.Get("/api/export?format=config&token=" + token);
    REQUIRE(cfg);
    CHECK(cfg->get_header_value("Content-Disposition").find(".json") != std::string::npos);

    auto missing = c.Get("/api/export?format=svg&token=nope");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    auto rejected = c.Post("/api/render", R"({"f1": 3})", "application/json");
    REQUIRE(rejected);
    CHECK(rejected->status == 400);

    server.stop();
    loop.join();
}

TEST_CASE("mount rejects a missing ui directory") {
    StudioService s;
    httplib::Server server;
    CHECK_THROWS_AS(s.mount(server, std::string("/no/such/ui/dir")), duoseed::Error);
}
