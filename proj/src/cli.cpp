// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "duoseed/cli.hpp"

#include <pthread.h>
#include <signal.h>
#include <sys/socket.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"

#include "duoseed/error.hpp"
#include "duoseed/persist.hpp"
#include "duoseed/studio.hpp"

namespace duoseed::cli {

namespace {

struct Options {
    std::string seed, func_seed;
    double start = 0, stop = 0, step = 0, rotation = 0, spot_size = 0, linewidth = 0, alpha = 0;
    std::string mode, projection, color, bgcolor, marker;
    std::string save_image, save_data, save_config, load_config, load_data;
    std::string serve, ui_dir;
    int width = 1000, height = 1000;
    bool verbose = false, no_display = false;
};

/// Usage-level conflict; exits 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path, path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path, path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("cannot write " + path, path);
}

std::string lower_extension(const std::string& path) {
    std::string ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

class Logger {
public:
    Logger(std::ostream& err, bool on) : err_(err), on_(on), t0_(std::chrono::steady_clock::now()) {}

    template <class... T>
    void operator()(const T&... parts) const {
        if (!on_) return;
        err_ << "duoseed: ";
        (err_ << ... << parts);
        err_ << '\n';
    }

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::ostream& err_;
    bool on_;
    std::chrono::steady_clock::time_point t0_;
};

PlotSpec apply_plot_flags(PlotSpec plot, const CLI::App& app, const Options& o) {
    const auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--color")) plot.color = o.color;
    if (given("--bgcolor")) plot.bgcolor = o.bgcolor;
    if (given("--spot-size")) plot.spot_size = o.spot_size;
    if (given("--linewidth")) plot.linewidth = o.linewidth;
    if (given("--alpha")) plot.alpha = o.alpha;
    if (given("--rotation")) plot.rotation = o.rotation;
    if (given("--marker")) {
        const auto m = marker_from_name(o.marker);
        if (!m) throw InvalidParams("unknown marker '" + o.marker + "'", "marker");
        plot.marker = *m;
    }
    if (given("--projection")) {
        const auto p = projection_from_name(o.projection);
        if (!p) throw InvalidParams("unknown projection '" + o.projection + "'", "projection");
        plot.projection = *p;
    }
    plot.validate();
    return plot;
}

ModeKind parse_mode(const std::string& name) {
    const auto m = mode_from_name(name);
    if (!m) throw InvalidParams("unknown mode '" + name + "'", "mode");
    return *m;
}

void check_conflicts(const CLI::App& app) {
    const auto given = [&](const char* name) { return app.count(name) > 0; };
    for (const char* flag : {"--seed", "--func-seed", "--start", "--stop", "--step"}) {
        if (given("--load-config") && given(flag))
            throw UsageError(std::string("--load-config cannot be combined with ") + flag);
        if (given("--load-data") && given(flag))
            throw UsageError(std::string("--load-data cannot be combined with ") + flag);
    }
    if (given("--load-config") && given("--load-data"))
        throw UsageError("--load-config cannot be combined with --load-data");
    if (given("--load-data") && given("--mode")) throw UsageError("--load-data cannot be combined with --mode");
    if (given("--load-data") && given("--save-config"))
        throw UsageError("--save-config needs equations and seeds; a data file has neither");
}

int generate_and_write(const CLI::App& app, const Options& o, std::ostream& err) {
    const Logger log(err, o.verbose);
    const auto given = [&](const char* name) { return app.count(name) > 0; };

    if (given("--save-image")) {
        const std::string ext = lower_extension(o.save_image);
        if (ext != ".svg" && ext != ".png")
            throw Error("unsupported image format '" + ext + "' (use .svg or .png)", o.save_image);
    }

    Artwork art;
    bool have_config = true;
    if (given("--load-data")) {
        ArtworkData data = load_data(read_file(o.load_data));
        log("loaded data ", o.load_data, " (", data.points.size(), " points)");
        art.points = std::move(data.points);
        art.plot = apply_plot_flags(data.plot, app, o);
        have_config = false;
    } else if (given("--load-config")) {
        ArtworkConfig cfg = load_config(read_file(o.load_config));
        if (given("--mode")) cfg.generate.mode = parse_mode(o.mode);
        cfg.plot = apply_plot_flags(cfg.plot, app, o);
        log("loaded config ", o.load_config);
        art = regenerate(cfg);
        for (const auto& w : art.config.warnings) err << "duoseed: warning: " << w << '\n';
    } else {
        GenerateParams params;
        params.seed = SeedKey(given("--seed") ? o.seed : random_seed_text());
        if (given("--start")) params.start = o.start;
        if (given("--stop")) params.stop = o.stop;
        if (given("--step")) params.step = o.step;
        if (given("--mode")) params.mode = parse_mode(o.mode);
        params.validate();
        const SeedKey func_seed(given("--func-seed") ? o.func_seed : random_seed_text());
        const PlotSpec plot = apply_plot_flags(PlotSpec{}, app, o);
        art = create_artwork(func_seed, GenConfig{}, params, plot);
    }

    if (have_config) {
        const ArtworkConfig& cfg = art.config;
        if (cfg.func_seed) log("func_seed = ", cfg.func_seed->text());
        log("seed = ", cfg.generate.seed.text());
        log("f1 = ", cfg.f1);
        log("f2 = ", cfg.f2);
        log("mode = ", mode_name(cfg.generate.mode), ", interval [", cfg.generate.start, ", ", cfg.generate.stop,
            ") step ", cfg.generate.step);
    }
    log("points = ", art.points.size(), ", dropped = ", art.points.dropped);
    log("generated in ", log.elapsed_ms(), " ms");

    if (given("--save-image")) {
        const std::string ext = lower_extension(o.save_image);
        write_file(o.save_image, ext == ".svg" ? render_svg(art.points.points, art.plot, o.width, o.height)
                                               : render_png(art.points.points, art.plot, o.width, o.height));
        log("image written to ", o.save_image);
    }
    if (given("--save-data")) {
        ArtworkData data;
        data.points = art.points;
        data.plot = art.plot;
        write_file(o.save_data, save_data(data));
        log("data written to ", o.save_data);
    }
    if (given("--save-config")) {
        write_file(o.save_config, save_config(art.config));
        log("config written to ", o.save_config);
    }
    if (!o.no_display) {
        write_file(kPreviewFile, render_png(art.points.points, art.plot, o.width, o.height));
        log("preview written to ", kPreviewFile);
    }
    log("done in ", log.elapsed_ms(), " ms");
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"duoseed: two-seed generative art"};
    app.set_version_flag("--version", DUOSEED_VERSION);
    Options o;

    app.add_option("--seed", o.seed, "Evaluation seed (random when omitted)");
    app.add_option("--func-seed", o.func_seed, "Equation seed (random when omitted)");
    app.add_option("--start", o.start, "Interval start (default -pi)");
    app.add_option("--stop", o.stop, "Interval stop, exclusive (default pi)");
    app.add_option("--step", o.step, "Interval step (default 0.01)");
    app.add_option("--mode", o.mode, "Mode, e.g. f1_vs_f2");
    app.add_option("--projection", o.projection, "rectilinear, polar or lambert");
    app.add_option("--rotation", o.rotation, "Rotation in degrees, counter-clockwise");
    app.add_option("--color", o.color, "Point color");
    app.add_option("--bgcolor", o.bgcolor, "Background color");
    app.add_option("--spot-size", o.spot_size, "Marker size in canvas units");
    app.add_option("--marker", o.marker, "point, circle, square, triangle, plus, cross or diamond");
    app.add_option("--linewidth", o.linewidth, "Marker outline width in canvas units");
    app.add_option("--alpha", o.alpha, "Point opacity in [0, 1]");
    app.add_option("--save-image", o.save_image, "Write the image (.svg or .png)");
    app.add_option("--save-data", o.save_data, "Write the point data (JSON)");
    app.add_option("--save-config", o.save_config, "Write the configuration (JSON)");
    app.add_option("--load-config", o.load_config, "Regenerate from a configuration file");
    app.add_option("--load-data", o.load_data, "Re-plot a data file");
    app.add_option("--width", o.width, "Image width in pixels")->check(CLI::Range(1, 8192));
    app.add_option("--height", o.height, "Image height in pixels")->check(CLI::Range(1, 8192));
    app.add_flag("--verbose", o.verbose, "Log generation details to standard error");
    app.add_flag("--no-display", o.no_display, "Do not write the preview image");
    app.add_option("--serve", o.serve, "Serve the studio API on host:port");
    app.add_option("--ui-dir", o.ui_dir, "Static studio bundle to serve at /");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        check_conflicts(app);
    } catch (const UsageError& e) {
        err << "duoseed: error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (app.count("--serve")) {
        std::optional<std::string> ui;
        if (app.count("--ui-dir")) ui = o.ui_dir;
        return serve(o.serve, ui, out, err);
    }

    try {
        return generate_and_write(app, o, err);
    } catch (const Error& e) {
        err << "duoseed: error: " << e.what();
        if (!e.where().empty()) err << " [" << e.where() << "]";
        err << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "duoseed: error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int serve(const std::string& address, const std::optional<std::string>& ui_dir, std::ostream& out,
          std::ostream& err) {
    const auto colon = address.rfind(':');
    int port = -1;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            port = std::stoi(address.substr(colon + 1), &used);
            if (used != address.size() - colon - 1) port = -1;
        } catch (const std::exception&) {
            port = -1;
        }
    }
    if (colon == std::string::npos || colon == 0 || port < 0 || port > 65535) {
        err << "duoseed: error: --serve expects host:port, got '" << address << "'\n";
        return kExitUsage;
    }
    const std::string host = address.substr(0, colon);

    // Signals are taken synchronously by one thread; server workers inherit the mask.
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    sigset_t previous;
    pthread_sigmask(SIG_BLOCK, &stop_signals, &previous);

    StudioService service;
    httplib::Server server;
    // Exclusive bind: a second server on the same port must fail.
    server.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
    });
    server.set_payload_max_length(64u << 20);
    int code = kExitOk;
    try {
        service.mount(server, ui_dir);
    } catch (const Error& e) {
        err << "duoseed: error: " << e.what() << '\n';
        pthread_sigmask(SIG_SETMASK, &previous, nullptr);
        return kExitFailure;
    }

    int bound = -1;
    if (port == 0)
        bound = server.bind_to_any_port(host);
    else if (server.bind_to_port(host, port))
        bound = port;
    if (bound < 0) {
        err << "duoseed: error: cannot bind " << address << '\n';
        pthread_sigmask(SIG_SETMASK, &previous, nullptr);
        return kExitFailure;
    }

    std::atomic<bool> finished{false};
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&stop_signals, &sig);
        if (!finished) err << "duoseed: signal " << sig << ", shutting down\n";
        server.stop();
    });

    out << "duoseed: serving on http://" << host << ":" << bound << std::endl;
    if (!server.listen_after_bind()) code = kExitFailure;

    finished = true;
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    // Drop anything still pending before the mask is lifted.
    timespec zero{0, 0};
    while (sigtimedwait(&stop_signals, nullptr, &zero) > 0) {
    }
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    out << "duoseed: stopped" << std::endl;
    return code;
}

} // namespace duoseed::cli
