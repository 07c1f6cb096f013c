// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "duoseed/expr.hpp"
#include "duoseed/genspace.hpp"
#include "duoseed/render.hpp"

namespace duoseed {

inline constexpr std::string_view kFormatVersion = "1";

/// The full regeneration key of an artwork.
struct ArtworkConfig {
    std::string format_version{kFormatVersion};
    std::string f1; // canonical equation text
    std::string f2;
    GenerateParams generate;
    std::optional<SeedKey> func_seed;  // present when the equations were generated
    std::optional<GenConfig> grammar;  // generator settings used with func_seed
    PlotSpec plot;

    // Unknown keys, kept verbatim and written back after the known ones.
    nlohmann::ordered_json extra_root = nlohmann::ordered_json::object();
    nlohmann::ordered_json extra_generate = nlohmann::ordered_json::object();
    nlohmann::ordered_json extra_plot = nlohmann::ordered_json::object();

    // Loader diagnostics; not part of the key.
    std::vector<std::string> warnings;

    bool operator==(const ArtworkConfig& o) const {
        return format_version == o.format_version && f1 == o.f1 && f2 == o.f2 &&
               generate == o.generate && func_seed == o.func_seed && grammar == o.grammar &&
               plot == o.plot && extra_root == o.extra_root && extra_generate == o.extra_generate &&
               extra_plot == o.extra_plot;
    }
};

/// Re-plottable point data: no equations, no seeds.
struct ArtworkData {
    std::string format_version{kFormatVersion};
    PointSet points;
    PlotSpec plot;

    friend bool operator==(const ArtworkData&, const ArtworkData&) = default;
};

std::string save_config(const ArtworkConfig& cfg);

/**
 * Parses a configuration document. Also accepts the legacy layout: no
 * `format_version`, `matplotlib_version` (ignored), equations optionally
 * nested under `generate`, integer seeds, `random.`/`math.` prefixes and
 * `mode` omitted. Unknown keys are preserved and reported in `warnings`.
 *
 * Throws ConfigError (malformed document, missing key, unparseable
 * equation) or InvalidParams (value violates an invariant); where() is the
 * JSON path.
 */
ArtworkConfig load_config(std::string_view bytes);

std::string save_data(const ArtworkData& data);
ArtworkData load_data(std::string_view bytes);

/// Plot section on its own, as stored in config and data documents.
nlohmann::ordered_json plot_to_json(const PlotSpec& plot);
/// Applies the keys of `j` on top of `base`. Unknown keys go to `extras`
/// when given, otherwise they are an error. `path` prefixes error paths.
PlotSpec plot_from_json(const nlohmann::ordered_json& j, PlotSpec base, const std::string& path,
                        nlohmann::ordered_json* extras = nullptr,
                        std::vector<std::string>* warnings = nullptr);

/// Per-point scalars resampled by index to `n` entries (identity when the
/// length already matches).
std::vector<double> align_scalars(const std::vector<double>& values, std::size_t n);

struct Artwork {
    ArtworkConfig config;
    PointSet points;
    PlotSpec plot; // config.plot with per-point colors aligned to `points`
};

/// f1 then f2, both drawn from one stream seeded by func_seed.
std::pair<Equation, Equation> generate_equations(const SeedKey& func_seed, const GenConfig& grammar);

Artwork create_artwork(const SeedKey& func_seed, const GenConfig& grammar, const GenerateParams& params,
                       const PlotSpec& plot);

/// Parses the config's equations and reruns point generation.
Artwork regenerate(const ArtworkConfig& cfg);

} // namespace duoseed
