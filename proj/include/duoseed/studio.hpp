// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "duoseed/persist.hpp"

namespace httplib {
class Server;
}

namespace duoseed {

/// Fresh seed text from OS entropy (decimal uint32).
std::string random_seed_text();

/**
 * HTTP handlers for the studio. Each call owns its engine state; the export
 * cache is the only shared structure. Handlers never throw.
 */
class StudioService {
public:
    struct Reply {
        int status = 200;
        std::string content_type = "application/json";
        std::string body;
    };

    explicit StudioService(std::size_t cache_capacity = 64);

    Reply generate(std::string_view body);
    Reply render(std::string_view body);
    Reply export_artifact(std::string_view token, std::string_view format);
    Reply health() const;

    /// Registers the /api routes (and CORS preflight) on `server`; serves
    /// `ui_dir` at / when given.
    void mount(httplib::Server& server, const std::optional<std::string>& ui_dir = std::nullopt);

    std::size_t cached() const;

private:
    struct Entry {
        Artwork artwork;
        int width = 0;
        int height = 0;
        std::string svg;
    };

    Reply respond(Artwork artwork, int width, int height, std::optional<std::size_t> downsample);
    void remember(const std::string& token, std::shared_ptr<const Entry> entry);
    std::shared_ptr<const Entry> lookup(const std::string& token);

    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::list<std::string> order_; // most recent first
    std::unordered_map<std::string, std::pair<std::shared_ptr<const Entry>, std::list<std::string>::iterator>> cache_;
};

} // namespace duoseed
