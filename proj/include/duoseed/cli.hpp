// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace duoseed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kPreviewFile = "duoseed_preview.png";

/// Full command line. Logs and diagnostics go to `err`; the serve banner to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Serves the studio API on "host:port" until SIGINT/SIGTERM. Port 0 picks a
/// free port. Returns 1 when the address cannot be bound.
int serve(const std::string& address, const std::optional<std::string>& ui_dir, std::ostream& out,
          std::ostream& err);

} // namespace duoseed::cli
