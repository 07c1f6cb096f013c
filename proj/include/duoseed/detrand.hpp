// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace duoseed {

/// User-supplied seed token. Any UTF-8 text; numbers are their decimal text.
/// The stored form is already normalized (surrounding whitespace stripped).
class SeedKey {
public:
    /// Throws InvalidSeed when the token is empty after normalization.
    explicit SeedKey(std::string_view raw);

    const std::string& text() const noexcept { return text_; }

    friend bool operator==(const SeedKey&, const SeedKey&) = default;

private:
    std::string text_;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::uint64_t splitmix64(std::uint64_t& x) noexcept;

/**
 * xoshiro256** stream with a one-slot Gaussian spare.
 *
 * Seeding: FNV-1a of the key bytes, expanded to 256 bits by four successive
 * splitmix64 outputs. The draw counter is instrumentation only and takes no
 * part in equality.
 */
class Rng {
public:
    using State = std::array<std::uint64_t, 4>;

    explicit Rng(const SeedKey& key);
    explicit Rng(const State& state) noexcept : s_(state) {}

    std::uint64_t next_u64() noexcept;

    /// Top 53 bits mapped to [0,1). Advances the state exactly once.
    double next_unit() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    const State& state() const noexcept { return s_; }
    std::optional<double>& gauss_cache() noexcept { return gauss_cache_; }
    const std::optional<double>& gauss_cache() const noexcept { return gauss_cache_; }
    std::uint64_t draws() const noexcept { return draws_; }

    friend bool operator==(const Rng& a, const Rng& b) noexcept {
        return a.s_ == b.s_ && a.gauss_cache_ == b.gauss_cache_;
    }

private:
    State s_{};
    std::optional<double> gauss_cache_;
    std::uint64_t draws_ = 0;
};

/// seed_state: the stream a key denotes.
inline Rng seed_state(const SeedKey& key) { return Rng(key); }

/// The five members of the pseudo-random family. Parameters are fixed.
enum class Distribution : std::uint8_t {
    Uniform,        // a=-1, b=1
    Gaussian,       // mu=0, sigma=1
    Betavariate,    // alpha=1, beta=1
    Gammavariate,   // alpha=1, beta=1
    Lognormvariate, // mu=0, sigma=1
};

inline constexpr std::array<Distribution, 5> kDistributions = {
    Distribution::Uniform, Distribution::Gaussian, Distribution::Betavariate,
    Distribution::Gammavariate, Distribution::Lognormvariate};

/// Canonical sampler token, e.g. "uniform(-1,1)".
std::string_view sampler_token(Distribution d) noexcept;
/// Bare sampler name, e.g. "uniform".
std::string_view sampler_name(Distribution d) noexcept;

// Pure maps from unit draws to samples; `sample` is built from these.
inline double uniform_from_unit(double u) noexcept { return -1.0 + 2.0 * u; }
inline double beta_from_unit(double u) noexcept { return u; }
double gamma_from_unit(double u) noexcept;
/// Basic Box-Muller: returns {r cos(2 pi u2), r sin(2 pi u2)}, r = sqrt(-2 ln(1-u1)).
std::array<double, 2> box_muller(double u1, double u2) noexcept;

/**
 * Draw one sample. Raw unit draws consumed per call:
 *   Uniform 1, Betavariate 1, Gammavariate 1,
 *   Gaussian 2 (fresh pair, spare cached) or 0 (spare consumed),
 *   Lognormvariate as Gaussian.
 */
double sample(Distribution d, Rng& rng) noexcept;

} // namespace duoseed
