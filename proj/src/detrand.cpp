// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "duoseed/detrand.hpp"

#include <cmath>
#include <numbers>

#include "duoseed/error.hpp"

namespace duoseed {

namespace {

std::string_view strip(std::string_view s) {
    constexpr std::string_view ws = " \t\n\r\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

SeedKey::SeedKey(std::string_view raw) : text_(strip(raw)) {
    if (text_.empty()) throw InvalidSeed("seed must not be empty", "seed");
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(const SeedKey& key) {
    std::uint64_t x = fnv1a64(key.text());
    for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t Rng::next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    ++draws_;
    return result;
}

std::string_view sampler_token(Distribution d) noexcept {
    switch (d) {
    case Distribution::Uniform: return "uniform(-1,1)";
    case Distribution::Gaussian: return "gauss(0,1)";
    case Distribution::Betavariate: return "betavariate(1,1)";
    case Distribution::Gammavariate: return "gammavariate(1,1)";
    case Distribution::Lognormvariate: return "lognormvariate(0,1)";
    }
    return {};
}

std::string_view sampler_name(Distribution d) noexcept {
    auto token = sampler_token(d);
    return token.substr(0, token.find('('));
}

// 0.0 - x keeps the u = 0 case at +0.0
double gamma_from_unit(double u) noexcept { return 0.0 - std::log(1.0 - u); }

std::array<double, 2> box_muller(double u1, double u2) noexcept {
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

namespace {

double gaussian(Rng& rng) noexcept {
    auto& cache = rng.gauss_cache();
    if (cache) {
        const double z = *cache;
        cache.reset();
        return z;
    }
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    const auto [z0, z1] = box_muller(u1, u2);
    cache = z1;
    return z0;
}

} // namespace

double sample(Distribution d, Rng& rng) noexcept {
    switch (d) {
    case Distribution::Uniform: return uniform_from_unit(rng.next_unit());
    case Distribution::Gaussian: return gaussian(rng);
    case Distribution::Betavariate: return beta_from_unit(rng.next_unit());
    case Distribution::Gammavariate: return gamma_from_unit(rng.next_unit());
    case Distribution::Lognormvariate: return std::exp(gaussian(rng));
    }
    return 0.0;
}

} // namespace duoseed
