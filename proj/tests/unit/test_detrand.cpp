// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <set>

#include "duoseed/detrand.hpp"
#include "duoseed/error.hpp"

using namespace duoseed;

// Golden values come from tests/oracles/detrand_oracle.py.

TEST_CASE("seed keys strip surrounding whitespace and reject empty text") {
    CHECK(SeedKey("  561872\n").text() == "561872");
    CHECK(SeedKey("a b").text() == "a b");
    CHECK_THROWS_AS(SeedKey(""), InvalidSeed);
    CHECK_THROWS_AS(SeedKey(" \t\n"), InvalidSeed);
    CHECK(SeedKey(" 7 ") == SeedKey("7"));
}

TEST_CASE("fnv1a64") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("561872") == 0x915d7a4c69540efaULL);
    CHECK(fnv1a64("561873") == 0x915d7b4c695410adULL);
    CHECK(fnv1a64("0") == 0xaf63ad4c86019cafULL);
}

TEST_CASE("xoshiro256** matches the published reference stream") {
    Rng rng(Rng::State{1, 2, 3, 4});
    const std::uint64_t expected[] = {11520ULL, 0ULL, 1509978240ULL, 1215971899390074240ULL,
                                      1216172134540287360ULL, 607988272756665600ULL};
    for (auto e : expected) CHECK(rng.next_u64() == e);
}

TEST_CASE("seeded state and first draws") {
    SUBCASE("561872") {
        Rng rng(SeedKey("561872"));
        CHECK(rng.state() == Rng::State{0x4f4416add1835265ULL, 0x81cd9eb5a1d1c696ULL, 0x76cf7be167c0e159ULL,
                                        0xa7219bb602d0b6fcULL});
        CHECK(rng.next_u64() == 0x9272f6b8eff43164ULL);
        CHECK(rng.next_u64() == 0x3c7164925f5773acULL);
        CHECK(rng.next_u64() == 0xcd2b344e3d977334ULL);
    }
    SUBCASE("561873") {
        Rng rng(SeedKey("561873"));
        CHECK(rng.state() == Rng::State{0xd008ff22687e6b7aULL, 0x8001d43df9e8c8c0ULL, 0xf6ae60ce6a585b17ULL,
                                        0x4dfd432bd4190877ULL});
        CHECK(rng.next_unit() == 0.1607581654003698);
        CHECK(rng.next_unit() == 0.7037651915314711);
        CHECK(rng.next_unit() == 0.007881166608245227);
    }
    SUBCASE("0") {
        Rng rng(SeedKey("0"));
        CHECK(rng.state() == Rng::State{0x2ff7be6590eeaeb0ULL, 0x49c8b3c2e32b093bULL, 0x6654576dacf2f76cULL,
                                        0xe5dea399b7ec7232ULL});
        CHECK(rng.next_unit() == 0.13984113728684977);
        CHECK(rng.next_unit() == 0.4354679953217878);
        CHECK(rng.next_unit() == 0.6926034509136848);
    }
}

TEST_CASE("units lie in [0, 1)") {
    Rng rng(SeedKey("range"));
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    CHECK(Rng(Rng::State{0, 0, 0, 0}).next_unit() == 0.0);
}

TEST_CASE("equal keys give equal streams, different keys diverge") {
    Rng a(SeedKey("561872")), b(SeedKey(" 561872 ")), c(SeedKey("561873"));
    int differ = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto va = a.next_u64();
        REQUIRE(va == b.next_u64());
        differ += va != c.next_u64();
    }
    CHECK(differ == 1000);
}

TEST_CASE("sampler maps") {
    CHECK(uniform_from_unit(0.0) == -1.0);
    CHECK(uniform_from_unit(0.5) == 0.0);
    CHECK(beta_from_unit(0.25) == 0.25);
    CHECK(gamma_from_unit(0.0) == 0.0);
    CHECK_FALSE(std::signbit(gamma_from_unit(0.0)));
    CHECK(gamma_from_unit(1.0 - 1.0 / M_E) == doctest::Approx(1.0).epsilon(1e-15));
    const auto z = box_muller(0.0, 0.3);
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    CHECK(std::isfinite(box_muller(0x1.fffffffffffffp-1, 0.0)[0]));
}

TEST_CASE("sampler goldens on the 561872 stream") {
    const SeedKey key("561872");
    const auto first = [&](Distribution d) {
        Rng rng(key);
        return sample(d, rng);
    };
    CHECK(first(Distribution::Uniform) == 0.14413341550962988);
    CHECK(first(Distribution::Betavariate) == 0.5720667077548149);
    CHECK(first(Distribution::Gammavariate) == doctest::Approx(0.8487879547878756).epsilon(1e-15));
    CHECK(first(Distribution::Lognormvariate) == doctest::Approx(1.1203084353962773).epsilon(1e-15));

    Rng rng(key);
    CHECK(sample(Distribution::Gaussian, rng) == doctest::Approx(0.11360403614115876).epsilon(1e-14));
    CHECK(sample(Distribution::Gaussian, rng) == doctest::Approx(1.2979483936382794).epsilon(1e-14));
    CHECK(sample(Distribution::Gaussian, rng) == doctest::Approx(-0.6849893401867193).epsilon(1e-14));
}

TEST_CASE("unit draw counts per sampler") {
    for (auto d : {Distribution::Uniform, Distribution::Betavariate, Distribution::Gammavariate}) {
        Rng rng(SeedKey("count"));
        for (int i = 0; i < 10; ++i) sample(d, rng);
        CHECK(rng.draws() == 10);
    }
    for (auto d : {Distribution::Gaussian, Distribution::Lognormvariate}) {
        Rng rng(SeedKey("count"));
        sample(d, rng);
        CHECK(rng.draws() == 2);
        CHECK(rng.gauss_cache().has_value());
        sample(d, rng);
        CHECK(rng.draws() == 2);
        CHECK_FALSE(rng.gauss_cache().has_value());
        sample(d, rng);
        CHECK(rng.draws() == 4);
    }
}

TEST_CASE("lognormal is exp of the gaussian on the same stream") {
    Rng a(SeedKey("ln")), b(SeedKey("ln"));
    for (int i = 0; i < 1000; ++i)
        REQUIRE(sample(Distribution::Lognormvariate, a) == std::exp(sample(Distribution::Gaussian, b)));
    CHECK(a == b);
}

TEST_CASE("rng equality covers the gaussian cache, not the draw counter") {
    Rng a(SeedKey("eq")), b(SeedKey("eq"));
    sample(Distribution::Gaussian, a);
    b.next_unit();
    b.next_unit();
    CHECK_FALSE(a == b); // b has no cached value
    b.gauss_cache() = a.gauss_cache();
    CHECK(a == b);
}

TEST_CASE("sampler tokens") {
    std::set<std::string_view> names;
    for (auto d : kDistributions) names.insert(sampler_name(d));
    CHECK(names.size() == 5);
    CHECK(sampler_token(Distribution::Uniform) == "uniform(-1,1)");
    CHECK(sampler_token(Distribution::Gaussian) == "gauss(0,1)");
    CHECK(sampler_token(Distribution::Betavariate) == "betavariate(1,1)");
    CHECK(sampler_token(Distribution::Gammavariate) == "gammavariate(1,1)");
    CHECK(sampler_token(Distribution::Lognormvariate) == "lognormvariate(0,1)");
}

TEST_CASE("sample statistics, small n") {
    Rng rng(SeedKey("stats"));
    const int n = 20000;
    double su = 0, sg = 0, sg2 = 0, sb = 0, sgam = 0;
    for (int i = 0; i < n; ++i) {
        const double u = sample(Distribution::Uniform, rng);
        REQUIRE(u >= -1.0);
        REQUIRE(u < 1.0);
        su += u;
        const double g = sample(Distribution::Gaussian, rng);
        sg += g;
        sg2 += g * g;
        sb += sample(Distribution::Betavariate, rng);
        const double gm = sample(Distribution::Gammavariate, rng);
        REQUIRE(gm >= 0.0);
        sgam += gm;
        REQUIRE(sample(Distribution::Lognormvariate, rng) > 0.0);
    }
    CHECK(std::fabs(su / n) < 0.03);
    CHECK(std::fabs(sg / n) < 0.04);
    CHECK(std::fabs(sg2 / n - 1.0) < 0.05);
    CHECK(std::fabs(sb / n - 0.5) < 0.015);
    CHECK(std::fabs(sgam / n - 1.0) < 0.05);
}
