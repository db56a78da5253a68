#include "doctest.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "covergap/errors.hpp"
#include "covergap/factor_table.hpp"

#include "test_support.hpp"

using namespace covergap;
namespace fs = std::filesystem;

TEST_CASE("factor table agrees with trial division up to 1000") {
    FactorTable table = FactorTable::build(1000);
    CHECK(table.limit() == 1000);
    CHECK(table.largest_prime_factor(1) == 1);
    CHECK(table.smallest_prime_factor(1) == 1);
    for (std::uint64_t n = 2; n <= 1000; ++n) {
        CAPTURE(n);
        CHECK(table.largest_prime_factor(n) == test_support::trial_largest_prime_factor(n));
        CHECK(table.smallest_prime_factor(n) ==
              test_support::trial_smallest_prime_factor(n));
        CHECK(table.is_prime(n) == (test_support::trial_smallest_prime_factor(n) == n));
    }
}

TEST_CASE("factor table matches trial division on random draws") {
    const FactorTable& table = test_support::small_table();
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_int_distribution<std::uint64_t> pick(2, table.limit());
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t n = pick(rng);
        CAPTURE(n);
        REQUIRE(table.largest_prime_factor(n) ==
                test_support::trial_largest_prime_factor(n));
    }
}

TEST_CASE("primes_up_to lists the primes in order") {
    FactorTable table = FactorTable::build(120);
    std::vector<std::uint64_t> expected = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                           29, 31, 37, 41, 43, 47, 53, 59, 61,
                                           67, 71, 73, 79, 83, 89, 97};
    CHECK(table.primes_up_to(100) == expected);
    CHECK(table.primes_up_to(1).empty());
}

TEST_CASE("factorize reconstructs the integer") {
    const FactorTable& table = test_support::small_table();
    std::mt19937_64 rng(0x5eed0002);
    std::uniform_int_distribution<std::uint64_t> pick(1, 20'000);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t n = pick(rng);
        FactoredInteger f = table.factorize(n);
        CAPTURE(n);
        CHECK(f.value() == n);
        for (const auto& [p, e] : f.factors) {
            CHECK(table.is_prime(p));
            CHECK(e >= 1);
        }
    }
    CHECK(table.factorize(1).factors.empty());
}

TEST_CASE("out-of-range queries throw") {
    FactorTable table = FactorTable::build(100);
    CHECK_THROWS_AS((void)table.largest_prime_factor(0), InvalidArgument);
    CHECK_THROWS_AS((void)table.largest_prime_factor(101), InvalidArgument);
}

TEST_CASE("binary cache round-trips") {
    fs::path path = fs::temp_directory_path() / "covergap_cache_test.bin";
    FactorTable built = FactorTable::build(5000);
    built.save(path);

    auto loaded = FactorTable::try_load(path);
    REQUIRE(loaded.has_value());
    CHECK(loaded->limit() == 5000);
    for (std::uint64_t n : {2ULL, 97ULL, 4096ULL, 4999ULL, 5000ULL}) {
        CHECK(loaded->largest_prime_factor(n) == built.largest_prime_factor(n));
        CHECK(loaded->smallest_prime_factor(n) == built.smallest_prime_factor(n));
    }
    fs::remove(path);
}

TEST_CASE("corrupted caches are refused") {
    fs::path path = fs::temp_directory_path() / "covergap_cache_bad.bin";

    SUBCASE("wrong magic") {
        FactorTable::build(100).save(path);
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(0);
        f.write("XXXXX", 5);
        f.close();
        CHECK_FALSE(FactorTable::try_load(path).has_value());
    }

    SUBCASE("truncated body") {
        FactorTable::build(100).save(path);
        fs::resize_file(path, fs::file_size(path) / 2);
        CHECK_FALSE(FactorTable::try_load(path).has_value());
    }

    SUBCASE("missing file") {
        fs::remove(path);
        CHECK_FALSE(FactorTable::try_load(path).has_value());
    }

    fs::remove(path);
}

TEST_CASE("load_or_build honours the requested limit") {
    fs::path path = fs::temp_directory_path() / "covergap_cache_limit.bin";
    fs::remove(path);

    // No cache yet: builds and saves.
    FactorTable first = FactorTable::load_or_build(300, path);
    CHECK(first.limit() == 300);
    CHECK(fs::exists(path));

    // Cache is large enough: reused as-is.
    FactorTable second = FactorTable::load_or_build(200, path);
    CHECK(second.limit() == 300);

    // Cache too small: rebuilt and overwritten.
    FactorTable third = FactorTable::load_or_build(400, path);
    CHECK(third.limit() == 400);
    auto reloaded = FactorTable::try_load(path);
    REQUIRE(reloaded.has_value());
    CHECK(reloaded->limit() == 400);

    // No path: plain build.
    FactorTable fourth = FactorTable::load_or_build(150, std::nullopt);
    CHECK(fourth.limit() == 150);

    fs::remove(path);
}
