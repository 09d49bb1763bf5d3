#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "volforms/error.hpp"
#include "volforms/estimator.hpp"

using namespace volforms;

TEST_CASE("constant sampler: exact mean, zero standard error") {
    auto e = estimate([](DrawRng&) { return 1.0; }, 100, {42, 0});
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);
    CHECK(e.n_samples == 100);
}

TEST_CASE("standard normal sampler: CLT bound on the mean") {
    const std::int64_t n = 1'000'000;
    auto e = estimate([](DrawRng& r) { return r.normal(); }, n, {42, 1});
    CHECK(std::abs(e.mean) <= 3.0 / 1000.0);
    CHECK(e.std_error == doctest::Approx(1.0 / 1000.0).epsilon(0.01));

    // the same bound holds for an independent reference generator
    std::mt19937_64 gen(42);
    std::normal_distribution<double> nd;
    double sum = 0.0;
    for (std::int64_t i = 0; i < n; ++i) sum += nd(gen);
    CHECK(std::abs(sum / double(n)) <= 3.0 / 1000.0);
}

TEST_CASE("squared normal sampler: second moment is 1") {
    auto e = estimate(
        [](DrawRng& r) {
            const double z = r.normal();
            return z * z;
        },
        1'000'000, {42, 2});
    CHECK(std::abs(e.mean - 1.0) <= 3.0 * e.std_error);
}

TEST_CASE("determinism and stream separation") {
    const Sampler s = [](DrawRng& r) { return r.normal(); };
    auto a = estimate(s, 1000, {7, 3});
    auto b = estimate(s, 1000, {7, 3});
    CHECK(std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0);
    CHECK(a.std_error == b.std_error);

    auto c = estimate(s, 1000, {7, 4});
    CHECK(a.mean != c.mean);
    auto d = estimate(s, 1000, {8, 3});
    CHECK(a.mean != d.mean);
}

TEST_CASE("draw values are a pure function of the index: partition invariance") {
    const RngStream stream{99, 5};
    std::vector<double> draws(101);
    for (int i = 0; i < 101; ++i) {
        DrawRng r(stream, std::uint32_t(i));
        draws[std::size_t(i)] = r.normal();
    }
    // any worker count sees exactly these values; the mean matches the
    // canonical (single-worker) partition up to summation rounding
    auto one = estimate([](DrawRng& r) { return r.normal(); }, 101, stream, 1);
    auto three = estimate([](DrawRng& r) { return r.normal(); }, 101, stream, 3);
    double sum = 0.0;
    for (double x : draws) sum += x;
    CHECK(one.mean == sum / 101.0);
    CHECK(three.mean == doctest::Approx(one.mean).epsilon(1e-14));

    // fixed partition count is bit-reproducible
    auto three_again = estimate([](DrawRng& r) { return r.normal(); }, 101, stream, 3);
    CHECK(std::memcmp(&three.mean, &three_again.mean, sizeof(double)) == 0);
}

TEST_CASE("combine is associative on the mean for equal sample counts") {
    // integer-valued draws make every partial sum exact
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> d(-50, 50);
    auto make = [&] {
        double sum = 0, sq = 0;
        for (int i = 0; i < 64; ++i) {
            const double x = d(gen);
            sum += x;
            sq += x * x;
        }
        return mc_from_sums(sum, sq, 64);
    };
    for (int rep = 0; rep < 20; ++rep) {
        auto a = make(), b = make(), c = make();
        auto ab_c = combine(combine(a, b), c);
        auto a_bc = combine(a, combine(b, c));
        CHECK(ab_c.mean == a_bc.mean);
        CHECK(ab_c.n_samples == a_bc.n_samples);
    }
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(estimate([](DrawRng&) { return 1.0; }, 1, {0, 0}), Error);
    try {
        estimate([](DrawRng& r) { return r.normal(); }, 100, {0, 0}, 1);
        // find a draw index to poison
    } catch (...) {
    }
    bool threw = false;
    try {
        estimate(
            [](DrawRng& r) {
                const double z = r.normal();
                return z; // poison a specific draw below
            },
            10, {0, 0});
    } catch (const Error&) {
        threw = true;
    }
    CHECK(!threw);
    try {
        int count = -1;
        estimate(
            [&count](DrawRng&) {
                ++count;
                return count == 7 ? std::nan("") : 0.5;
            },
            10, {0, 0});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("7") != std::string::npos);
    }
}
