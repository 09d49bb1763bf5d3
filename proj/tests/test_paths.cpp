#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "volforms/error.hpp"
#include "volforms/paths.hpp"

using namespace volforms;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("brownian samples are pointed and reproducible") {
    const Grid g{128};
    DrawRng r1({42, 0}, 0);
    auto w1 = sample_brownian(g, r1);
    CHECK(w1.values[0] == 0.0);
    CHECK(w1.values.size() == 129);
    DrawRng r2({42, 0}, 0);
    auto w2 = sample_brownian(g, r2);
    CHECK(w1.values == w2.values);
}

TEST_CASE("brownian covariance kernel: Var w(1) = 1 and Cov(w(.25), w(.75)) = .25") {
    const Grid g{128};
    auto var1 = estimate(
        [&](DrawRng& r) {
            const auto w = sample_brownian(g, r);
            return w.values.back() * w.values.back();
        },
        100'000, {42, 10});
    CHECK(std::abs(var1.mean - 1.0) <= 3.0 * var1.std_error);

    const int i25 = node_index(g, 0.25), i75 = node_index(g, 0.75);
    auto cov = estimate(
        [&](DrawRng& r) {
            const auto w = sample_brownian(g, r);
            return w.values[std::size_t(i25)] * w.values[std::size_t(i75)];
        },
        100'000, {42, 11});
    CHECK(std::abs(cov.mean - 0.25) <= 3.0 * cov.std_error);
}

TEST_CASE("div_A: zero shift, telescoping, linearity") {
    const Grid g{64};
    DrawRng r({1, 0}, 0);
    const auto w = sample_brownian(g, r);

    CHECK(div_A(zero_shift(g), w) == 0.0);

    // telescoping: phi(t) = t has unit cell derivatives, so the sum is w(1)
    CHECK(div_A(linear_shift(g), w) ==
          doctest::Approx(w.values.back()).epsilon(1e-13));
    // exact on an integer-valued path
    DiscretePath dyadic{g, std::vector<double>(65)};
    for (int i = 1; i <= 64; ++i) dyadic.values[std::size_t(i)] = double((i * 7) % 13);
    dyadic.values[0] = 0.0;
    CHECK(div_A(linear_shift(g), dyadic) == dyadic.values.back());

    // exact linearity on integer data
    std::vector<double> v1(65), v2(65);
    for (int i = 0; i <= 64; ++i) {
        v1[std::size_t(i)] = i ? double((i * 3) % 7) : 0.0;
        v2[std::size_t(i)] = i ? double((i * 5) % 11) : 0.0;
    }
    v1[0] = v2[0] = 0.0;
    const auto p1 = shift_from_values(g, v1);
    const auto p2 = shift_from_values(g, v2);
    std::vector<double> v3(65);
    for (int i = 0; i <= 64; ++i) v3[std::size_t(i)] = 2.0 * v1[std::size_t(i)] - 4.0 * v2[std::size_t(i)];
    const auto p3 = shift_from_values(g, v3);
    CHECK(div_A(p3, dyadic) == 2.0 * div_A(p1, dyadic) - 4.0 * div_A(p2, dyadic));
}

TEST_CASE("div_A isometry: E[A_phi1 A_phi2] = (phi1|phi2)") {
    const Grid g{128};
    const auto e1 = basis_shift(g, 1);
    const auto e2 = basis_shift(g, 2);
    const auto lin = linear_shift(g);
    const std::vector<std::pair<const Shift*, const Shift*>> pairs{
        {&e1, &e1}, {&e1, &e2}, {&e1, &lin}};
    int idx = 0;
    for (auto [p, q] : pairs) {
        auto est = estimate(
            [&](DrawRng& r) {
                const auto w = sample_brownian(g, r);
                return div_A(*p, w) * div_A(*q, w);
            },
            50'000, {42, std::uint32_t(20 + idx++)});
        CHECK(std::abs(est.mean - inner_21(*p, *q)) <= 3.0 * est.std_error);
    }
}

TEST_CASE("div_A by-parts form") {
    const Grid g{256};
    const auto e2 = basis_shift(g, 2);

    // deterministic smooth pointed path: error halves (at least) as n doubles
    auto smooth = [](Grid grid) {
        DiscretePath w{grid, {}};
        w.values.resize(std::size_t(grid.n) + 1);
        for (int i = 0; i <= grid.n; ++i) w.values[std::size_t(i)] = std::sin(2.0 * grid.node(i));
        w.values[0] = 0.0;
        return w;
    };
    double prev_err = -1.0;
    for (int n : {64, 128, 256, 512}) {
        const Grid gn{n};
        const auto phi = basis_shift(gn, 2);
        const auto w = smooth(gn);
        const double err = std::abs(div_A(phi, w) - div_A_by_parts(phi, w));
        if (prev_err > 0.0) CHECK(err < prev_err / 1.7);
        prev_err = err;
    }

    // stochastic agreement in mean square at fixed n
    auto msq = estimate(
        [&](DrawRng& r) {
            const auto w = sample_brownian(g, r);
            const double d = div_A(e2, w) - div_A_by_parts(e2, w);
            return d * d;
        },
        20'000, {42, 30});
    CHECK(msq.mean < 1e-2);

    // boundary condition phi'(1) = 0 is enforced
    const std::function<double(double)> phi = [](double t) { return t; };
    const std::function<double(double)> dphi = [](double) { return 1.0; };
    const std::function<double(double)> dd = [](double) { return 0.0; };
    const auto bad = shift_from_functions(g, phi, dphi, &dd);
    DrawRng r({1, 1}, 0);
    const auto w = sample_brownian(g, r);
    CHECK_THROWS_AS(div_A_by_parts(bad, w), Error);
    CHECK_THROWS_AS(div_A_by_parts(linear_shift(g), w), Error); // no 2nd deriv
}

TEST_CASE("riemann_Q: zero path, linear growth in n") {
    const Grid g{64};
    DiscretePath zero{g, std::vector<double>(65, 0.0)};
    CHECK(riemann_Q(zero) == 0.0);

    double prev_mean = -1.0;
    for (int n : {64, 128, 256}) {
        const Grid gn{n};
        auto q = estimate(
            [&](DrawRng& r) { return riemann_Q(sample_brownian(gn, r)); },
            20'000, {42, std::uint32_t(40 + n)});
        CHECK(std::abs(q.mean - double(n) / kTwoPi) <= 3.0 * q.std_error);
        if (prev_mean > 0.0) CHECK(q.mean / prev_mean == doctest::Approx(2.0).epsilon(0.02));
        prev_mean = q.mean;
    }
}

TEST_CASE("q_difference: exact expansion, stability in n") {
    const Grid g{64};
    DrawRng r({5, 0}, 3);
    const auto w = sample_brownian(g, r);

    CHECK(q_difference(w, zero_shift(g)) == 0.0);

    // equals (1/2pi)(2 div_A - |phi|^2) by construction; cross-check against
    // direct subtraction for a difference-quotient shift
    std::vector<double> v(65);
    for (int i = 0; i <= 64; ++i) {
        const double t = g.node(i);
        v[std::size_t(i)] = t * (1.0 - t) * (2.0 + t);
    }
    v[0] = 0.0;
    const auto phi = shift_from_values(g, v);
    const double direct = riemann_Q(w) - riemann_Q(shifted(w, phi, -1.0));
    CHECK(q_difference(w, phi) == doctest::Approx(direct).epsilon(1e-10));

    // stays bounded as n grows, unlike riemann_Q
    for (int n : {64, 256, 1024}) {
        const Grid gn{n};
        const auto lin = linear_shift(gn);
        auto qd = estimate(
            [&](DrawRng& rr) { return q_difference(sample_brownian(gn, rr), lin); },
            20'000, {42, std::uint32_t(50 + n)});
        // E = -|phi|^2 / 2pi = -1/2pi for phi(t) = t
        CHECK(std::abs(qd.mean + 1.0 / kTwoPi) <= 3.0 * qd.std_error);
    }
}

TEST_CASE("inner_21: orthonormal basis, linear shift, zero shift") {
    const Grid g{128};
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k) {
            const double v = inner_21(basis_shift(g, j), basis_shift(g, k));
            const double target = (j == k) ? 1.0 : 0.0;
            CHECK(std::abs(v - target) <= 10.0 / double(g.n * g.n));
        }
    CHECK(inner_21(linear_shift(g), linear_shift(g)) == 1.0); // n a power of two
    CHECK(inner_21(basis_shift(g, 1), zero_shift(g)) == 0.0);
}

TEST_CASE("dual measures") {
    const Grid g{128};
    DualMeasure m{{{0.5, 1.0}, {1.0, 1.0}}};
    CHECK(dual_kernel_quadratic(m) == doctest::Approx(2.5).epsilon(1e-15));
    DiscretePath w{g, std::vector<double>(129, 0.0)};
    for (int i = 0; i <= 128; ++i) w.values[std::size_t(i)] = g.node(i); // w(t) = t
    CHECK(pair_dual(m, w) == doctest::Approx(1.5).epsilon(1e-15));

    DualMeasure off{{{0.123456, 1.0}}};
    CHECK_THROWS_AS(pair_dual(off, w), Error);
    DualMeasure at_zero{{{0.0, 1.0}}};
    CHECK_THROWS_AS(pair_dual(at_zero, w), Error);
}

TEST_CASE("grid utilities and errors") {
    const Grid g{128};
    CHECK(node_index(g, 0.25) == 32);
    CHECK_THROWS_AS(node_index(g, 0.2500001), Error);
    CHECK_THROWS_AS(shift_from_values(g, std::vector<double>(3, 0.0)), Error);
    std::vector<double> v(129, 0.0);
    v[0] = 0.5;
    CHECK_THROWS_AS(shift_from_values(g, v), Error);

    const Grid g2{64};
    DrawRng r({0, 0}, 0);
    const auto w = sample_brownian(g2, r);
    CHECK_THROWS_AS(div_A(basis_shift(g, 1), w), Error);
}

TEST_CASE("csv dump") {
    const Grid g{4};
    DiscretePath w{g, {0.0, 0.5, 0.25, -0.125, 1.0}};
    std::ostringstream os;
    write_path_csv(w, os);
    CHECK(os.str() == "t,w\n0,0\n0.25,0.5\n0.5,0.25\n0.75,-0.125\n1,1\n");
}
