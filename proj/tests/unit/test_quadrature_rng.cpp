#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "irislab/quadrature.hpp"
#include "irislab/rng.hpp"
#include "test_support.hpp"

using namespace irislab;
using testsupport::near_rel;

TEST(Quadrature, SmoothIntegrals) {
    const auto r = integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(near_rel(r.value, 2.0, 1e-13));
    const auto g = integrate_pieces([](double x) { return std::exp(-x * x); }, {-10, -1, 0, 1, 10});
    EXPECT_TRUE(near_rel(g.value, std::sqrt(std::numbers::pi), 1e-13));
}

TEST(Quadrature, EndpointSingularities) {
    const auto r = integrate_endpoint_singular([](double x) { return 1 / std::sqrt(x); }, 0, 1);
    EXPECT_TRUE(near_rel(r.value, 2.0, 1e-11));
    const auto l = integrate_endpoint_singular([](double x) { return std::log(x); }, 0, 1);
    EXPECT_TRUE(near_rel(l.value, -1.0, 1e-11));
}

TEST(Quadrature, AbsoluteToleranceStopsEarly) {
    QuadOptions o;
    o.rel_tol = 0;
    o.abs_tol = 1e-3;
    const auto r = integrate([](double x) { return std::cos(50 * x); }, 0, 1, o);
    EXPECT_NEAR(r.value, std::sin(50.0) / 50, 1e-3);
}

// Known-answer vectors from the Random123 distribution, confirmed against
// an independent implementation.
TEST(Philox, KnownAnswers) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                            {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                            {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStream, DeterministicAndAddressable) {
    RngStream a(42, 7, 3), b(42, 7, 3);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());

    // neighbouring trials, entities and seeds give different streams
    std::set<std::uint32_t> firsts;
    for (std::uint64_t seed : {1u, 2u})
        for (std::uint64_t trial : {0u, 1u, 1000000u})
            for (std::uint32_t ent : {1u, 2u, 3u}) firsts.insert(RngStream(seed, trial, ent)());
    EXPECT_EQ(firsts.size(), 18u);
}

TEST(RngStream, UniformMoments) {
    RngStream r(9, 0, 1);
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.003);
    EXPECT_NEAR(sum2 / n - (sum / n) * (sum / n), 1.0 / 12, 0.002);
}
