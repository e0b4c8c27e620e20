#include <catch_amalgamated.hpp>

#include <lripct/downsample.hpp>

#include <random>

using namespace lripct;

TEST_CASE("downsample picks every tau-th pixel")
{
    Image img(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            img(i, j) = 10.0 * i + j;
    DownSampler d(2, 4);
    Image low = downsample(img, d);
    REQUIRE(low.rows() == 2);
    CHECK(low(0, 0) == 0.0);
    CHECK(low(0, 1) == 2.0);
    CHECK(low(1, 0) == 20.0);
    CHECK(low(1, 1) == 22.0);
}

TEST_CASE("adjoint scatters and zero-fills")
{
    DownSampler d(2, 4);
    Image low(2, 2);
    low(0, 0) = 1.0;
    low(0, 1) = 2.0;
    low(1, 0) = 3.0;
    low(1, 1) = 4.0;
    Image up = upsample_adjoint(low, d);
    int nonzero = 0;
    for (std::size_t i = 0; i < up.size(); ++i)
        if (up[i] != 0.0)
            ++nonzero;
    CHECK(nonzero == 4);
    CHECK(up(0, 0) == 1.0);
    CHECK(up(0, 2) == 2.0);
    CHECK(up(2, 0) == 3.0);
    CHECK(up(2, 2) == 4.0);
}

TEST_CASE("D D^T is the identity on the coarse grid")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int tau : {1, 2, 4}) {
        DownSampler d(tau, 8);
        Image low(d.coarse_n(), d.coarse_n());
        for (auto& v : low.values())
            v = u(rng);
        Image round = downsample(upsample_adjoint(low, d), d);
        for (std::size_t i = 0; i < low.size(); ++i)
            CHECK(round[i] == low[i]);
    }
}

TEST_CASE("downsample and adjoint satisfy the inner-product identity exactly")
{
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DownSampler d(4, 16);
    for (int trial = 0; trial < 10; ++trial) {
        Image x(16, 16);
        for (auto& v : x.values())
            v = u(rng);
        Image y(4, 4);
        for (auto& v : y.values())
            v = u(rng);
        double lhs = dot(downsample(x, d).values(), y.values());
        double rhs = dot(x.values(), upsample_adjoint(y, d).values());
        CHECK(lhs == rhs);
    }
}

TEST_CASE("sampler validates its arguments")
{
    CHECK_THROWS_AS(DownSampler(3, 9), std::invalid_argument);
    CHECK_THROWS_AS(DownSampler(0, 8), std::invalid_argument);
    CHECK_THROWS_AS(DownSampler(2, 7), std::invalid_argument);
    DownSampler d(2, 8);
    CHECK_THROWS_AS(downsample(Image(6, 6), d), std::invalid_argument);
    CHECK_THROWS_AS(upsample_adjoint(Image(8, 8), d), std::invalid_argument);
}
