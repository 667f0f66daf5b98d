#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cliffdec/statistics.hpp>

#include <cmath>

using namespace cliffdec;

TEST_CASE("moments and median") {
    std::vector<double> xs = {3.0, 1.0, 4.0, 1.0, 5.0};
    CHECK(mean(xs) == doctest::Approx(2.8));
    CHECK(variance(xs) == doctest::Approx(3.2));
    CHECK(median(xs) == doctest::Approx(3.0));
    CHECK(median({2.0, 8.0, 4.0, 6.0}) == doctest::Approx(5.0));
    CHECK(variance({7.0}) == 0.0);
    CHECK_THROWS_AS(mean({}), std::invalid_argument);
}

TEST_CASE("chi-square statistic against a uniform expectation") {
    CHECK(chi_square_uniform({10, 10, 10, 10}) == doctest::Approx(0.0));
    // two bins, 60/40 of 100: (10^2/50)*2 = 4
    CHECK(chi_square_uniform({60, 40}) == doctest::Approx(4.0));
}

TEST_CASE("chi-square survival matches high-precision references") {
    // {dof, statistic, survival probability} frozen from an arbitrary-precision
    // evaluation of the regularized incomplete gamma function
    struct Case {
        uint32_t dof;
        double stat;
        double p;
    };
    const Case cases[] = {
        {1, 3.841458820694124, 5.000000000000006e-02},
        {5, 11.0704976935164, 4.999999999999913e-02},
        {23, 23.0, 4.607708905522918e-01},
        {23, 35.17246162690805, 5.000000000000007e-02},
        {11519, 11519.0, 4.982477468937077e-01},
        {11519, 11800.0, 3.282027832853208e-02},
        {3, 0.35, 9.503661173684760e-01},
        {10, 2.0, 9.963401531726563e-01},
    };
    for (const Case& c : cases)
        CHECK(chi_square_p_value(c.stat, c.dof) == doctest::Approx(c.p).epsilon(1e-10));
    CHECK(chi_square_p_value(0.0, 7) == 1.0);
    CHECK_THROWS_AS(chi_square_p_value(1.0, 0), std::invalid_argument);
}

TEST_CASE("wilson interval") {
    auto [lo, hi] = wilson_interval(190, 200);
    CHECK(lo == doctest::Approx(0.9104209437).epsilon(1e-6));
    CHECK(hi == doctest::Approx(0.9726176510).epsilon(1e-6));
    CHECK(lo < 0.95);
    CHECK(0.95 < hi);

    auto [lo0, hi0] = wilson_interval(0, 10);
    CHECK(lo0 == 0.0);
    CHECK(hi0 > 0.0);
    auto [lof, hif] = wilson_interval(10, 10);
    CHECK(hif == 1.0);
    CHECK(lof < 1.0);
    CHECK_THROWS_AS(wilson_interval(3, 0), std::invalid_argument);
}
