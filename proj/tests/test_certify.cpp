#include "genhilbert/certify.hpp"
#include "genhilbert/operator.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace genhilbert;

TEST_CASE("extremal_sequence")
{
    const auto a = extremal_sequence(ExtremalParams(PExponent(2.0), 0.5, 3));
    REQUIRE(a.size() == 3);
    CHECK(a.nonneg);
    CHECK(a[0] == 1.0);
    CHECK(a[1] == 0.5);
    CHECK(a[2] == doctest::Approx(1.0 / 3).epsilon(1e-16));

    const ExtremalParams p1(PExponent(1.0), 0.25, 4);
    CHECK(p1.w() == 1.25);
    const auto b = extremal_sequence(p1);
    CHECK(b[1] == doctest::Approx(std::pow(2.0, -1.25)).epsilon(1e-16));

    CHECK(extremal_sequence(ExtremalParams(PExponent(3.0), 0.1, 1)).values ==
          Vector<double>::Ones(1));

    CHECK_THROWS_AS(ExtremalParams(PExponent(2.0), 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(ExtremalParams(PExponent(2.0), 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(ExtremalParams(PExponent::infinity(), 0.1, 5), std::invalid_argument);
}

TEST_CASE("lower_bound_ratio")
{
    const ExtremalParams params(PExponent(2.0), 0.01, 2000);
    CHECK(lower_bound_ratio(Measure(), params, 2000) == 0.0);

    // FFT route for Lebesgue agrees with the naive product.
    const auto a     = extremal_sequence(params);
    const auto naive = oracle::hilbert_naive(a.values, 2000);
    const double ref = naive.norm() / a.values.norm();
    const double lb  = lower_bound_ratio(Measure::lebesgue(), params, 2000);
    CHECK(lb == doctest::Approx(ref).epsilon(1e-12));
    CHECK(lb < std::numbers::pi);
    CHECK(lower_bound_ratio(Measure::lebesgue(2.0), params, 2000) ==
          doctest::Approx(2.0 * lb).epsilon(1e-14));

    // Nondecreasing in the number of rows for a fixed input.
    double prev = 0.0;
    for (Index rows : {10, 100, 1000, 4000})
    {
        const double r = lower_bound_ratio(Measure::dirac(0.5), params, rows);
        CHECK(r >= prev);
        CHECK(r <= 2.0);
        prev = r;
    }

    // Atom at 0: every row equals c0 a_0, so the ratio grows like sqrt(N).
    const Measure at0 = Measure::dirac(0.0);
    CHECK(lower_bound_ratio(at0, ExtremalParams(PExponent(2.0), 0.01, 4000), 4000) > 10.0);
}

TEST_CASE("p2_section_norm against a dense SVD")
{
    CHECK(p2_section_norm(Measure::lebesgue(), 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p2_section_norm(Measure(), 5) == 0.0);

    const Measure samples[] = {Measure::lebesgue(), Measure::dirac(0.5),
                               Measure({{1.0, -0.5, 0.5}}, {{0.3, 0.4}})};
    for (const auto &mu : samples)
    {
        for (Index n : {2, 7, 33, 100})
        {
            const double svd = oracle::sigma_max_svd(finite_section(mu, n));
            CHECK(p2_section_norm(mu, n) == doctest::Approx(svd).epsilon(1e-8));
        }
    }

    // Rank-one sections from endpoint atoms: c sqrt(N).
    for (Index n : {4, 16, 64})
    {
        CHECK(std::abs(p2_section_norm(Measure::dirac(1.0, 5.0), n) - 5.0 * std::sqrt(double(n))) <=
              1e-9);
        CHECK(std::abs(p2_section_norm(Measure::dirac(0.0, 2.0), n) - 2.0 * std::sqrt(double(n))) <=
              1e-9);
    }
    CHECK(p2_section_norm(Measure::dirac(1.0, 5.0), 4) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("p2_section_norm FFT and dense paths agree")
{
    PowerIterationOptions dense;
    dense.fft_threshold = 1 << 20;
    PowerIterationOptions fft;
    fft.fft_threshold = 1;
    for (Index n : {64, 500})
    {
        CHECK(p2_section_norm(Measure::lebesgue(), n, fft) ==
              doctest::Approx(p2_section_norm(Measure::lebesgue(), n, dense)).epsilon(1e-9));
    }
}

TEST_CASE("p2_section_norm is monotone and below the analytic norm")
{
    double prev = 0.0;
    for (Index n : {8, 32, 128, 512})
    {
        const double s = p2_section_norm(Measure::dirac(0.5), n);
        CHECK(s >= prev);
        CHECK(s <= 2.0 + 1e-9);
        prev = s;
    }
    PowerIterationOptions capped;
    capped.max_iterations = 1;
    capped.tol            = 1e-16;
    CHECK_THROWS_AS(p2_section_norm(Measure({{1.0, 0.5, -0.5}}, {{0.3, 0.4}}), 50, capped),
                    ConvergenceError);
}

TEST_CASE("convergence_sweep")
{
    const auto report = convergence_sweep(Measure::lebesgue(), PExponent(2.0), {0.1, 0.01},
                                          {1000, 10000});
    REQUIRE(report.ratios.size() == 4);
    REQUIRE(report.target.has_value());
    CHECK(*report.target == doctest::Approx(std::numbers::pi));
    // Grid order: eps 0.1 (sizes 1e3, 1e4), then eps 0.01.
    CHECK(report.ratios[0].ratio < report.ratios[1].ratio);
    CHECK(report.ratios[2].ratio < report.ratios[3].ratio);
    // At these sizes the larger epsilon still gives the larger ratio; the
    // smaller one only wins once K is large enough.
    CHECK(report.ratios[0].ratio > report.ratios[2].ratio);
    REQUIRE(report.sigma_max_series.size() == 2);
    CHECK(report.sigma_max_series[0].sigma_max < report.sigma_max_series[1].sigma_max);
    CHECK(report.sigma_max_series[1].sigma_max < std::numbers::pi);

    const auto zero = convergence_sweep(Measure(), PExponent(2.0), {0.1}, {16, 32});
    for (const auto &cell : zero.ratios)
    {
        CHECK(cell.ratio == 0.0);
    }
    for (const auto &cell : zero.sigma_max_series)
    {
        CHECK(cell.sigma_max == 0.0);
    }

    const auto p1 = convergence_sweep(Measure::dirac(0.5), PExponent(1.0), {0.1}, {1000});
    REQUIRE(p1.ratios.size() == 1);
    CHECK(p1.ratios[0].ratio <= 2.0);
    CHECK(p1.ratios[0].ratio > 1.0);
    CHECK(p1.sigma_max_series.empty());

    const auto unbounded =
        convergence_sweep(Measure::dirac(0.0), PExponent(2.0), {0.1}, {16, 64});
    CHECK_FALSE(unbounded.target.has_value());
    CHECK(unbounded.sigma_max_series[1].sigma_max >= std::sqrt(64.0) - 1e-9);

    CHECK_THROWS_AS(convergence_sweep(Measure::lebesgue(), PExponent(2.0), {}, {10}),
                    std::invalid_argument);
}

TEST_CASE("report export")
{
    const auto report =
        convergence_sweep(Measure::dirac(0.5), PExponent(2.0), {0.25}, {4, 8});
    const auto csv = ratios_csv(report);
    CHECK(csv.rfind("epsilon,K,N,ratio\n0.25,4,4,", 0) == 0);
    CHECK(sigma_csv(report).rfind("N,sigma_max\n4,", 0) == 0);
    const auto json = to_json(report);
    CHECK(json.find(R"("verdict":{"status":"bounded")") != std::string::npos);
    CHECK(json.find(R"("sigma_max":[{"N":4,)") != std::string::npos);
}

TEST_CASE("hilbert_check")
{
    const auto result = hilbert_check(PExponent(2.0), 50, 42);
    CHECK(result.trials == 50);
    CHECK(result.violations == 0);
    CHECK(result.max_ratio > 0.5);
    CHECK(result.max_ratio < std::numbers::pi);
    const auto again = hilbert_check(PExponent(2.0), 50, 42);
    CHECK(again.max_ratio == result.max_ratio);
    CHECK_THROWS_AS(hilbert_check(PExponent(1.0), 1, 0), std::domain_error);
}
