#include "genhilbert/norm.hpp"
#include "genhilbert/operator.hpp"
#include "genhilbert/quadrature.hpp"
#include "genhilbert/rng.hpp"

#include "corpus.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace genhilbert;

namespace
{

SequenceVector random_nonneg(SplitMix64 &rng, Index size)
{
    Vector<double> v(size);
    for (Index i = 0; i < size; ++i)
    {
        v[i] = rng.uniform();
    }
    return SequenceVector(std::move(v), true);
}

SequenceVector ones(Index size)
{
    return SequenceVector(Vector<double>::Ones(size), true);
}

} // namespace

TEST_CASE("apply_truncated examples")
{
    Vector<double> e0 = Vector<double>::Zero(5);
    e0[0]             = 1.0;
    const auto d      = apply_truncated<double>(Measure::lebesgue(), e0, 3);
    CHECK(d[0] == 1.0);
    CHECK(d[1] == doctest::Approx(0.5).epsilon(1e-16));
    CHECK(d[2] == doctest::Approx(1.0 / 3).epsilon(1e-16));

    CHECK(apply_truncated<double>(Measure(), Vector<double>::Ones(4), 6).isZero(0.0));

    // d_0 = sum_{k<K} 2^-k = 2 - 2^(1-K).
    for (Index K : {1, 2, 10, 40})
    {
        const auto d0 = apply_truncated(Measure::dirac(0.5), ones(K), 1);
        CHECK(d0[0] == doctest::Approx(2.0 - std::ldexp(1.0, int(1 - K))).epsilon(1e-15));
    }

    CHECK_THROWS_AS(apply_truncated<double>(Measure::lebesgue(), e0, 20000),
                    ResourceLimitError);
}

TEST_CASE("eval_en examples")
{
    const std::vector<double> a = {0.7, 1.0, 2.0, 3.0};
    for (std::uint64_t n : {0u, 1u, 5u})
    {
        CHECK(eval_en(n, 0.0, a) == 0.7);
    }
    for (std::uint64_t n : {1u, 2u, 9u})
    {
        CHECK(eval_en(n, 1.0, a) == 0.0);
    }
    CHECK(eval_en(0, 1.0, a) == doctest::Approx(6.7));

    // n = 0, t = 1/2, a = ones: sum_{m<K} 2^-m = 2 - 2^-(K-1).
    for (Index K : {1, 3, 20})
    {
        CHECK(eval_en(0, 0.5, ones(K)) ==
              doctest::Approx(2.0 - std::ldexp(1.0, -int(K - 1))).epsilon(1e-15));
    }

    // Direct summation oracle at a generic point.
    const double t = 0.37;
    double direct  = 0.0;
    for (std::uint64_t m = 0; m < a.size(); ++m)
    {
        direct += double(oracle::binomial(3 + m, m)) * std::pow(t, double(m)) *
                  std::pow(1 - t, 3.0) * a[m];
    }
    CHECK(eval_en(3, t, a) == doctest::Approx(direct).epsilon(1e-14));

    CHECK_THROWS_AS(eval_en(0, 1.5, a), std::domain_error);
    EnEvalConfig tight;
    tight.max_terms = 3;
    CHECK_THROWS_AS(eval_en(0, 0.5, a, tight), EnTruncationError);
}

TEST_CASE("eval_en for infinite sequences uses the ratio tail bound")
{
    // Constant sequence: e_n(t) = (1-t)^n (1-t)^(-n-1) = 1/(1-t).
    const auto one = [](std::uint64_t) { return 1.0; };
    for (double t : {0.1, 0.5, 0.9})
    {
        for (std::uint64_t n : {0u, 3u, 30u})
        {
            const double v = eval_en(n, t, one, 1.0);
            CHECK(std::abs(v - 1.0 / (1.0 - t)) <= 1e-11);
        }
    }
    // Geometric a_m = r^m: e_n(t) = (1-t)^n / (1-rt)^(n+1).
    const double r = 0.6;
    const auto geo = [r](std::uint64_t m) { return std::pow(r, double(m)); };
    CHECK(eval_en(4, 0.7, geo, 1.0) ==
          doctest::Approx(std::pow(0.3, 4) / std::pow(1 - r * 0.7, 5)).epsilon(1e-11));

    CHECK(eval_en(2, 1.0, one, 1.0) == 0.0);
    CHECK_THROWS_AS(eval_en(0, 1.0, one, 1.0), std::domain_error);
    EnEvalConfig small;
    small.max_terms = 50;
    CHECK_THROWS_AS(eval_en(0, 0.999, one, 1.0, small), EnTruncationError);
}

TEST_CASE("gauss_jacobi rules integrate Jacobi moments")
{
    for (double a : {0.0, -0.5, 0.7})
    {
        for (double b : {0.0, -0.8, 1.5})
        {
            const auto rule = gauss_jacobi(12, a, b);
            for (int deg = 0; deg < 20; deg += 3)
            {
                // int x^deg (1-x)^a (1+x)^b over [-1, 1] in y = 1 + x.
                const double ref = oracle::tanh_sinh(
                    [&](double y, double s) {
                        return std::pow(y - 1.0, deg) * std::pow(s, a) * std::pow(y, b);
                    },
                    0.0, 2.0, 1e-13);
                const double quad =
                    (rule.weights.array() * rule.nodes.array().pow(deg)).sum();
                INFO("a=" << a << " b=" << b << " deg=" << deg);
                CHECK(quad == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
            }
        }
    }
}

TEST_CASE("apply_via_quadrature examples")
{
    Vector<double> e0 = Vector<double>::Zero(4);
    e0[0]             = 1.0;
    const auto d = apply_via_quadrature(Measure::lebesgue(), SequenceVector(e0, true), 5);
    const auto ref = apply_truncated<double>(Measure::lebesgue(), e0, 5);
    for (Index n = 0; n < 5; ++n)
    {
        CHECK(d[n] == doctest::Approx(1.0 / double(n + 1)).epsilon(1e-8));
        CHECK(d[n] == doctest::Approx(ref[n]).epsilon(1e-8));
    }

    const SequenceVector a(Vector<double>::LinSpaced(6, 0.5, 3.0), true);
    const auto top = apply_via_quadrature(Measure::dirac(1.0, 2.0), a, 4);
    CHECK(top[0] == doctest::Approx(2.0 * a.values.sum()).epsilon(1e-15));
    CHECK(top.values.tail(3).isZero(0.0));

    const auto col = apply_via_quadrature(Measure::dirac(0.0, 3.0), a, 4);
    CHECK(col.values.isConstant(3.0 * a[0], 0.0));
}

TEST_CASE("apply routes agree on random measures")
{
    SplitMix64 rng(20240611);
    for (int trial = 0; trial < 12; ++trial)
    {
        const auto mu   = corpus::random_interior(rng);
        const Index K   = 1 + Index(rng.below(48));
        const Index N   = 1 + Index(rng.below(48));
        const auto a    = random_nonneg(rng, K);
        const auto slow = apply_via_quadrature(mu, a, N);
        const auto fast = apply_truncated(mu, a, N);
        for (Index n = 0; n < N; ++n)
        {
            INFO("trial " << trial << " n=" << n);
            CHECK(std::abs(slow[n] - fast[n]) <= 1e-7 * std::abs(fast[n]));
        }
    }
}

TEST_CASE("positivity and monotonicity in the truncation")
{
    SplitMix64 rng(7);
    for (const auto &mu : corpus::mixed_measures())
    {
        const auto a  = random_nonneg(rng, 30);
        const auto d  = apply_truncated(mu, a, 25);
        CHECK((d.values.array() >= 0.0).all());
        // More input terms never lower an output term.
        const SequenceVector shorter(Vector<double>(a.values.head(20)), true);
        const auto d_short = apply_truncated(mu, shorter, 25);
        CHECK((d.values.array() >= d_short.values.array()).all());
        // More rows extend without changing the leading rows.
        const auto d_more = apply_truncated(mu, a, 40);
        CHECK(d_more.values.head(25) == d.values);
    }
}

TEST_CASE("truncated images respect the analytic norm")
{
    SplitMix64 rng(99);
    for (const auto &mu : corpus::interior_measures())
    {
        for (double pv : {1.0, 1.5, 2.0, 4.0})
        {
            const PExponent p(pv);
            const auto verdict = classify_boundedness(mu, p);
            if (!verdict.bounded())
            {
                continue;
            }
            for (int trial = 0; trial < 5; ++trial)
            {
                const auto a = random_nonneg(rng, 1 + Index(rng.below(60)));
                const auto d = apply_truncated(mu, a, 80);
                CHECK(lp_norm(d.values, pv) <=
                      *verdict.norm * lp_norm(a.values, pv) + 1e-9);
            }
        }
    }
}

TEST_CASE("hankel_fast_apply")
{
    Vector<double> single(1);
    single[0]    = 1.0;
    const auto d = hankel_fast_apply(single, 4);
    for (Index n = 0; n < 4; ++n)
    {
        CHECK(d[n] == doctest::Approx(1.0 / double(n + 1)).epsilon(1e-14));
    }
    CHECK(hankel_fast_apply(Vector<double>(Vector<double>::Zero(8)), 5).isZero(0.0));

    SplitMix64 rng(1024);
    Vector<double> a(1024);
    for (Index i = 0; i < a.size(); ++i)
    {
        a[i] = rng.uniform();
    }
    const auto fast  = hankel_fast_apply(a, 1024);
    const auto naive = oracle::hilbert_naive(a, 1024);
    CHECK((fast - naive).cwiseAbs().maxCoeff() <= 1e-10 * naive.cwiseAbs().maxCoeff());

    // Rectangular shapes and signed input.
    Vector<double> signed_a = Vector<double>::LinSpaced(37, -1.0, 1.3);
    const auto rect         = hankel_fast_apply(signed_a, 100);
    const auto rect_ref     = oracle::hilbert_naive(signed_a, 100);
    CHECK((rect - rect_ref).cwiseAbs().maxCoeff() <=
          1e-10 * rect_ref.cwiseAbs().maxCoeff());

    CHECK_THROWS_AS(hankel_fast_apply(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(hankel_fast_apply(a, hankel_size_cap + 1), ResourceLimitError);
}

TEST_CASE("Hilbert's inequality on random pairs")
{
    SplitMix64 rng(5);
    const auto lebesgue = Measure::lebesgue();
    for (double pv : {1.25, 2.0, 3.0, 6.0})
    {
        const PExponent p(pv);
        const double c = classical_constant(p);
        const double q = p.conjugate().value();
        for (int trial = 0; trial < 20; ++trial)
        {
            const auto a = random_nonneg(rng, 1 + Index(rng.below(50)));
            const auto b = random_nonneg(rng, 1 + Index(rng.below(50)));
            const double form =
                b.values.dot(apply_truncated<double>(lebesgue, a.values, b.size()));
            CHECK(form <= c * lp_norm(a.values, pv) * lp_norm(b.values, q) + 1e-9);
        }
    }
}

TEST_CASE("exponential inequality on a grid")
{
    // (1-t) / (1 - t e^-x) >= exp(-t x / (1-t)) for x >= 0, t in [0, 1).
    for (int i = 0; i <= 100; ++i)
    {
        const double x = 0.1 * i;
        for (int j = 0; j <= 19; ++j)
        {
            const double t   = 0.05 * j;
            const double lhs = (1 - t) / (1 - t * std::exp(-x));
            const double rhs = std::exp(-t * x / (1 - t));
            CHECK(lhs - rhs >= -1e-12);
        }
    }
}

TEST_CASE("Gamma integral identity")
{
    // (1/Gamma(w)) int_0^inf e^(-a x) x^(w-1) dx = a^(-w); x = u / (1 - u).
    for (double a : {0.5, 1.0, 2.0})
    {
        for (double w : {0.5, 1.0, 1.5, 2.0})
        {
            const double integral = oracle::tanh_sinh(
                [&](double u, double s) {
                    const double x     = u / s;
                    const double decay = std::exp(-a * x);
                    return decay == 0.0 ? 0.0 : decay * std::pow(x, w - 1) / (s * s);
                },
                0.0, 1.0, 1e-12);
            CHECK(integral / std::tgamma(w) ==
                  doctest::Approx(std::pow(a, -w)).epsilon(1e-8));
        }
    }
}

TEST_CASE("generating function of the binomial column")
{
    // sum_n binom(n+m, m) s^n = (1-s)^(-m-1), partial sums increasing.
    for (std::uint64_t m = 0; m <= 20; ++m)
    {
        for (int i = 1; i <= 9; ++i)
        {
            const double s      = 0.1 * i;
            const double target = std::pow(1 - s, -double(m) - 1);
            double sum          = 0.0;
            double term         = 1.0; // binom(m, m) s^0
            std::uint64_t n     = 0;
            for (; n < 100000; ++n)
            {
                sum += term;
                const double next = term * s * double(n + m + 1) / double(n + 1);
                // Remaining tail once terms decay geometrically below ratio r.
                const double ratio = s * double(n + m + 2) / double(n + 2);
                if (ratio < 1.0 && next / (1.0 - ratio) < 1e-10 * target)
                {
                    break;
                }
                term = next;
            }
            INFO("m=" << m << " s=" << s);
            CHECK(std::abs(sum - target) <= 1e-10 * target);
        }
    }
}
