#ifndef GENHILBERT_SPECIAL_HPP
#define GENHILBERT_SPECIAL_HPP

#include <cmath>
#include <cstdint>

namespace genhilbert
{

///
/// ln(Gamma(x) / Gamma(y)) for x, y > 0.
///
/// When x - y is an integer of modest size the ratio is the rising product
/// y (y+1) ... (x-1), which is accumulated directly. This keeps entries such
/// as 1/(n+k+1) accurate to a few ulps instead of paying the cancellation of
/// two large lgamma values.
///
template <typename Scalar>
Scalar log_gamma_ratio(Scalar x, Scalar y)
{
    using std::lgamma;
    using std::log;
    const Scalar diff = x - y;
    if (diff == Scalar(0))
    {
        return Scalar(0);
    }
    const Scalar rounded = std::nearbyint(diff);
    if (diff == rounded && std::abs(diff) <= Scalar(4096))
    {
        const bool negate = diff < 0;
        Scalar lo         = negate ? x : y;
        const auto count  = static_cast<std::int64_t>(std::abs(rounded));
        Scalar acc        = 0;
        Scalar prod       = 1;
        for (std::int64_t j = 0; j < count; ++j)
        {
            prod *= lo + static_cast<Scalar>(j);
            if (prod > Scalar(1e280) || prod < Scalar(1e-280))
            {
                acc += log(prod);
                prod = 1;
            }
        }
        acc += log(prod);
        return negate ? -acc : acc;
    }
    return lgamma(x) - lgamma(y);
}

/// ln B(x, y) for x, y > 0.
template <typename Scalar>
Scalar log_beta(Scalar x, Scalar y)
{
    using std::lgamma;
    return lgamma(x) + lgamma(y) - lgamma(x + y);
}

/// B(x, y) = exp(lgamma(x) + lgamma(y) - lgamma(x + y)).
template <typename Scalar>
Scalar beta_function(Scalar x, Scalar y)
{
    return std::exp(log_beta(x, y));
}

///
/// ln binom(n + k, k).
///
/// Short products are summed as logs of (n + j) / j; otherwise log-gamma.
/// Relative accuracy is better than 1e-12 for n + k <= 1e6.
///
template <typename Scalar>
Scalar log_binomial(std::uint64_t n, std::uint64_t k)
{
    using std::lgamma;
    using std::log;
    const std::uint64_t small = n < k ? n : k;
    const std::uint64_t large = n < k ? k : n;
    if (small <= 1024)
    {
        Scalar acc = 0;
        for (std::uint64_t j = 1; j <= small; ++j)
        {
            acc += log(Scalar(large + j) / Scalar(j));
        }
        return acc;
    }
    return lgamma(Scalar(n + k + 1)) - lgamma(Scalar(n + 1)) -
           lgamma(Scalar(k + 1));
}

/// Neumaier-compensated running sum.
template <typename Scalar>
class CompensatedSum
{
public:
    void add(Scalar x)
    {
        const Scalar t = m_sum + x;
        if (std::abs(m_sum) >= std::abs(x))
        {
            m_comp += (m_sum - t) + x;
        }
        else
        {
            m_comp += (x - t) + m_sum;
        }
        m_sum = t;
    }

    Scalar value() const { return m_sum + m_comp; }

private:
    Scalar m_sum  = 0;
    Scalar m_comp = 0;
};

} // namespace genhilbert

#endif
