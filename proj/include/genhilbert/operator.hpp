#ifndef GENHILBERT_OPERATOR_HPP
#define GENHILBERT_OPERATOR_HPP

#include "genhilbert/kernel.hpp"
#include "genhilbert/measure.hpp"
#include "genhilbert/sequence.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>

namespace genhilbert
{

///
/// d_n = sum_{k<K} C_{n,k} a_k for n < n_rows: the exact truncation of the
/// operator to the stored input terms. Rows are computed independently (and
/// concurrently) with a fixed left-to-right summation order.
///
template <typename Scalar = double, typename Derived>
Vector<Scalar> apply_truncated(const Measure &mu,
                               const Eigen::MatrixBase<Derived> &a,
                               Index n_rows, Index cap = default_section_cap)
{
    check_section_size(n_rows, cap);
    const Index cols = a.size();
    Vector<Scalar> out = Vector<Scalar>::Zero(n_rows);
    if (cols == 0 || mu.empty())
    {
        return out;
    }
    const KernelEvaluator<Scalar> kernel(mu, n_rows, cols);
    parallel_for(0, static_cast<std::size_t>(n_rows), [&](std::size_t row) {
        const Index n = static_cast<Index>(row);
        Scalar acc    = 0;
        for (Index k = 0; k < cols; ++k)
        {
            const Scalar ak = static_cast<Scalar>(a[k]);
            if (ak != Scalar(0))
            {
                acc += kernel(n, k) * ak;
            }
        }
        out[n] = acc;
    });
    return out;
}

inline SequenceVector apply_truncated(const Measure &mu, const SequenceVector &a,
                                      Index n_rows,
                                      Index cap = default_section_cap)
{
    return SequenceVector(apply_truncated<double>(mu, a.values, n_rows, cap),
                          a.nonneg);
}

/// Truncation policy for the series defining e_n(t).
struct EnEvalConfig
{
    double tail_tol         = 1e-12;
    std::uint64_t max_terms = 10'000'000;
};

/// The series for e_n(t) could not be summed within `max_terms` terms.
class EnTruncationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

///
/// e_n(t) = sum_m binom(n+m, m) t^m (1-t)^n a_m for a finite stored sequence.
///
/// The sum over the stored terms is exact (every term is computed); a stored
/// length above `cfg.max_terms` is rejected. e_n(0) = a_0, e_n(1) = 0 for
/// n >= 1 and e_0(1) = sum of the stored a_m.
///
double eval_en(std::uint64_t n, double t, std::span<const double> a,
               const EnEvalConfig &cfg = {});

inline double eval_en(std::uint64_t n, double t, const SequenceVector &a,
                      const EnEvalConfig &cfg = {})
{
    return eval_en(n, t, std::span<const double>(a.values.data(), a.values.size()),
                   cfg);
}

///
/// e_n(t) for an infinite sequence given by `term(m)` with |term(m)| <= bound.
///
/// Summation stops once the kernel ratio t (m+n+1)/(m+1) has dropped below
/// r = (1+t)/2 and the geometric tail bound bound * T_m * r / (1 - r) is below
/// `cfg.tail_tol`. Throws EnTruncationError if that takes more than
/// `cfg.max_terms` terms, and std::domain_error for n = 0, t = 1 (the value
/// is the full sum of the sequence).
///
double eval_en(std::uint64_t n, double t,
               const std::function<double(std::uint64_t)> &term, double bound,
               const EnEvalConfig &cfg = {});

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error
{
public:
    QuadratureError(const std::string &what, double estimate)
        : std::runtime_error(what), m_estimate(estimate)
    {
    }

    /// Achieved relative error estimate at the last refinement.
    double estimate() const noexcept { return m_estimate; }

private:
    double m_estimate;
};

struct QuadratureOptions
{
    double rel_tol            = 1e-9;
    Eigen::Index start_points = 16;
    Eigen::Index max_points   = 1024;
};

///
/// b_n = integral of e_n(t) dmu(t), evaluated independently of the matrix
/// entries.
///
/// The Jacobi part is integrated numerically on (0, 1) split at 1/2 and at
/// interior atom locations; pieces touching an endpoint use a Gauss-Jacobi
/// rule carrying that endpoint's singular factor, interior pieces use
/// Gauss-Legendre. Rules are doubled until successive estimates agree to
/// `opts.rel_tol`. Atoms add mass * e_n(s) directly, so the atom at 0 adds
/// c0 * a_0 to every row and the atom at 1 adds c1 * sum(a) to row 0.
///
SequenceVector apply_via_quadrature(const Measure &mu, const SequenceVector &a,
                                    Index n_rows, const EnEvalConfig &cfg = {},
                                    const QuadratureOptions &opts = {});

/// Largest size accepted by hankel_fast_apply for both n_rows and K.
inline constexpr Index hankel_size_cap = Index(1) << 22;

///
/// Classical Hilbert matrix times a: d_n = sum_k a_k / (n + k + 1) for
/// n < n_rows, by embedding the Hankel product in a circular convolution of
/// power-of-two length >= n_rows + K - 1 and using the FFT. O(M log M).
///
Vector<double> hankel_fast_apply(const Vector<double> &a, Index n_rows);

inline SequenceVector hankel_fast_apply(const SequenceVector &a, Index n_rows)
{
    return SequenceVector(hankel_fast_apply(a.values, n_rows), false);
}

} // namespace genhilbert

#endif
