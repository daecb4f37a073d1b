#ifndef GENHILBERT_KERNEL_HPP
#define GENHILBERT_KERNEL_HPP

#include "genhilbert/measure.hpp"
#include "genhilbert/parallel.hpp"
#include "genhilbert/special.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace genhilbert
{

using Index = Eigen::Index;

/// Dense N x N leading truncation of the generalized Hilbert matrix; row index
/// n, column index k.
template <typename Scalar>
using Section =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Largest dense section (and row count for truncated applies) allowed.
inline constexpr Index default_section_cap = 16384;

class ResourceLimitError : public std::length_error
{
public:
    using std::length_error::length_error;
};

inline void check_section_size(Index size, Index cap = default_section_cap)
{
    if (size < 1)
    {
        throw std::invalid_argument("section size must be at least 1");
    }
    if (size > cap)
    {
        throw ResourceLimitError("requested size " + std::to_string(size) +
                                 " exceeds cap " + std::to_string(cap));
    }
}

namespace detail
{

// Pieces of the log of binom(n+k,k) * coeff * B(k+alpha+1, n+beta+1):
//   ln coeff + ln G(k+alpha+1)/G(k+1) + ln G(n+beta+1)/G(n+1)
//            + ln G(n+k+1)/G(n+k+alpha+beta+2)
template <typename Scalar>
Scalar jacobi_column_factor(const JacobiTerm &term, std::uint64_t k)
{
    const Scalar kk = static_cast<Scalar>(k);
    return log_gamma_ratio<Scalar>(kk + Scalar(term.alpha) + 1, kk + 1);
}

template <typename Scalar>
Scalar jacobi_row_factor(const JacobiTerm &term, std::uint64_t n)
{
    const Scalar nn = static_cast<Scalar>(n);
    return log_gamma_ratio<Scalar>(nn + Scalar(term.beta) + 1, nn + 1);
}

template <typename Scalar>
Scalar jacobi_diagonal_factor(const JacobiTerm &term, std::uint64_t s)
{
    const Scalar ss = static_cast<Scalar>(s);
    return log_gamma_ratio<Scalar>(
        ss + 1, ss + Scalar(term.alpha) + Scalar(term.beta) + 2);
}

template <typename Scalar>
Scalar log_factorial(std::uint64_t i)
{
    using std::lgamma;
    return lgamma(static_cast<Scalar>(i) + 1);
}

template <typename Scalar>
Scalar atom_value(const Atom &atom, std::uint64_t n, std::uint64_t k,
                  Scalar log_binom)
{
    using std::exp;
    using std::log;
    using std::log1p;
    const Scalar s = static_cast<Scalar>(atom.location);
    if (atom.location == 0.0)
    {
        return k == 0 ? Scalar(atom.mass) : Scalar(0);
    }
    if (atom.location == 1.0)
    {
        return n == 0 ? Scalar(atom.mass) : Scalar(0);
    }
    return exp(log(Scalar(atom.mass)) + log_binom +
               static_cast<Scalar>(n) * log1p(-s) +
               static_cast<Scalar>(k) * log(s));
}

template <typename Scalar>
class Accumulator
{
public:
    explicit Accumulator(std::size_t count) : m_compensated(count >= 16) {}

    void add(Scalar x)
    {
        if (m_compensated)
        {
            m_csum.add(x);
        }
        else
        {
            m_sum += x;
        }
    }

    Scalar value() const { return m_compensated ? m_csum.value() : m_sum; }

private:
    bool m_compensated;
    Scalar m_sum = 0;
    CompensatedSum<Scalar> m_csum;
};

} // namespace detail

///
/// ### KernelEvaluator
///
/// Evaluates entries C_{n,k} of the generalized Hilbert matrix for a fixed
/// measure over an index window [0, rows) x [0, cols), with the per-row,
/// per-column and per-antidiagonal log-gamma factors tabulated once.
///
/// Every entry is a sum of one exponential per nonzero measure component,
/// taken in the measure's stored order. The tabulated factors are produced
/// by the same functions `entry()` calls directly, so values agree bit for
/// bit with `entry()`.
///
template <typename Scalar>
class KernelEvaluator
{
public:
    KernelEvaluator(const Measure &mu, Index rows, Index cols)
        : m_mu(&mu), m_rows(rows), m_cols(cols)
    {
        const auto &terms = mu.jacobi_terms();
        m_log_coeff.reserve(terms.size());
        m_col.resize(terms.size());
        m_row.resize(terms.size());
        m_diag.resize(terms.size());
        for (std::size_t j = 0; j < terms.size(); ++j)
        {
            m_log_coeff.push_back(std::log(Scalar(terms[j].coeff)));
            m_col[j].resize(static_cast<std::size_t>(cols));
            m_row[j].resize(static_cast<std::size_t>(rows));
            m_diag[j].resize(static_cast<std::size_t>(rows + cols - 1));
            for (Index k = 0; k < cols; ++k)
            {
                m_col[j][k] = detail::jacobi_column_factor<Scalar>(terms[j], k);
            }
            for (Index n = 0; n < rows; ++n)
            {
                m_row[j][n] = detail::jacobi_row_factor<Scalar>(terms[j], n);
            }
            for (Index s = 0; s < rows + cols - 1; ++s)
            {
                m_diag[j][s] =
                    detail::jacobi_diagonal_factor<Scalar>(terms[j], s);
            }
        }
        if (has_interior_atoms())
        {
            m_log_fact.resize(static_cast<std::size_t>(rows + cols - 1));
            for (Index i = 0; i < rows + cols - 1; ++i)
            {
                m_log_fact[i] = detail::log_factorial<Scalar>(i);
            }
        }
    }

    Index rows() const noexcept { return m_rows; }
    Index cols() const noexcept { return m_cols; }

    Scalar operator()(Index n, Index k) const
    {
        const auto &terms = m_mu->jacobi_terms();
        const auto &atoms = m_mu->atoms();
        detail::Accumulator<Scalar> acc(terms.size() + atoms.size());
        for (std::size_t j = 0; j < terms.size(); ++j)
        {
            acc.add(std::exp(m_log_coeff[j] + m_col[j][k] + m_row[j][n] +
                             m_diag[j][n + k]));
        }
        if (!atoms.empty())
        {
            const Scalar log_binom =
                m_log_fact.empty()
                    ? Scalar(0)
                    : m_log_fact[n + k] - m_log_fact[n] - m_log_fact[k];
            for (const auto &atom : atoms)
            {
                acc.add(detail::atom_value<Scalar>(atom, n, k, log_binom));
            }
        }
        return acc.value();
    }

private:
    bool has_interior_atoms() const
    {
        for (const auto &atom : m_mu->atoms())
        {
            if (atom.location != 0.0 && atom.location != 1.0)
            {
                return true;
            }
        }
        return false;
    }

    const Measure *m_mu;
    Index m_rows;
    Index m_cols;
    std::vector<Scalar> m_log_coeff;
    std::vector<std::vector<Scalar>> m_col;
    std::vector<std::vector<Scalar>> m_row;
    std::vector<std::vector<Scalar>> m_diag;
    std::vector<Scalar> m_log_fact;
};

///
/// Entry C_{n,k} = binom(n+k, k) * integral of (1-t)^n t^k dmu(t).
///
/// Endpoint atoms follow 0^0 = 1: an atom at 0 only reaches column 0 and an
/// atom at 1 only reaches row 0.
///
template <typename Scalar = double>
Scalar entry(const Measure &mu, std::uint64_t n, std::uint64_t k)
{
    const auto &terms = mu.jacobi_terms();
    const auto &atoms = mu.atoms();
    detail::Accumulator<Scalar> acc(terms.size() + atoms.size());
    for (const auto &term : terms)
    {
        acc.add(std::exp(std::log(Scalar(term.coeff)) +
                         detail::jacobi_column_factor<Scalar>(term, k) +
                         detail::jacobi_row_factor<Scalar>(term, n) +
                         detail::jacobi_diagonal_factor<Scalar>(term, n + k)));
    }
    if (!atoms.empty())
    {
        bool interior = false;
        for (const auto &atom : atoms)
        {
            interior = interior || (atom.location != 0.0 && atom.location != 1.0);
        }
        const Scalar log_binom =
            interior ? detail::log_factorial<Scalar>(n + k) -
                           detail::log_factorial<Scalar>(n) -
                           detail::log_factorial<Scalar>(k)
                     : Scalar(0);
        for (const auto &atom : atoms)
        {
            acc.add(detail::atom_value<Scalar>(atom, n, k, log_binom));
        }
    }
    return acc.value();
}

/// N x N leading section, computed row-parallel with a fixed per-entry
/// evaluation order (output independent of thread count).
template <typename Scalar = double>
Section<Scalar> finite_section(const Measure &mu, Index size,
                               Index cap = default_section_cap)
{
    check_section_size(size, cap);
    const KernelEvaluator<Scalar> kernel(mu, size, size);
    Section<Scalar> out(size, size);
    parallel_for(0, static_cast<std::size_t>(size), [&](std::size_t n) {
        for (Index k = 0; k < size; ++k)
        {
            out(static_cast<Index>(n), k) = kernel(static_cast<Index>(n), k);
        }
    });
    return out;
}

///
/// ### Decomposition
///
/// Split of the measure into its restriction to (0, 1) and the endpoint
/// masses c0 (at 0) and c1 (at 1). The atomic matrix has c0 down the first
/// column, c1 along the first row and c0 + c1 in the corner.
///
struct Decomposition
{
    Measure smooth;
    double c0 = 0.0;
    double c1 = 0.0;

    double atomic_entry(std::uint64_t n, std::uint64_t k) const
    {
        return (k == 0 ? c0 : 0.0) + (n == 0 ? c1 : 0.0);
    }
};

Decomposition decompose(const Measure &mu);

} // namespace genhilbert

#endif
