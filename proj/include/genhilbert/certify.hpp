#ifndef GENHILBERT_CERTIFY_HPP
#define GENHILBERT_CERTIFY_HPP

#include "genhilbert/kernel.hpp"
#include "genhilbert/measure.hpp"
#include "genhilbert/norm.hpp"
#include "genhilbert/sequence.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace genhilbert
{

///
/// ### ExtremalParams
///
/// Test sequence a_n = (n + 1)^(-w), w = 1/p + epsilon, n < length. Any
/// epsilon > 0 makes p w > 1, so the infinite sequence lies in l^p.
///
class ExtremalParams
{
public:
    ExtremalParams(PExponent p, double epsilon, Index length);

    const PExponent &p() const noexcept { return m_p; }
    double epsilon() const noexcept { return m_epsilon; }
    double w() const noexcept { return m_p.reciprocal() + m_epsilon; }
    Index length() const noexcept { return m_length; }

private:
    PExponent m_p;
    double m_epsilon;
    Index m_length;
};

SequenceVector extremal_sequence(const ExtremalParams &params);

///
/// ||C a||_p / ||a||_p for the extremal sequence a, with C truncated to
/// `n_rows` rows. Entries are nonnegative, so this never exceeds the operator
/// norm. Multiples of Lebesgue measure go through the FFT Hankel product;
/// other measures use the entrywise product (subject to the section cap).
/// Returns +infinity when the image overflows.
///
double lower_bound_ratio(const Measure &mu, const ExtremalParams &params,
                         Index n_rows);

/// Power iteration stopped before reaching the requested tolerance.
class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(const std::string &what, double last)
        : std::runtime_error(what), m_last(last)
    {
    }

    double last_estimate() const noexcept { return m_last; }

private:
    double m_last;
};

struct PowerIterationOptions
{
    double tol              = 1e-10;
    Index max_iterations    = 50000;
    /// Multiples of Lebesgue measure above this size use the FFT product
    /// instead of a dense section.
    Index fft_threshold     = 2048;
};

///
/// Largest singular value of the N x N section by power iteration on the
/// Gram operator A^T A, starting from the normalized all-ones vector and
/// stopping when successive estimates agree to `opts.tol` relative. Each
/// estimate ||A v|| with ||v|| = 1 is a lower bound for sigma_max.
///
double p2_section_norm(const Measure &mu, Index size,
                       const PowerIterationOptions &opts = {});

struct RatioCell
{
    double epsilon;
    Index length;
    Index rows;
    double ratio;
};

struct SigmaCell
{
    Index size;
    double sigma_max;
};

///
/// ### CertificationReport
///
/// Extremal lower-bound ratios over an (epsilon, size) grid, the p = 2
/// section norms, and the analytic verdict they are compared against.
/// `target` is empty when the operator is unbounded.
///
struct CertificationReport
{
    NormVerdict verdict;
    std::optional<double> target;
    std::vector<RatioCell> ratios;
    std::vector<SigmaCell> sigma_max_series;
};

/// A report invariant (ratio above target, decreasing sigma series) failed.
class CertificationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Slack allowed between a lower bound and the analytic norm.
inline constexpr double certification_slack = 1e-6;

///
/// lower_bound_ratio for every epsilon in `eps_grid` and every size in
/// `size_grid` (K = n_rows = size), plus p2_section_norm over `size_grid`
/// when p = 2. Throws CertificationError if a report invariant fails.
///
CertificationReport convergence_sweep(const Measure &mu, const PExponent &p,
                                      const std::vector<double> &eps_grid,
                                      const std::vector<Index> &size_grid,
                                      const PowerIterationOptions &opts = {});

/// Outcome of hilbert_check.
struct HilbertCheckResult
{
    Index trials     = 0;
    Index violations = 0;
    /// Largest observed (b, H a) / (||a||_p ||b||_q) over the trials.
    double max_ratio = 0.0;
};

/// Tolerance on the classical inequality used by hilbert_check.
inline constexpr double hilbert_check_slack = 1e-9;

///
/// Samples `trials` pairs (a, b) of nonnegative sequences from SplitMix64(seed):
/// per pair, the lengths are 1 + below(max_terms) (a first, then b) and the
/// values are uniform() draws, a's then b's. Each pair is checked against
/// (b, H a) <= pi / sin(pi / p) ||a||_p ||b||_q + hilbert_check_slack, with H
/// the classical Hilbert matrix.
///
HilbertCheckResult hilbert_check(const PExponent &p, Index trials,
                                 std::uint64_t seed, Index max_terms = 64);

/// CSV table `epsilon,K,N,ratio`.
std::string ratios_csv(const CertificationReport &report);
/// CSV table `N,sigma_max`.
std::string sigma_csv(const CertificationReport &report);
/// JSON bundle with the verdict, target and both tables.
std::string to_json(const CertificationReport &report);

} // namespace genhilbert

#endif
