#include "genhilbert/operator.hpp"

#include "genhilbert/quadrature.hpp"
#include "genhilbert/special.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace genhilbert
{

namespace
{

void check_t(double t)
{
    if (!(t >= 0.0 && t <= 1.0))
    {
        throw std::domain_error("eval_en: t must lie in [0, 1]");
    }
}

// ln of binom(n+m, m) t^m (1-t)^n advanced from m to m+1.
inline double log_kernel_step(std::uint64_t n, std::uint64_t m, double log_t)
{
    return log_t + std::log(static_cast<double>(n + m + 1) /
                            static_cast<double>(m + 1));
}

// One piece of (0, 1) carrying a Gauss rule adapted to its endpoint
// behaviour.
struct Segment
{
    double lo;
    double hi;
};

// Integral over `seg` of coeff t^alpha (1-t)^beta e_n(t), all n < n_rows, with
// an n-point rule.
Eigen::VectorXd integrate_term(const JacobiTerm &term, const Segment &seg,
                               const SequenceVector &a, Index n_rows,
                               Index points, const EnEvalConfig &cfg)
{
    const bool at_zero = seg.lo == 0.0;
    const bool at_one  = seg.hi == 1.0;
    const double half  = 0.5 * (seg.hi - seg.lo);

    // Singular factor folded into the rule: (1+x)^alpha at 0, (1-x)^beta at 1.
    const GaussRule rule =
        gauss_jacobi(points, at_one ? term.beta : 0.0, at_zero ? term.alpha : 0.0);

    double scale = term.coeff * half;
    if (at_zero)
    {
        scale *= std::pow(half, term.alpha);
    }
    if (at_one)
    {
        scale *= std::pow(half, term.beta);
    }

    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n_rows);
    for (Index i = 0; i < rule.nodes.size(); ++i)
    {
        const double x = rule.nodes[i];
        const double t = at_one ? 1.0 - half * (1.0 - x) : seg.lo + half * (1.0 + x);
        double smooth  = rule.weights[i];
        if (!at_zero)
        {
            smooth *= std::pow(t, term.alpha);
        }
        if (!at_one)
        {
            smooth *= std::pow(1.0 - t, term.beta);
        }
        for (Index n = 0; n < n_rows; ++n)
        {
            acc[n] += smooth * eval_en(static_cast<std::uint64_t>(n), t, a, cfg);
        }
    }
    return scale * acc;
}

Eigen::VectorXd integrate_adaptive(const JacobiTerm &term, const Segment &seg,
                                   const SequenceVector &a, Index n_rows,
                                   const EnEvalConfig &cfg,
                                   const QuadratureOptions &opts)
{
    Index points           = std::max<Index>(opts.start_points, 1);
    Eigen::VectorXd coarse = integrate_term(term, seg, a, n_rows, points, cfg);
    double estimate        = 0.0;
    while (points < opts.max_points)
    {
        points                = std::min(2 * points, opts.max_points);
        Eigen::VectorXd fine  = integrate_term(term, seg, a, n_rows, points, cfg);
        const double floor_sz = 1e-6 * opts.rel_tol * fine.cwiseAbs().maxCoeff();
        estimate              = 0.0;
        bool converged        = true;
        for (Index n = 0; n < n_rows; ++n)
        {
            const double diff = std::abs(fine[n] - coarse[n]);
            const double ref  = std::abs(fine[n]);
            if (diff > opts.rel_tol * ref + floor_sz)
            {
                converged = false;
            }
            if (ref > 0.0)
            {
                estimate = std::max(estimate, diff / ref);
            }
        }
        coarse = std::move(fine);
        if (converged)
        {
            return coarse;
        }
    }
    std::ostringstream os;
    os << "apply_via_quadrature: no convergence on [" << seg.lo << ", " << seg.hi
       << "] with " << points << " points (relative error estimate " << estimate
       << ")";
    throw QuadratureError(os.str(), estimate);
}

} // namespace

double eval_en(std::uint64_t n, double t, std::span<const double> a,
               const EnEvalConfig &cfg)
{
    check_t(t);
    if (a.size() > cfg.max_terms)
    {
        throw EnTruncationError("eval_en: stored sequence longer than max_terms");
    }
    if (a.empty())
    {
        return 0.0;
    }
    if (t == 0.0)
    {
        return a[0];
    }
    if (t == 1.0)
    {
        if (n > 0)
        {
            return 0.0;
        }
        CompensatedSum<double> sum;
        for (double v : a)
        {
            sum.add(v);
        }
        return sum.value();
    }

    const double log_t = std::log(t);
    double log_c       = static_cast<double>(n) * std::log1p(-t);
    CompensatedSum<double> sum;
    for (std::uint64_t m = 0; m < a.size(); ++m)
    {
        if (a[m] != 0.0)
        {
            sum.add(std::exp(log_c) * a[m]);
        }
        log_c += log_kernel_step(n, m, log_t);
    }
    return sum.value();
}

double eval_en(std::uint64_t n, double t,
               const std::function<double(std::uint64_t)> &term, double bound,
               const EnEvalConfig &cfg)
{
    check_t(t);
    if (!(cfg.tail_tol > 0.0))
    {
        throw std::invalid_argument("eval_en: tail_tol must be positive");
    }
    if (t == 0.0)
    {
        return term(0);
    }
    if (t == 1.0)
    {
        if (n > 0)
        {
            return 0.0;
        }
        throw std::domain_error(
            "eval_en: e_0(1) of an infinite sequence is its full sum");
    }

    const double log_t  = std::log(t);
    const double r_star = 0.5 * (1.0 + t);
    double log_c        = static_cast<double>(n) * std::log1p(-t);
    CompensatedSum<double> sum;
    for (std::uint64_t m = 0; m < cfg.max_terms; ++m)
    {
        const double c = std::exp(log_c);
        sum.add(c * term(m));
        const double ratio =
            t * static_cast<double>(m + n + 1) / static_cast<double>(m + 1);
        if (ratio <= r_star)
        {
            // Tail after m is at most bound * c * r* / (1 - r*).
            if (bound * c * r_star / (1.0 - r_star) < cfg.tail_tol)
            {
                return sum.value();
            }
        }
        log_c += log_kernel_step(n, m, log_t);
    }
    throw EnTruncationError("eval_en: tail bound not met within max_terms terms");
}

SequenceVector apply_via_quadrature(const Measure &mu, const SequenceVector &a,
                                    Index n_rows, const EnEvalConfig &cfg,
                                    const QuadratureOptions &opts)
{
    check_section_size(n_rows);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n_rows);

    std::set<double> cuts = {0.0, 0.5, 1.0};
    for (const auto &atom : mu.atoms())
    {
        if (atom.location > 0.0 && atom.location < 1.0)
        {
            cuts.insert(atom.location);
        }
    }
    std::vector<Segment> segments;
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it)
    {
        segments.push_back({*it, *std::next(it)});
    }

    for (const auto &term : mu.jacobi_terms())
    {
        for (const auto &seg : segments)
        {
            out += integrate_adaptive(term, seg, a, n_rows, cfg, opts);
        }
    }
    for (const auto &atom : mu.atoms())
    {
        for (Index n = 0; n < n_rows; ++n)
        {
            out[n] += atom.mass *
                      eval_en(static_cast<std::uint64_t>(n), atom.location, a, cfg);
        }
    }
    if (a.nonneg)
    {
        out = out.cwiseMax(0.0);
    }
    return SequenceVector(std::move(out), a.nonneg);
}

Vector<double> hankel_fast_apply(const Vector<double> &a, Index n_rows)
{
    const Index cols = a.size();
    if (n_rows < 1)
    {
        throw std::invalid_argument("hankel_fast_apply: n_rows must be positive");
    }
    if (n_rows > hankel_size_cap || cols > hankel_size_cap)
    {
        throw ResourceLimitError("hankel_fast_apply: size exceeds cap");
    }
    Vector<double> out = Vector<double>::Zero(n_rows);
    if (cols == 0 || (a.array() == 0.0).all())
    {
        return out;
    }

    const Index needed = n_rows + cols - 1;
    Index size         = 2;
    while (size < needed)
    {
        size <<= 1;
    }

    // d_n = (h * reverse(a))[n + K - 1] with h_j = 1 / (j + 1).
    std::vector<double> h(static_cast<std::size_t>(size), 0.0);
    std::vector<double> r(static_cast<std::size_t>(size), 0.0);
    for (Index j = 0; j < needed; ++j)
    {
        h[j] = 1.0 / static_cast<double>(j + 1);
    }
    for (Index k = 0; k < cols; ++k)
    {
        r[cols - 1 - k] = a[k];
    }

    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    std::vector<std::complex<double>> hf;
    std::vector<std::complex<double>> rf;
    fft.fwd(hf, h);
    fft.fwd(rf, r);
    for (std::size_t i = 0; i < hf.size(); ++i)
    {
        hf[i] *= rf[i];
    }
    std::vector<double> conv;
    fft.inv(conv, hf, size);

    const bool nonneg = (a.array() >= 0.0).all();
    for (Index n = 0; n < n_rows; ++n)
    {
        const double v = conv[static_cast<std::size_t>(n + cols - 1)];
        out[n]         = nonneg ? std::max(v, 0.0) : v;
    }
    return out;
}

} // namespace genhilbert
