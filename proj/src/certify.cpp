#include "genhilbert/certify.hpp"

#include "genhilbert/io.hpp"
#include "genhilbert/operator.hpp"
#include "genhilbert/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <limits>

namespace genhilbert
{

ExtremalParams::ExtremalParams(PExponent p, double epsilon, Index length)
    : m_p(p), m_epsilon(epsilon), m_length(length)
{
    if (m_p.is_infinite())
    {
        throw std::invalid_argument("extremal sequences need a finite p");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (length < 1)
    {
        throw std::invalid_argument("extremal sequence length must be at least 1");
    }
}

SequenceVector extremal_sequence(const ExtremalParams &params)
{
    Vector<double> values(params.length());
    const double w = params.w();
    for (Index n = 0; n < params.length(); ++n)
    {
        values[n] = std::pow(static_cast<double>(n + 1), -w);
    }
    return SequenceVector(std::move(values), true);
}

double lower_bound_ratio(const Measure &mu, const ExtremalParams &params,
                         Index n_rows)
{
    if (mu.empty())
    {
        return 0.0;
    }
    const auto a = extremal_sequence(params);
    Vector<double> image;
    if (const auto scale = mu.lebesgue_scale())
    {
        image = *scale * hankel_fast_apply(a.values, n_rows);
    }
    else
    {
        image = apply_truncated<double>(mu, a.values, n_rows);
    }
    const double p     = params.p().value();
    const double top   = lp_norm(image, p);
    const double ratio = top / lp_norm(a.values, p);
    if (!std::isfinite(ratio))
    {
        return std::numeric_limits<double>::infinity();
    }
    return ratio;
}

namespace
{

nlohmann::ordered_json json_real(double value)
{
    if (std::isfinite(value))
    {
        return value;
    }
    return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
}

using LinearMap = std::function<Vector<double>(const Vector<double> &)>;

double power_iteration(const LinearMap &forward, const LinearMap &adjoint,
                       Index size, const PowerIterationOptions &opts)
{
    Vector<double> v = Vector<double>::Constant(size, 1.0 / std::sqrt(double(size)));
    double sigma     = forward(v).norm();
    for (Index it = 0; it < opts.max_iterations; ++it)
    {
        const Vector<double> w = adjoint(forward(v));
        const double w_norm    = w.norm();
        if (!(w_norm > 0.0))
        {
            return 0.0;
        }
        v                  = w / w_norm;
        const double next  = forward(v).norm();
        const bool settled = std::abs(next - sigma) <= opts.tol * next;
        sigma              = next;
        if (settled)
        {
            return sigma;
        }
    }
    throw ConvergenceError("p2_section_norm: power iteration did not converge",
                           sigma);
}

} // namespace

double p2_section_norm(const Measure &mu, Index size,
                       const PowerIterationOptions &opts)
{
    check_section_size(size);
    if (mu.empty())
    {
        return 0.0;
    }
    if (const auto scale = mu.lebesgue_scale(); scale && size > opts.fft_threshold)
    {
        // c * H is symmetric.
        const LinearMap apply = [&, c = *scale](const Vector<double> &x) {
            return Vector<double>(c * hankel_fast_apply(x, size));
        };
        return power_iteration(apply, apply, size, opts);
    }
    const Section<double> section = finite_section<double>(mu, size);
    const LinearMap forward       = [&](const Vector<double> &x) {
        return Vector<double>(section * x);
    };
    const LinearMap adjoint = [&](const Vector<double> &x) {
        return Vector<double>(section.transpose() * x);
    };
    return power_iteration(forward, adjoint, size, opts);
}

CertificationReport convergence_sweep(const Measure &mu, const PExponent &p,
                                      const std::vector<double> &eps_grid,
                                      const std::vector<Index> &size_grid,
                                      const PowerIterationOptions &opts)
{
    if (eps_grid.empty() || size_grid.empty())
    {
        throw std::invalid_argument("convergence_sweep: grids must be nonempty");
    }
    CertificationReport report;
    report.verdict = classify_boundedness(mu, p);
    if (report.verdict.bounded())
    {
        report.target = report.verdict.norm;
    }

    for (double eps : eps_grid)
    {
        for (Index size : size_grid)
        {
            const ExtremalParams params(p, eps, size);
            report.ratios.push_back(
                {eps, size, size, lower_bound_ratio(mu, params, size)});
        }
    }
    if (p.value() == 2.0)
    {
        for (Index size : size_grid)
        {
            report.sigma_max_series.push_back({size, p2_section_norm(mu, size, opts)});
        }
    }

    if (report.target)
    {
        for (const auto &cell : report.ratios)
        {
            if (!(cell.ratio <= *report.target + certification_slack))
            {
                throw CertificationError("lower bound " + format_real(cell.ratio) +
                                         " exceeds analytic norm " +
                                         format_real(*report.target));
            }
        }
        for (const auto &cell : report.sigma_max_series)
        {
            if (!(cell.sigma_max <= *report.target + certification_slack))
            {
                throw CertificationError("section norm exceeds analytic norm");
            }
        }
    }
    for (std::size_t i = 1; i < report.sigma_max_series.size(); ++i)
    {
        const auto &prev = report.sigma_max_series[i - 1];
        const auto &cur  = report.sigma_max_series[i];
        if (cur.size >= prev.size &&
            cur.sigma_max < prev.sigma_max * (1.0 - 10.0 * opts.tol))
        {
            throw CertificationError("section norms decrease with N");
        }
    }
    return report;
}

HilbertCheckResult hilbert_check(const PExponent &p, Index trials,
                                 std::uint64_t seed, Index max_terms)
{
    if (trials < 0 || max_terms < 1)
    {
        throw std::invalid_argument("hilbert_check: need trials >= 0, max_terms >= 1");
    }
    const double constant = classical_constant(p);
    const double q        = p.conjugate().value();
    const Measure lebesgue = Measure::lebesgue();
    SplitMix64 rng(seed);

    HilbertCheckResult result;
    result.trials = trials;
    for (Index t = 0; t < trials; ++t)
    {
        const Index len_a = 1 + static_cast<Index>(rng.below(max_terms));
        const Index len_b = 1 + static_cast<Index>(rng.below(max_terms));
        Vector<double> a(len_a);
        Vector<double> b(len_b);
        for (Index i = 0; i < len_a; ++i)
        {
            a[i] = rng.uniform();
        }
        for (Index i = 0; i < len_b; ++i)
        {
            b[i] = rng.uniform();
        }
        const double form  = b.dot(apply_truncated<double>(lebesgue, a, len_b));
        const double bound = lp_norm(a, p.value()) * lp_norm(b, q);
        if (form > constant * bound + hilbert_check_slack)
        {
            ++result.violations;
        }
        if (bound > 0.0)
        {
            result.max_ratio = std::max(result.max_ratio, form / bound);
        }
    }
    return result;
}

std::string ratios_csv(const CertificationReport &report)
{
    std::string out = "epsilon,K,N,ratio\n";
    for (const auto &cell : report.ratios)
    {
        out += format_real(cell.epsilon) + "," + std::to_string(cell.length) + "," +
               std::to_string(cell.rows) + "," + format_real(cell.ratio) + "\n";
    }
    return out;
}

std::string sigma_csv(const CertificationReport &report)
{
    std::string out = "N,sigma_max\n";
    for (const auto &cell : report.sigma_max_series)
    {
        out += std::to_string(cell.size) + "," + format_real(cell.sigma_max) + "\n";
    }
    return out;
}

std::string to_json(const CertificationReport &report)
{
    nlohmann::ordered_json doc;
    doc["verdict"] = nlohmann::ordered_json::parse(to_json(report.verdict));
    if (report.target)
    {
        doc["target"] = *report.target;
    }
    else
    {
        doc["target"] = "divergent";
    }
    doc["ratios"] = nlohmann::ordered_json::array();
    for (const auto &cell : report.ratios)
    {
        doc["ratios"].push_back({{"epsilon", cell.epsilon},
                                 {"K", cell.length},
                                 {"N", cell.rows},
                                 {"ratio", json_real(cell.ratio)}});
    }
    doc["sigma_max"] = nlohmann::ordered_json::array();
    for (const auto &cell : report.sigma_max_series)
    {
        doc["sigma_max"].push_back({{"N", cell.size}, {"sigma_max", cell.sigma_max}});
    }
    return doc.dump();
}

} // namespace genhilbert
