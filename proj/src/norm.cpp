#include "genhilbert/norm.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <numbers>

namespace genhilbert
{

PExponent::PExponent(double p) : m_value(p)
{
    if (std::isnan(p) || p < 1.0)
    {
        throw std::domain_error("p must be >= 1 or infinity");
    }
}

PExponent PExponent::parse(std::string_view text)
{
    if (text == "inf" || text == "infinity" || text == "Infinity")
    {
        return infinity();
    }
    double value     = 0.0;
    const auto first = text.data();
    const auto last  = text.data() + text.size();
    const auto res   = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value))
    {
        throw std::invalid_argument("cannot parse p from '" + std::string(text) +
                                    "'");
    }
    return PExponent(value);
}

PExponent PExponent::conjugate() const
{
    if (is_infinite())
    {
        return PExponent(1.0);
    }
    if (is_one())
    {
        return infinity();
    }
    return PExponent(m_value / (m_value - 1.0));
}

std::string PExponent::to_string() const
{
    if (is_infinite())
    {
        return "inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), m_value);
    return std::string(buf, res.ptr);
}

std::string_view to_string(UnboundedReason reason)
{
    switch (reason)
    {
    case UnboundedReason::DivergentIntegral:
        return "DivergentIntegral";
    case UnboundedReason::AtomAtZero_FiniteP:
        return "AtomAtZero_FiniteP";
    case UnboundedReason::AtomAtOne_PGreaterThan1:
        return "AtomAtOne_PGreaterThan1";
    case UnboundedReason::AtomAtOne_PInfinity:
        return "AtomAtOne_PInfinity";
    }
    return "unknown";
}

std::string_view to_string(NormFormula formula)
{
    switch (formula)
    {
    case NormFormula::Interior_Np:
        return "Interior_Np";
    case NormFormula::P1_WithAtomAtOne:
        return "P1_WithAtomAtOne";
    case NormFormula::PInf_WithAtomAtZero:
        return "PInf_WithAtomAtZero";
    }
    return "unknown";
}

std::string to_json(const NormVerdict &verdict)
{
    // Key order is fixed so output is byte-stable.
    nlohmann::ordered_json doc;
    doc["status"] = verdict.bounded() ? "bounded" : "unbounded";
    if (verdict.norm)
    {
        doc["norm"] = *verdict.norm;
    }
    if (verdict.reason)
    {
        doc["reason"] = std::string(to_string(*verdict.reason));
    }
    doc["formula_used"] = std::string(to_string(verdict.formula_used));
    if (verdict.p.is_infinite())
    {
        doc["p"] = "inf";
    }
    else
    {
        doc["p"] = verdict.p.value();
    }
    return doc.dump();
}

MaybeFinite norm_integral(const Measure &mu, const PExponent &p)
{
    if (mu.has_endpoint_atoms())
    {
        throw PreconditionError(
            "norm_integral: measure has an atom at 0 or 1; use classify_boundedness");
    }
    if (p.is_infinite())
    {
        return beta_kernel_integral(mu, 0.0, -1.0, false, false);
    }
    const double r = p.reciprocal();
    return beta_kernel_integral(mu, -r, r - 1.0, false, false);
}

NormVerdict classify_boundedness(const Measure &mu, const PExponent &p)
{
    const double c0 = mu.atom_mass_at(0.0);
    const double c1 = mu.atom_mass_at(1.0);

    NormVerdict verdict;
    verdict.p = p;
    auto unbounded = [&](UnboundedReason why, NormFormula formula) {
        verdict.status       = BoundStatus::Unbounded;
        verdict.reason       = why;
        verdict.formula_used = formula;
        return verdict;
    };
    auto from_integral = [&](const MaybeFinite &value, NormFormula formula) {
        if (!value.is_finite())
        {
            return unbounded(UnboundedReason::DivergentIntegral, formula);
        }
        verdict.status       = BoundStatus::Bounded;
        verdict.norm         = value.value;
        verdict.formula_used = formula;
        return verdict;
    };

    // Atom-decided branches report the formula of their p regime.
    const NormFormula regime = p.is_one()        ? NormFormula::P1_WithAtomAtOne
                               : p.is_infinite() ? NormFormula::PInf_WithAtomAtZero
                                                 : NormFormula::Interior_Np;

    if (c0 > 0.0 && !p.is_infinite())
    {
        return unbounded(UnboundedReason::AtomAtZero_FiniteP, regime);
    }
    if (c1 > 0.0 && !p.is_one() && !p.is_infinite())
    {
        return unbounded(UnboundedReason::AtomAtOne_PGreaterThan1, regime);
    }
    if (c1 > 0.0 && p.is_infinite())
    {
        return unbounded(UnboundedReason::AtomAtOne_PInfinity, regime);
    }
    if (c1 > 0.0)
    {
        // p = 1, c0 = 0: int_(0,1) 1/t dmu + c1.
        return from_integral(beta_kernel_integral(mu, -1.0, 0.0, false, true),
                             NormFormula::P1_WithAtomAtOne);
    }
    if (c0 > 0.0)
    {
        // p = inf, c1 = 0: int_[0,1) 1/(1-t) dmu, the atom at 0 counting c0.
        return from_integral(beta_kernel_integral(mu, 0.0, -1.0, true, false),
                             NormFormula::PInf_WithAtomAtZero);
    }
    return from_integral(norm_integral(mu, p), NormFormula::Interior_Np);
}

double classical_constant(const PExponent &p)
{
    if (p.is_one() || p.is_infinite())
    {
        throw std::domain_error(
            "classical_constant: the Hilbert matrix is unbounded for p = 1 and p = inf");
    }
    return std::numbers::pi / std::sin(std::numbers::pi / p.value());
}

} // namespace genhilbert
