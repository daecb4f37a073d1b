#ifndef GENHILBERT_NORM_HPP
#define GENHILBERT_NORM_HPP

#include "genhilbert/measure.hpp"

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace genhilbert
{

/// Exponent of l^p: a real p >= 1 or infinity.
class PExponent
{
public:
    explicit PExponent(double p);

    static PExponent infinity()
    {
        return PExponent(std::numeric_limits<double>::infinity());
    }

    /// Accepts a decimal >= 1 or "inf" / "infinity".
    static PExponent parse(std::string_view text);

    double value() const noexcept { return m_value; }
    bool is_infinite() const noexcept { return m_value == std::numeric_limits<double>::infinity(); }
    bool is_one() const noexcept { return m_value == 1.0; }

    /// Hoelder conjugate q with 1/p + 1/q = 1.
    PExponent conjugate() const;

    /// 1/p (0 for infinity).
    double reciprocal() const noexcept { return is_infinite() ? 0.0 : 1.0 / m_value; }

    /// "inf" for infinity, otherwise shortest round-trip decimal.
    std::string to_string() const;

private:
    double m_value;
};

enum class BoundStatus
{
    Bounded,
    Unbounded
};

enum class UnboundedReason
{
    DivergentIntegral,
    AtomAtZero_FiniteP,
    AtomAtOne_PGreaterThan1,
    AtomAtOne_PInfinity
};

enum class NormFormula
{
    Interior_Np,
    P1_WithAtomAtOne,
    PInf_WithAtomAtZero
};

std::string_view to_string(UnboundedReason reason);
std::string_view to_string(NormFormula formula);

///
/// Outcome of classify_boundedness. Exactly one of `norm` / `reason` is set,
/// according to `status`.
///
struct NormVerdict
{
    PExponent p{2.0};
    BoundStatus status = BoundStatus::Bounded;
    std::optional<double> norm;
    std::optional<UnboundedReason> reason;
    NormFormula formula_used = NormFormula::Interior_Np;

    bool bounded() const noexcept { return status == BoundStatus::Bounded; }
};

/// JSON object with `status`, `norm` or `reason`, `formula_used` and `p`.
std::string to_json(const NormVerdict &verdict);

/// The measure has an endpoint atom where the formula does not allow one.
class PreconditionError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

///
/// N_p = integral of t^(-1/p) (1-t)^(1/p - 1) dmu over (0, 1); for p = inf
/// the integrand is 1 / (1 - t). Requires a measure without endpoint atoms.
///
MaybeFinite norm_integral(const Measure &mu, const PExponent &p);

///
/// Boundedness of the generalized Hilbert operator on l^p and its norm.
///
/// With endpoint masses c0 (at 0) and c1 (at 1):
///
///  - c0 > 0, p < inf             : unbounded (AtomAtZero_FiniteP)
///  - c1 > 0, 1 < p < inf         : unbounded (AtomAtOne_PGreaterThan1)
///  - c1 > 0, p = inf             : unbounded (AtomAtOne_PInfinity)
///  - c1 > 0 = c0, p = 1          : norm = int_(0,1) 1/t dmu + c1
///  - c0 > 0 = c1, p = inf        : norm = int_[0,1) 1/(1-t) dmu
///  - no endpoint atoms           : norm = N_p
///
/// A divergent norm integral yields Unbounded(DivergentIntegral). The zero
/// measure is bounded with norm 0.
///
NormVerdict classify_boundedness(const Measure &mu, const PExponent &p);

/// pi / sin(pi / p), the norm of the classical Hilbert matrix; 1 < p < inf.
double classical_constant(const PExponent &p);

} // namespace genhilbert

#endif
