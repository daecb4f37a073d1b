#ifndef GENHILBERT_MEASURE_HPP
#define GENHILBERT_MEASURE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genhilbert
{

/// Density coeff * t^alpha * (1 - t)^beta on (0, 1).
struct JacobiTerm
{
    double coeff = 1.0;
    double alpha = 0.0;
    double beta  = 0.0;
};

/// Point mass at `location`.
struct Atom
{
    double location = 0.0;
    double mass     = 0.0;
};

/// Raised for malformed or invalid measures. `path()` names the offending
/// field, e.g. "jacobi[0].alpha".
class MeasureError : public std::invalid_argument
{
public:
    MeasureError(std::string path, const std::string &what)
        : std::invalid_argument(path + ": " + what), m_path(std::move(path))
    {
    }

    const std::string &path() const noexcept { return m_path; }

private:
    std::string m_path;
};

///
/// ### Measure
///
/// Finite positive Borel measure on [0, 1], represented as a finite mixture of
/// Jacobi densities plus a finite list of atoms. Instances are validated on
/// construction and immutable afterwards.
///
/// The empty measure is valid and generates the zero operator.
///
class Measure
{
public:
    Measure() = default;
    Measure(std::vector<JacobiTerm> terms, std::vector<Atom> atoms);

    static Measure lebesgue(double scale = 1.0);
    static Measure dirac(double location, double mass = 1.0);

    const std::vector<JacobiTerm> &jacobi_terms() const noexcept
    {
        return m_terms;
    }
    const std::vector<Atom> &atoms() const noexcept { return m_atoms; }

    bool empty() const noexcept { return m_terms.empty() && m_atoms.empty(); }

    /// Mass of the atom at `location`, or 0.
    double atom_mass_at(double location) const noexcept;

    /// True if any atom sits at 0 or 1.
    bool has_endpoint_atoms() const noexcept;

    /// If this measure is c * Lebesgue (possibly split over several terms with
    /// alpha = beta = 0) and has no atoms, returns c.
    std::optional<double> lebesgue_scale() const noexcept;

    /// Measure with all components merged: this + other.
    Measure plus(const Measure &other) const;
    /// c * this, c > 0.
    Measure scaled(double c) const;
    /// Push-forward under t -> 1 - t.
    Measure reflected() const;
    /// Restriction to the open interval (0, 1).
    Measure without_endpoint_atoms() const;

private:
    std::vector<JacobiTerm> m_terms;
    std::vector<Atom> m_atoms;
};

/// Parse the structured-text (JSON) measure schema:
/// `{"jacobi":[{"coeff":..,"alpha":..,"beta":..}], "atoms":[{"t":..,"mass":..}]}`.
Measure parse_measure(std::string_view text);

/// Inverse of parse_measure at round-trip precision.
std::string to_json(const Measure &mu);

/// Sum over terms of coeff * B(alpha + 1, beta + 1) plus all atom masses.
double total_mass(const Measure &mu);

/// Result of an integral that may diverge.
struct MaybeFinite
{
    bool divergent = false;
    double value   = 0.0;

    static MaybeFinite finite(double v) { return {false, v}; }
    static MaybeFinite diverges() { return {true, 0.0}; }

    bool is_finite() const noexcept { return !divergent; }
};

///
/// Integral of t^a (1 - t)^b against `mu`.
///
/// The open interval (0, 1) always contributes: each Jacobi term gives
/// coeff * B(a + alpha + 1, b + beta + 1), divergent unless a + alpha > -1 and
/// b + beta > -1; interior atoms give mass * s^a (1 - s)^b. Atoms at 0 and 1
/// are only counted when `include_zero` / `include_one` are set, and make the
/// result divergent if the integrand is infinite there. Any divergent piece
/// makes the whole result divergent. Divergence is decided from exponents
/// alone.
///
MaybeFinite beta_kernel_integral(const Measure &mu, double a, double b,
                                 bool include_zero, bool include_one);

} // namespace genhilbert

#endif
