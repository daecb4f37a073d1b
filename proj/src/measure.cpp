#include "genhilbert/measure.hpp"

#include "genhilbert/special.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace genhilbert
{

namespace
{

std::string indexed(const char *key, std::size_t i, const char *field)
{
    std::ostringstream os;
    os << key << '[' << i << ']';
    if (field != nullptr)
    {
        os << '.' << field;
    }
    return os.str();
}

void validate(const std::vector<JacobiTerm> &terms,
              const std::vector<Atom> &atoms)
{
    for (std::size_t i = 0; i < terms.size(); ++i)
    {
        const auto &term = terms[i];
        if (!std::isfinite(term.coeff) || !(term.coeff > 0.0))
        {
            throw MeasureError(indexed("jacobi", i, "coeff"),
                               "coefficient must be positive and finite");
        }
        if (!std::isfinite(term.alpha) || !(term.alpha > -1.0))
        {
            throw MeasureError(indexed("jacobi", i, "alpha"),
                               "alpha must exceed -1 (density not integrable)");
        }
        if (!std::isfinite(term.beta) || !(term.beta > -1.0))
        {
            throw MeasureError(indexed("jacobi", i, "beta"),
                               "beta must exceed -1 (density not integrable)");
        }
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
    {
        const auto &atom = atoms[i];
        if (!(atom.location >= 0.0 && atom.location <= 1.0))
        {
            throw MeasureError(indexed("atoms", i, "t"),
                               "atom location must lie in [0, 1]");
        }
        if (!std::isfinite(atom.mass) || !(atom.mass > 0.0))
        {
            throw MeasureError(indexed("atoms", i, "mass"),
                               "atom mass must be positive and finite");
        }
        for (std::size_t j = 0; j < i; ++j)
        {
            if (atoms[j].location == atom.location)
            {
                throw MeasureError(indexed("atoms", i, "t"),
                                   "duplicate atom location");
            }
        }
    }
}

double read_number(const nlohmann::json &obj, const char *key,
                   const std::string &path)
{
    const auto it = obj.find(key);
    if (it == obj.end())
    {
        throw MeasureError(path + "." + key, "missing required field");
    }
    if (!it->is_number())
    {
        throw MeasureError(path + "." + key, "expected a number");
    }
    return it->get<double>();
}

const nlohmann::json &read_array(const nlohmann::json &doc, const char *key)
{
    const auto it = doc.find(key);
    if (it == doc.end())
    {
        throw MeasureError(key, "missing required field");
    }
    if (!it->is_array())
    {
        throw MeasureError(key, "expected an array");
    }
    return *it;
}

// Contribution of an endpoint atom: mass * (value of t^a (1-t)^b at the
// endpoint). `exponent` is the power of the factor that vanishes there.
MaybeFinite endpoint_value(double mass, double exponent)
{
    if (exponent < 0.0)
    {
        return MaybeFinite::diverges();
    }
    return MaybeFinite::finite(exponent == 0.0 ? mass : 0.0);
}

} // namespace

Measure::Measure(std::vector<JacobiTerm> terms, std::vector<Atom> atoms)
    : m_terms(std::move(terms)), m_atoms(std::move(atoms))
{
    validate(m_terms, m_atoms);
}

Measure Measure::lebesgue(double scale)
{
    return Measure({JacobiTerm{scale, 0.0, 0.0}}, {});
}

Measure Measure::dirac(double location, double mass)
{
    return Measure({}, {Atom{location, mass}});
}

double Measure::atom_mass_at(double location) const noexcept
{
    for (const auto &atom : m_atoms)
    {
        if (atom.location == location)
        {
            return atom.mass;
        }
    }
    return 0.0;
}

bool Measure::has_endpoint_atoms() const noexcept
{
    return std::any_of(m_atoms.begin(), m_atoms.end(), [](const Atom &a) {
        return a.location == 0.0 || a.location == 1.0;
    });
}

std::optional<double> Measure::lebesgue_scale() const noexcept
{
    if (!m_atoms.empty() || m_terms.empty())
    {
        return std::nullopt;
    }
    double scale = 0.0;
    for (const auto &term : m_terms)
    {
        if (term.alpha != 0.0 || term.beta != 0.0)
        {
            return std::nullopt;
        }
        scale += term.coeff;
    }
    return scale;
}

Measure Measure::plus(const Measure &other) const
{
    auto terms = m_terms;
    terms.insert(terms.end(), other.m_terms.begin(), other.m_terms.end());
    auto atoms = m_atoms;
    for (const auto &atom : other.m_atoms)
    {
        auto it = std::find_if(atoms.begin(), atoms.end(), [&](const Atom &a) {
            return a.location == atom.location;
        });
        if (it != atoms.end())
        {
            it->mass += atom.mass;
        }
        else
        {
            atoms.push_back(atom);
        }
    }
    return Measure(std::move(terms), std::move(atoms));
}

Measure Measure::scaled(double c) const
{
    auto terms = m_terms;
    auto atoms = m_atoms;
    for (auto &term : terms)
    {
        term.coeff *= c;
    }
    for (auto &atom : atoms)
    {
        atom.mass *= c;
    }
    return Measure(std::move(terms), std::move(atoms));
}

Measure Measure::reflected() const
{
    auto terms = m_terms;
    auto atoms = m_atoms;
    for (auto &term : terms)
    {
        std::swap(term.alpha, term.beta);
    }
    for (auto &atom : atoms)
    {
        atom.location = 1.0 - atom.location;
    }
    return Measure(std::move(terms), std::move(atoms));
}

Measure Measure::without_endpoint_atoms() const
{
    std::vector<Atom> atoms;
    std::copy_if(m_atoms.begin(), m_atoms.end(), std::back_inserter(atoms),
                 [](const Atom &a) {
                     return a.location != 0.0 && a.location != 1.0;
                 });
    return Measure(m_terms, std::move(atoms));
}

Measure parse_measure(std::string_view text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw MeasureError("$", std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object())
    {
        throw MeasureError("$", "expected an object");
    }

    std::vector<JacobiTerm> terms;
    const auto &jacobi = read_array(doc, "jacobi");
    for (std::size_t i = 0; i < jacobi.size(); ++i)
    {
        const auto path = indexed("jacobi", i, nullptr);
        if (!jacobi[i].is_object())
        {
            throw MeasureError(path, "expected an object");
        }
        terms.push_back({read_number(jacobi[i], "coeff", path),
                         read_number(jacobi[i], "alpha", path),
                         read_number(jacobi[i], "beta", path)});
    }

    std::vector<Atom> atoms;
    const auto &atom_list = read_array(doc, "atoms");
    for (std::size_t i = 0; i < atom_list.size(); ++i)
    {
        const auto path = indexed("atoms", i, nullptr);
        if (!atom_list[i].is_object())
        {
            throw MeasureError(path, "expected an object");
        }
        atoms.push_back({read_number(atom_list[i], "t", path),
                         read_number(atom_list[i], "mass", path)});
    }
    return Measure(std::move(terms), std::move(atoms));
}

std::string to_json(const Measure &mu)
{
    nlohmann::json doc;
    doc["jacobi"] = nlohmann::json::array();
    doc["atoms"]  = nlohmann::json::array();
    for (const auto &term : mu.jacobi_terms())
    {
        doc["jacobi"].push_back(
            {{"coeff", term.coeff}, {"alpha", term.alpha}, {"beta", term.beta}});
    }
    for (const auto &atom : mu.atoms())
    {
        doc["atoms"].push_back({{"t", atom.location}, {"mass", atom.mass}});
    }
    return doc.dump();
}

double total_mass(const Measure &mu)
{
    return beta_kernel_integral(mu, 0.0, 0.0, true, true).value;
}

MaybeFinite beta_kernel_integral(const Measure &mu, double a, double b,
                                 bool include_zero, bool include_one)
{
    double sum = 0.0;
    for (const auto &term : mu.jacobi_terms())
    {
        const double x = a + term.alpha + 1.0;
        const double y = b + term.beta + 1.0;
        if (!(x > 0.0) || !(y > 0.0))
        {
            return MaybeFinite::diverges();
        }
        sum += term.coeff * beta_function(x, y);
    }
    for (const auto &atom : mu.atoms())
    {
        const double s = atom.location;
        if (s == 0.0)
        {
            if (include_zero)
            {
                const auto v = endpoint_value(atom.mass, a);
                if (!v.is_finite())
                {
                    return v;
                }
                sum += v.value;
            }
        }
        else if (s == 1.0)
        {
            if (include_one)
            {
                const auto v = endpoint_value(atom.mass, b);
                if (!v.is_finite())
                {
                    return v;
                }
                sum += v.value;
            }
        }
        else
        {
            sum += atom.mass * std::pow(s, a) * std::pow(1.0 - s, b);
        }
    }
    return MaybeFinite::finite(sum);
}

} // namespace genhilbert
