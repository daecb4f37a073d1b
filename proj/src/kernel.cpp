#include "genhilbert/kernel.hpp"

namespace genhilbert
{

Decomposition decompose(const Measure &mu)
{
    return {mu.without_endpoint_atoms(), mu.atom_mass_at(0.0),
            mu.atom_mass_at(1.0)};
}

} // namespace genhilbert
