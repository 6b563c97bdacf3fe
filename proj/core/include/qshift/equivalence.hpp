#pragma once

#include <string>

#include "qshift/potential.hpp"

namespace qshift {

/// Result of removing the deformation: eval(spec, y + shift) == eval(plain_spec, y).
struct CanonicalMap {
    PotentialSpec plain_spec;
    double shift;               // x = y + shift
    std::string transform_note; // parameter substitutions applied
};

CanonicalMap canonicalize(const PotentialSpec& spec);

/// Max over `samples` evenly spaced y in [-half_width, half_width] of
/// |eval(spec, y + shift) - eval(plain, y)| / max(1, |eval(plain, y)|).
/// FiveParamSuper compares superpotential values. Throws ConsistencyError
/// if `map` was not produced from `spec`.
double pointwise_residual(const PotentialSpec& spec, const CanonicalMap& map, int samples,
                          double half_width);

/// Member of the same equivalence orbit with deformation q_new:
/// U0 is rescaled by q_new / q, so U0 / q is unchanged.
RosenMorseQ equivalent_family(const RosenMorseQ& spec, double q_new);

} // namespace qshift
