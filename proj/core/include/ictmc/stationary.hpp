#pragma once

#include "ictmc/model.hpp"
#include "ictmc/probability_vector.hpp"

namespace ictmc {

/// Stationary distribution of a birth-death chain from detailed balance,
/// pi[k+1] * death(k+1) = pi[k] * birth(k).
///
/// Throws NumericalError when a state with positive stationary mass has a
/// positive birth rate into a state without a death rate (the stationary
/// vector is then not unique).
[[nodiscard]] ProbabilityVector stationary_distribution(const BirthDeathModel& model);

}  // namespace ictmc
