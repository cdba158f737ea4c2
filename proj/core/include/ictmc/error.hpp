#pragma once

#include <stdexcept>

namespace ictmc {

/// A computation could not produce a meaningful result for valid-looking
/// input (non-unique stationary vector, non-finite intermediate values).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ictmc
