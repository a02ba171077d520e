#include "pac/tensor.hpp"

#include <algorithm>

namespace pac {

int Valence::covariant() const {
  return static_cast<int>(std::count(slots.begin(), slots.end(), Slot::Covariant));
}

int Valence::contravariant() const {
  return static_cast<int>(std::count(slots.begin(), slots.end(), Slot::Contravariant));
}

std::string Valence::str() const {
  // (covariant, contravariant), matching the (r, s) convention of the docs.
  return "(" + std::to_string(covariant()) + "," + std::to_string(contravariant()) + ")";
}

}  // namespace pac
