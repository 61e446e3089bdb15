#pragma once

#include <map>
#include <string>

#include "msf/exact.hpp"

namespace msf {

/// Probabilities keyed by canonical shape code.
using ShapeLaw = std::map<std::string, double>;
using ExactShapeLaw = std::map<std::string, Rational>;

inline ShapeLaw to_floating(const ExactShapeLaw& law) {
  ShapeLaw out;
  for (const auto& [code, p] : law) out.emplace(code, to_double(p));
  return out;
}

}  // namespace msf
