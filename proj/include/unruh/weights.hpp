#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "unruh/qops.hpp"

namespace unruh {

/// Weights of the right/left Unruh creators in a single-particle state.
struct UnruhWeights {
  cplx q_R{1.0, 0.0};
  cplx q_L{0.0, 0.0};

  /// Real parameterization q_R = q_abs, q_L = sqrt(1 - q_abs^2).
  static UnruhWeights from_abs(double q_abs) {
    if (!(q_abs >= 0.0 && q_abs <= 1.0)) throw InvalidArgument("|q_R| must lie in [0, 1]");
    return {cplx(q_abs, 0.0), cplx(std::sqrt(std::max(0.0, 1.0 - q_abs * q_abs)), 0.0)};
  }

  UnruhWeights swapped() const { return {q_L, q_R}; }

  /// Throws unless |q_R|^2 + |q_L|^2 = 1 within 1e-12.
  void validate() const {
    if (std::abs(std::norm(q_R) + std::norm(q_L) - 1.0) > 1e-12)
      throw InvalidArgument("Unruh weights must satisfy |q_R|^2 + |q_L|^2 = 1");
  }
};

}  // namespace unruh
