// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include "arraylimits/error.hpp"

namespace arraylimits {

// |sum_{l=1..L} exp(j l varphi)|: coherent amplitude of L stacked layers whose
// beams are offset by a phase mismatch varphi. Equals L at varphi = 0 and
// sqrt(2 + 2 cos varphi) for two layers.
inline double combining_factor(int layer_count, double varphi) {
  if (layer_count < 1) throw DomainError("layer_count must be >= 1");
  std::complex<double> sum{0.0, 0.0};
  for (int l = 1; l <= layer_count; ++l) sum += std::polar(1.0, l * varphi);
  return std::abs(sum);
}

}  // namespace arraylimits
