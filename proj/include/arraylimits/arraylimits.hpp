// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "arraylimits/beamsim.hpp"
#include "arraylimits/combining.hpp"
#include "arraylimits/efficiency.hpp"
#include "arraylimits/error.hpp"
#include "arraylimits/feasible2d.hpp"
#include "arraylimits/feasible3d.hpp"
#include "arraylimits/gain.hpp"
#include "arraylimits/geometry.hpp"
#include "arraylimits/quadrature.hpp"
#include "arraylimits/reflection.hpp"

namespace arraylimits {
inline constexpr const char* kVersion = "0.1.0";
}
