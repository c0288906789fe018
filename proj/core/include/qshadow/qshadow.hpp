// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "qshadow/distinguishers.hpp"
#include "qshadow/ensembles.hpp"
#include "qshadow/error.hpp"
#include "qshadow/linalg.hpp"
#include "qshadow/moments.hpp"
#include "qshadow/observables.hpp"
#include "qshadow/rng.hpp"
#include "qshadow/shadows.hpp"
#include "qshadow/states.hpp"

namespace qshadow {
inline constexpr const char* kVersion = QSHADOW_VERSION;
}
