// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header for the nested-exponential distribution toolkit.

#include "nestexp/charfn_inversion.hpp"
#include "nestexp/constants.hpp"
#include "nestexp/distribution_core.hpp"
#include "nestexp/integer_sequences.hpp"
#include "nestexp/monte_carlo.hpp"
#include "nestexp/special_functions.hpp"
#include "nestexp/taylor_engine.hpp"
#include "nestexp/types.hpp"
#include "nestexp/verification.hpp"
