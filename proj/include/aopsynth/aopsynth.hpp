/* aopsynth: delay-optimized AND-OR path synthesis
 * SPDX-License-Identifier: Apache-2.0
 */

/*!
  \file aopsynth.hpp
  \brief Umbrella header for the synthesis library (without the CLI).
*/

#pragma once

#include "aop_core.hpp"
#include "circuit.hpp"
#include "frontend.hpp"
#include "io/blif.hpp"
#include "io/dot.hpp"
#include "io/json_io.hpp"
#include "numeric.hpp"
#include "symtree.hpp"
#include "verify.hpp"
