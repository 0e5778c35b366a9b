#pragma once

/**
 * @file skolem.hpp
 * @brief Umbrella header.
 */

#include "skolem/crossprime.hpp"
#include "skolem/decide.hpp"
#include "skolem/dfa.hpp"
#include "skolem/exppoly.hpp"
#include "skolem/lrs.hpp"
#include "skolem/pnormal.hpp"
#include "skolem/problem.hpp"
#include "skolem/reduction.hpp"
#include "skolem/report.hpp"
#include "skolem/ring.hpp"
#include "skolem/sunit.hpp"
#include "skolem/zeroset.hpp"
