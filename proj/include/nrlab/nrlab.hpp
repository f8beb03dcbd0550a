#pragma once

/// @file nrlab.hpp
/// @brief Umbrella header.

#include "arith.hpp"
#include "charsums.hpp"
#include "nonresidue.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "primesums.hpp"
#include "report.hpp"
#include "shrinking.hpp"
#include "verify.hpp"
