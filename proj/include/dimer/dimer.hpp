// dimer.hpp — Umbrella header.

#pragma once

#define DIMER_VERSION "0.1.0"

#include "dimer/analysis.hpp"
#include "dimer/analytic.hpp"
#include "dimer/combinatorics.hpp"
#include "dimer/config.hpp"
#include "dimer/config_json.hpp"
#include "dimer/correlated.hpp"
#include "dimer/csv.hpp"
#include "dimer/oracle.hpp"
#include "dimer/spectrum.hpp"
