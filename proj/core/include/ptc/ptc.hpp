#pragma once

#include "ptc/analysis.hpp"
#include "ptc/combinatorics.hpp"
#include "ptc/controller.hpp"
#include "ptc/error.hpp"
#include "ptc/expression.hpp"
#include "ptc/linalg.hpp"
#include "ptc/plant.hpp"
#include "ptc/sim.hpp"
#include "ptc/timescale.hpp"
