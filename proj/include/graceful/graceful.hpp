#pragma once

#include "graceful/backtrack.hpp"
#include "graceful/certificate.hpp"
#include "graceful/enumerate.hpp"
#include "graceful/hybrid.hpp"
#include "graceful/labelling.hpp"
#include "graceful/level_sequence.hpp"
#include "graceful/metaheuristic.hpp"
#include "graceful/rng.hpp"
#include "graceful/runner.hpp"
#include "graceful/stats.hpp"
#include "graceful/symmetry.hpp"
#include "graceful/tree.hpp"
