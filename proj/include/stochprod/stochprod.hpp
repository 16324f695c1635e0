#pragma once

#include "stochprod/convergence.hpp"
#include "stochprod/digraph.hpp"
#include "stochprod/error.hpp"
#include "stochprod/generate.hpp"
#include "stochprod/hypotheses.hpp"
#include "stochprod/report.hpp"
#include "stochprod/sequence_file.hpp"
#include "stochprod/stochastic.hpp"
