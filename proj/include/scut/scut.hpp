#pragma once

// Umbrella header for the whole library.

#include "scut/common.hpp"
#include "scut/rng.hpp"
#include "scut/rational.hpp"
#include "scut/graph.hpp"
#include "scut/generators.hpp"
#include "scut/oracle.hpp"
#include "scut/congest.hpp"
#include "scut/walk.hpp"
#include "scut/pagerank.hpp"
#include "scut/sweep.hpp"
#include "scut/protocols.hpp"
#include "scut/sparse_cut.hpp"
#include "scut/report.hpp"
#include "scut/cli.hpp"
