#pragma once

// Convenience umbrella.

#include "clusters.hpp"
#include "decider.hpp"
#include "experiments.hpp"
#include "families.hpp"
#include "generators.hpp"
#include "hypergraph.hpp"
#include "io.hpp"
#include "partite.hpp"
#include "prescribed.hpp"
#include "rng.hpp"
#include "stages.hpp"
#include "stats.hpp"
#include "witness_tree.hpp"
