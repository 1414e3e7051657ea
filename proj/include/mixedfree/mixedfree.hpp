#pragma once

#include "bitset.hpp"
#include "caps.hpp"
#include "chromatic.hpp"
#include "clique.hpp"
#include "cograph.hpp"
#include "compression.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "json_io.hpp"
#include "matrix.hpp"
#include "minor.hpp"
#include "recurrence.hpp"
#include "trace_checks.hpp"
#include "twinwidth.hpp"
