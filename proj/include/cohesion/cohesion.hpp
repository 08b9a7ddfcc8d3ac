#pragma once

#include "cohesion/types.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/io.hpp"
#include "cohesion/decay.hpp"
#include "cohesion/sentiment.hpp"
#include "cohesion/measures.hpp"
#include "cohesion/structural.hpp"
#include "cohesion/search.hpp"
#include "cohesion/fixtures.hpp"
#include "cohesion/harness.hpp"
#include "cohesion/config.hpp"
#include "cohesion/report.hpp"
