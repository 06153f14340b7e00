#pragma once

#include "prank/core.hpp"
#include "prank/random.hpp"
#include "prank/dominance.hpp"
#include "prank/hypervolume.hpp"
#include "prank/parallel.hpp"
#include "prank/indicators.hpp"
#include "prank/ranking.hpp"
#include "prank/aggregation.hpp"
#include "prank/synth.hpp"
#include "prank/io.hpp"
#include "prank/config.hpp"
#include "prank/radviz.hpp"
#include "prank/report.hpp"
#include "prank/oracles.hpp"
