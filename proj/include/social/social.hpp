#pragma once

#include "social/ball.hpp"
#include "social/evaluator.hpp"
#include "social/experiment.hpp"
#include "social/flow_network.hpp"
#include "social/graph.hpp"
#include "social/hypergraph_model.hpp"
#include "social/max_flow.hpp"
#include "social/motif.hpp"
#include "social/mqi.hpp"
#include "social/types.hpp"
