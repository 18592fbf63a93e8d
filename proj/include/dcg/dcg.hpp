#pragma once

#include "dcg/complexity.hpp"
#include "dcg/config.hpp"
#include "dcg/diffusion.hpp"
#include "dcg/engines.hpp"
#include "dcg/experiment.hpp"
#include "dcg/numerics.hpp"
#include "dcg/penalties.hpp"
#include "dcg/presets.hpp"
#include "dcg/report.hpp"
#include "dcg/signal.hpp"
#include "dcg/topology.hpp"
