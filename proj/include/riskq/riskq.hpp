#pragma once

// Umbrella header for the riskq library.

#include "riskq/banding.hpp"
#include "riskq/diagram.hpp"
#include "riskq/engine.hpp"
#include "riskq/mc_oracle.hpp"
#include "riskq/model.hpp"
#include "riskq/model_io.hpp"
#include "riskq/validate.hpp"
