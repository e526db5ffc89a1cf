#pragma once

// Umbrella header for the QGEM design toolkit.

#include "qgem/commands.hpp"
#include "qgem/config.hpp"
#include "qgem/constants.hpp"
#include "qgem/design_solvers.hpp"
#include "qgem/em_interactions.hpp"
#include "qgem/entanglement.hpp"
#include "qgem/report.hpp"
#include "qgem/trapping.hpp"
#include "qgem/vec3.hpp"
