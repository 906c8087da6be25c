#pragma once

#include "sagin/audit.hpp"
#include "sagin/channel.hpp"
#include "sagin/energy.hpp"
#include "sagin/engine.hpp"
#include "sagin/events.hpp"
#include "sagin/experiments.hpp"
#include "sagin/failure.hpp"
#include "sagin/matching.hpp"
#include "sagin/oracle.hpp"
#include "sagin/pathing.hpp"
#include "sagin/recovery.hpp"
#include "sagin/report.hpp"
#include "sagin/rng.hpp"
#include "sagin/scenario.hpp"
#include "sagin/state.hpp"
#include "sagin/topology.hpp"
#include "sagin/units.hpp"
