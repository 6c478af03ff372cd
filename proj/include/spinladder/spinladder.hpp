#pragma once

// Umbrella header for the spinladder toolkit: exact simulation and analysis
// of a cluster spin chain exchange-coupled to a ladder of free spins.

#include "spinladder/automaton.hpp"
#include "spinladder/channel.hpp"
#include "spinladder/dense.hpp"
#include "spinladder/entanglement.hpp"
#include "spinladder/layout.hpp"
#include "spinladder/meanfield.hpp"
#include "spinladder/order.hpp"
#include "spinladder/random_ref.hpp"
#include "spinladder/state.hpp"
#include "spinladder/version.hpp"

namespace spinladder {}
