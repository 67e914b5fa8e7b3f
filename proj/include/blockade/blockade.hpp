// blockade.hpp: umbrella header.

#pragma once

#include "blockade/cli.hpp"
#include "blockade/config.hpp"
#include "blockade/csv.hpp"
#include "blockade/hilbert.hpp"
#include "blockade/liouvillian.hpp"
#include "blockade/model.hpp"
#include "blockade/observables.hpp"
#include "blockade/presets.hpp"
#include "blockade/steady_state.hpp"
#include "blockade/sweep.hpp"
