// Umbrella header for the gqhb library.
#pragma once

#include "gqhb/catalog.hpp"
#include "gqhb/errors.hpp"
#include "gqhb/fock.hpp"
#include "gqhb/grid.hpp"
#include "gqhb/hoeffding.hpp"
#include "gqhb/overlap.hpp"
#include "gqhb/state_io.hpp"
#include "gqhb/symplectic.hpp"
