#pragma once

#include "evochess/core/epd.hpp"
#include "evochess/core/movegen.hpp"
#include "evochess/core/notation.hpp"
#include "evochess/core/position.hpp"
#include "evochess/eval.hpp"
#include "evochess/evolve.hpp"
#include "evochess/genome.hpp"
#include "evochess/harness.hpp"
#include "evochess/params.hpp"
#include "evochess/search.hpp"
#include "evochess/version.hpp"
