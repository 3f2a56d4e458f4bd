#pragma once

#include "core.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "model.hpp"
#include "pathdb.hpp"
#include "planar_schedule.hpp"
#include "reach.hpp"
#include "reductions.hpp"
#include "solvers.hpp"
