#pragma once

#include "tspsplit/circle_lb.hpp"
#include "tspsplit/curve_split.hpp"
#include "tspsplit/errors.hpp"
#include "tspsplit/geometry.hpp"
#include "tspsplit/random.hpp"
#include "tspsplit/tsp_core.hpp"
