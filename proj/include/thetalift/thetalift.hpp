#pragma once

#include "thetalift/braid.hpp"
#include "thetalift/classify.hpp"
#include "thetalift/codes.hpp"
#include "thetalift/invariants.hpp"
#include "thetalift/laurent.hpp"
#include "thetalift/lift.hpp"
#include "thetalift/planar_map.hpp"
#include "thetalift/render.hpp"
#include "thetalift/rmoves.hpp"
