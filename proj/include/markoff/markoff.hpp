#pragma once

#include "markoff/arith.hpp"
#include "markoff/config.hpp"
#include "markoff/errors.hpp"
#include "markoff/experiments.hpp"
#include "markoff/fp.hpp"
#include "markoff/fp2.hpp"
#include "markoff/graph.hpp"
#include "markoff/norm_map.hpp"
#include "markoff/order.hpp"
#include "markoff/pisano.hpp"
#include "markoff/point.hpp"
#include "markoff/rotation.hpp"
#include "markoff/sweep.hpp"
#include "markoff/theorem.hpp"
#include "markoff/word.hpp"
