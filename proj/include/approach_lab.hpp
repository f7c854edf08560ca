#pragma once

#include "approach_lab/algebraic.hpp"
#include "approach_lab/approach.hpp"
#include "approach_lab/balls.hpp"
#include "approach_lab/errors.hpp"
#include "approach_lab/ext_value.hpp"
#include "approach_lab/gn.hpp"
#include "approach_lab/harness.hpp"
#include "approach_lab/io.hpp"
#include "approach_lab/mutation.hpp"
#include "approach_lab/net.hpp"
#include "approach_lab/piecewise_linear.hpp"
#include "approach_lab/space.hpp"
#include "approach_lab/weight.hpp"
