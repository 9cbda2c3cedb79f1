#pragma once

#include "fracbvp/discretize.hpp"
#include "fracbvp/error.hpp"
#include "fracbvp/expression.hpp"
#include "fracbvp/fracpoly.hpp"
#include "fracbvp/harness.hpp"
#include "fracbvp/io.hpp"
#include "fracbvp/linsolve.hpp"
#include "fracbvp/model.hpp"
#include "fracbvp/monotone.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/specfun.hpp"
