#pragma once

#include "invopt/domain.hpp"
#include "invopt/errors.hpp"
#include "invopt/feasible_set.hpp"
#include "invopt/norms.hpp"
#include "invopt/observation.hpp"
#include "invopt/tolerance.hpp"
#include "invopt/vector.hpp"
