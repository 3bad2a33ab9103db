#pragma once

// Umbrella header: complexity-guided phase retrieval toolkit.

#include "cgpr/complexity.hpp"
#include "cgpr/errors.hpp"
#include "cgpr/field.hpp"
#include "cgpr/io.hpp"
#include "cgpr/mask.hpp"
#include "cgpr/measurement.hpp"
#include "cgpr/phantom.hpp"
#include "cgpr/solver.hpp"
#include "cgpr/sparsity.hpp"
