#pragma once

#include "cascade/diagnostics.hpp"
#include "cascade/errors.hpp"
#include "cascade/field.hpp"
#include "cascade/fixed_points.hpp"
#include "cascade/lax_oleinik.hpp"
#include "cascade/leray.hpp"
#include "cascade/parallel.hpp"
#include "cascade/params.hpp"
#include "cascade/quadrature.hpp"
#include "cascade/shell.hpp"
#include "cascade/solver_core.hpp"
#include "cascade/viscous.hpp"
