#pragma once

// Elementary-wave machinery of the homogeneous Euler equations.

#include "dcrp/riemann.hpp"
#include "dcrp/shock_frame.hpp"
