// SPDX-License-Identifier: MIT
// Umbrella header.
#pragma once

#include "fhd/core_model.hpp"
#include "fhd/error.hpp"
#include "fhd/io.hpp"
#include "fhd/pde_integrator.hpp"
#include "fhd/pseudopotential.hpp"
#include "fhd/tw_solver.hpp"
#include "fhd/zero_curvature.hpp"
