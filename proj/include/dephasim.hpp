// dephasim.hpp — Umbrella header for the dephasim library

#pragma once

#include "dephasim/errors.hpp"
#include "dephasim/quadrature.hpp"
#include "dephasim/bath.hpp"
#include "dephasim/density.hpp"
#include "dephasim/dynamics.hpp"
#include "dephasim/entanglement.hpp"
#include "dephasim/fit.hpp"
#include "dephasim/parallel.hpp"
#include "dephasim/experiments.hpp"
#include "dephasim/table.hpp"
