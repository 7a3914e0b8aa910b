#pragma once

// Umbrella header for the toolkit.

#include "common.hpp"
#include "thresholds.hpp"
#include "geometry.hpp"
#include "symbols.hpp"
#include "quadrature.hpp"
#include "oscillation.hpp"
#include "matrix.hpp"
#include "bergman.hpp"
#include "eigensolver.hpp"
#include "spectra.hpp"
#include "io.hpp"
#include "checks.hpp"
