#pragma once

// Umbrella header for the matrix-completion library.

#include "harness.hpp"
#include "image.hpp"
#include "mask.hpp"
#include "metrics.hpp"
#include "solver.hpp"
#include "spectral.hpp"
#include "surrogate.hpp"
