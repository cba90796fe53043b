#pragma once

// Umbrella header: covariance-matrix toolkit for Gaussian states, PPT-based
// separability testing, Wishart/Marchenko-Pastur spectral statistics, and a
// spectral-support separability heuristic with reporting.

#include "gaussmp/errors.hpp"
#include "gaussmp/expm.hpp"
#include "gaussmp/io.hpp"
#include "gaussmp/mp_criterion.hpp"
#include "gaussmp/ordering.hpp"
#include "gaussmp/ppt.hpp"
#include "gaussmp/quadrature.hpp"
#include "gaussmp/random_matrix.hpp"
#include "gaussmp/rng.hpp"
#include "gaussmp/states.hpp"
#include "gaussmp/symplectic.hpp"
