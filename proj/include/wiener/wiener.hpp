#pragma once

#include "wiener/constructions.hpp"
#include "wiener/experiments.hpp"
#include "wiener/grid.hpp"
#include "wiener/norms.hpp"
#include "wiener/poly_io.hpp"
#include "wiener/report.hpp"
#include "wiener/rng.hpp"
#include "wiener/summation.hpp"
#include "wiener/torus_set.hpp"
#include "wiener/trig_poly.hpp"
