#pragma once

#include "diophantine.hpp"
#include "extremal.hpp"
#include "lattice.hpp"
#include "measure.hpp"
#include "mod1_matrix.hpp"
#include "quadrature.hpp"
#include "rational.hpp"
#include "reduce.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sums.hpp"
#include "torus.hpp"
#include "transference.hpp"
#include "trigpoly.hpp"
