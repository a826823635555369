#pragma once

#include "torjet/arith.hpp"
#include "torjet/dual_degrees.hpp"
#include "torjet/error.hpp"
#include "torjet/jet_apparatus.hpp"
#include "torjet/lattice_geom.hpp"
#include "torjet/linalg.hpp"
#include "torjet/polynomial.hpp"
#include "torjet/polytope_invariants.hpp"
#include "torjet/tropical.hpp"
