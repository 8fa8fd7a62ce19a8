#pragma once

// Umbrella header: perfect matching polytope skeletons, tower gadgets, flip
// sequences, hardness reductions and the circuit oracle.

#include "pmdiam/error.hpp"
#include "pmdiam/graph.hpp"
#include "pmdiam/matching.hpp"
#include "pmdiam/skeleton.hpp"
#include "pmdiam/gadgets.hpp"
#include "pmdiam/flip_engine.hpp"
#include "pmdiam/reductions.hpp"
#include "pmdiam/circuits.hpp"
#include "pmdiam/io.hpp"
