#pragma once

// Umbrella header: diagrams with min/max aggregation, exact evaluation
// over finite interpretations, combination, bounded decision procedures,
// and the hardness-construction generators with their reference oracles.

#include "gfodd/atom_order.hpp"
#include "gfodd/combine.hpp"
#include "gfodd/decide.hpp"
#include "gfodd/diagram.hpp"
#include "gfodd/enumerate.hpp"
#include "gfodd/eval.hpp"
#include "gfodd/instances.hpp"
#include "gfodd/interpretation.hpp"
#include "gfodd/io.hpp"
#include "gfodd/oracles.hpp"
#include "gfodd/rational.hpp"
#include "gfodd/reductions.hpp"
#include "gfodd/signature.hpp"
#include "gfodd/standardize.hpp"
#include "gfodd/validate.hpp"
