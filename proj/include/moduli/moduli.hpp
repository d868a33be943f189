#pragma once

#include "moduli/rational.hpp"
#include "moduli/coeff.hpp"
#include "moduli/even_poly.hpp"
#include "moduli/poly_json.hpp"
#include "moduli/kernels.hpp"
#include "moduli/quadrature.hpp"
#include "moduli/trengine.hpp"
#include "moduli/airy.hpp"
#include "moduli/symmetry.hpp"
#include "moduli/laplace.hpp"
#include "moduli/stable_graph.hpp"
#include "moduli/graph_sum.hpp"
#include "moduli/pants.hpp"
#include "moduli/fn_torus.hpp"
#include "moduli/frobenius.hpp"
#include "moduli/fatgraph.hpp"
#include "moduli/algebra_volume.hpp"
