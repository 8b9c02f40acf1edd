#ifndef FUCHSNF_FUCHSNF_HPP
#define FUCHSNF_FUCHSNF_HPP

#include "diagnostics.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "hom_vec_poly.hpp"
#include "multi_index.hpp"
#include "operators.hpp"
#include "rodrigues.hpp"
#include "vector_series.hpp"
#include "xpoly.hpp"

#include "numeric/flow.hpp"
#include "numeric/obstruction.hpp"
#include "numeric/path.hpp"
#include "numeric/quadrature.hpp"
#include "numeric/transport.hpp"

#endif
