#pragma once

#include "arma_geodesy/closed_form.hpp"
#include "arma_geodesy/distance_matrix.hpp"
#include "arma_geodesy/errors.hpp"
#include "arma_geodesy/geometry.hpp"
#include "arma_geodesy/hyperbolic.hpp"
#include "arma_geodesy/model.hpp"
#include "arma_geodesy/model_io.hpp"
#include "arma_geodesy/roots.hpp"
#include "arma_geodesy/series.hpp"
#include "arma_geodesy/weights.hpp"
