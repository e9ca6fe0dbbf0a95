#pragma once

#include "coordinates.hpp"
#include "error.hpp"
#include "families.hpp"
#include "geometry.hpp"
#include "interpolation.hpp"
#include "point.hpp"
#include "polygon.hpp"
#include "quadrature.hpp"
#include "sweep.hpp"
