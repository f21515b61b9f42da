#pragma once

#include "sgn/catalog.hpp"
#include "sgn/certificate.hpp"
#include "sgn/config.hpp"
#include "sgn/distance.hpp"
#include "sgn/equidist.hpp"
#include "sgn/errors.hpp"
#include "sgn/graph.hpp"
#include "sgn/length_model.hpp"
#include "sgn/metric.hpp"
#include "sgn/minmax.hpp"
#include "sgn/net.hpp"
#include "sgn/net_io.hpp"
#include "sgn/parallel.hpp"
#include "sgn/quadrature.hpp"
#include "sgn/selftest.hpp"
#include "sgn/solver.hpp"
#include "sgn/spectrum.hpp"
#include "sgn/stationarity.hpp"
#include "sgn/surface.hpp"
#include "sgn/variation.hpp"
