#pragma once

#include "maxmin/bitpoly.hpp"
#include "maxmin/census.hpp"
#include "maxmin/digit_map.hpp"
#include "maxmin/error.hpp"
#include "maxmin/factor.hpp"
#include "maxmin/io.hpp"
#include "maxmin/natset.hpp"
#include "maxmin/poly.hpp"
#include "maxmin/rng.hpp"
#include "maxmin/series.hpp"
#include "maxmin/stochastic.hpp"
#include "maxmin/version.hpp"
