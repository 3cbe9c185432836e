#pragma once

// Physics core. The scenario harness (YAML configs, run records, sweeps) lives under
// polariton/harness/ and needs yaml-cpp and OpenSSL on top of the core dependencies.

#include "polariton/constants.hpp"
#include "polariton/errors.hpp"

#include "polariton/eit/params.hpp"
#include "polariton/eit/potential.hpp"
#include "polariton/eit/response.hpp"

#include "polariton/analytic/evolution.hpp"
#include "polariton/analytic/gaussian.hpp"
#include "polariton/analytic/hermite.hpp"
#include "polariton/analytic/wei_norman.hpp"

#include "polariton/numeric/checkpoint.hpp"
#include "polariton/numeric/dense_oracle.hpp"
#include "polariton/numeric/fft.hpp"
#include "polariton/numeric/grid.hpp"
#include "polariton/numeric/propagator.hpp"
#include "polariton/numeric/state.hpp"

#include "polariton/observables/compare.hpp"
#include "polariton/observables/fit.hpp"
#include "polariton/observables/moments.hpp"
