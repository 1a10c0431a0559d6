#pragma once

// U(n)-spherical transform on the Heisenberg group: spherical functions,
// Plancherel inversion, the M+/M- fan operators, and real Paley-Wiener
// support estimators.

#include "hsph/common.hpp"
#include "hsph/config.hpp"
#include "hsph/fan.hpp"
#include "hsph/fan_ops.hpp"
#include "hsph/fd.hpp"
#include "hsph/group.hpp"
#include "hsph/io.hpp"
#include "hsph/paley_wiener.hpp"
#include "hsph/quadrature.hpp"
#include "hsph/radial.hpp"
#include "hsph/radial_ops.hpp"
#include "hsph/series.hpp"
#include "hsph/spherical.hpp"
#include "hsph/test_functions.hpp"
#include "hsph/transform.hpp"
