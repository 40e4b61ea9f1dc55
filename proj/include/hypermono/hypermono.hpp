#pragma once

#include "hypermono/classify.hpp"
#include "hypermono/closure.hpp"
#include "hypermono/error.hpp"
#include "hypermono/exactpoly.hpp"
#include "hypermono/levelt.hpp"
#include "hypermono/matrix.hpp"
#include "hypermono/odeflow/continuation.hpp"
#include "hypermono/odeflow/frobenius.hpp"
#include "hypermono/odeflow/hypergeometric.hpp"
#include "hypermono/odeflow/matrix_power.hpp"
#include "hypermono/odeflow/monodromy.hpp"
#include "hypermono/odeflow/series.hpp"
#include "hypermono/poly.hpp"
#include "hypermono/rational.hpp"
