#pragma once

#include "qshift/analytic.hpp"
#include "qshift/deformed_hyperbolic.hpp"
#include "qshift/equivalence.hpp"
#include "qshift/error.hpp"
#include "qshift/format.hpp"
#include "qshift/oracle.hpp"
#include "qshift/potential.hpp"
#include "qshift/spectrum.hpp"
#include "qshift/verification.hpp"
