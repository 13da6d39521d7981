#pragma once

#include "casimir/asymptotics.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/log_scaled.hpp"
#include "casimir/pfa.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/round_trip.hpp"
#include "casimir/special_functions.hpp"
#include "casimir/spectral.hpp"
