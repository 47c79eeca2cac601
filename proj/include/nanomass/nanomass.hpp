#pragma once

#include "nanomass/cavity_sensor.hpp"
#include "nanomass/constants.hpp"
#include "nanomass/error.hpp"
#include "nanomass/free_sensor.hpp"
#include "nanomass/noise.hpp"
#include "nanomass/numerics/linalg.hpp"
#include "nanomass/numerics/polynomial.hpp"
#include "nanomass/numerics/quadrature.hpp"
#include "nanomass/params.hpp"
#include "nanomass/sweep/config.hpp"
#include "nanomass/sweep/emit.hpp"
#include "nanomass/sweep/run.hpp"
#include "nanomass/version.hpp"
