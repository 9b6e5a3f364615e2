#pragma once

#include "modval/errata.hpp"
#include "modval/errors.hpp"
#include "modval/measurement.hpp"
#include "modval/numerics.hpp"
#include "modval/observables.hpp"
#include "modval/oracle_check.hpp"
#include "modval/pointer_states.hpp"
#include "modval/qubit_system.hpp"
#include "modval/sweep.hpp"
