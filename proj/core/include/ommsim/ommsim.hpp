#pragma once

#include "ommsim/config.hpp"
#include "ommsim/dynamics.hpp"
#include "ommsim/entanglement.hpp"
#include "ommsim/errors.hpp"
#include "ommsim/harness.hpp"
#include "ommsim/model.hpp"
#include "ommsim/output.hpp"
#include "ommsim/selftest.hpp"
#include "ommsim/steadystate.hpp"
#include "ommsim/units.hpp"
