#pragma once

#include "eulertop/error.hpp"
#include "eulertop/rational.hpp"
#include "eulertop/model.hpp"
#include "eulertop/polynomial.hpp"
#include "eulertop/moments.hpp"
#include "eulertop/roots.hpp"
#include "eulertop/quadrature.hpp"
#include "eulertop/perturbation.hpp"
#include "eulertop/melnikov.hpp"
#include "eulertop/ode.hpp"
#include "eulertop/verifier.hpp"
#include "eulertop/scenarios.hpp"
#include "eulertop/spec_io.hpp"
#include "eulertop/report.hpp"
