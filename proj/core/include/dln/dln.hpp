#pragma once

#include "dln/analytic_loss.hpp"
#include "dln/architecture.hpp"
#include "dln/bias_solver.hpp"
#include "dln/errors.hpp"
#include "dln/exact_solver.hpp"
#include "dln/io.hpp"
#include "dln/moments.hpp"
#include "dln/nonlinear.hpp"
#include "dln/params.hpp"
#include "dln/regimes.hpp"
#include "dln/root_finding.hpp"
#include "dln/solution_family.hpp"
#include "dln/stochastic.hpp"
#include "dln/synthetic.hpp"
#include "dln/verifier.hpp"
#include "dln/version.hpp"
