#pragma once

#include "lleei/algebra_checks.hpp"
#include "lleei/extension.hpp"
#include "lleei/harness.hpp"
#include "lleei/integrator.hpp"
#include "lleei/jet.hpp"
#include "lleei/linalg.hpp"
#include "lleei/mindex.hpp"
#include "lleei/parallel.hpp"
#include "lleei/refsolve.hpp"
#include "lleei/sysdef.hpp"
