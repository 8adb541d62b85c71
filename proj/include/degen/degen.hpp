#pragma once

// Umbrella header: pulls in the whole library.

#include "degen/acceptance.hpp"
#include "degen/algebra.hpp"
#include "degen/config.hpp"
#include "degen/dual.hpp"
#include "degen/empot.hpp"
#include "degen/errors.hpp"
#include "degen/expr.hpp"
#include "degen/frame.hpp"
#include "degen/generators.hpp"
#include "degen/random.hpp"
#include "degen/report.hpp"
#include "degen/run.hpp"
#include "degen/solution.hpp"
#include "degen/verify.hpp"
