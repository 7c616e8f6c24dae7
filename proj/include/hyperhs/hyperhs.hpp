#pragma once

// Umbrella header: the whole library in one include.

#include "hyperhs/errors.hpp"
#include "hyperhs/identities.hpp"
#include "hyperhs/korbital.hpp"
#include "hyperhs/linalg.hpp"
#include "hyperhs/quadrature.hpp"
#include "hyperhs/registry.hpp"
#include "hyperhs/report.hpp"
#include "hyperhs/rng.hpp"
#include "hyperhs/sampling.hpp"
#include "hyperhs/specfun.hpp"
#include "hyperhs/suite.hpp"
