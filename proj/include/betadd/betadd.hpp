#pragma once

// Umbrella header.

#include "betadd/qbeta.hpp"
#include "betadd/interval.hpp"
#include "betadd/greedy.hpp"
#include "betadd/cylinders.hpp"
#include "betadd/natext.hpp"
#include "betadd/measure.hpp"
#include "betadd/serialize.hpp"
