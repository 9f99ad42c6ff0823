#pragma once

#include "esf/numeric.hpp"
#include "esf/permutation.hpp"
#include "esf/group.hpp"
#include "esf/ewens.hpp"
#include "esf/densities.hpp"
#include "esf/oracle.hpp"
#include "esf/montecarlo.hpp"
#include "esf/io.hpp"
