#pragma once

#include "octachord/assembly.hpp"
#include "octachord/continuity.hpp"
#include "octachord/geometry.hpp"
#include "octachord/mc_oracle.hpp"
#include "octachord/pair_densities.hpp"
#include "octachord/quadrature.hpp"
