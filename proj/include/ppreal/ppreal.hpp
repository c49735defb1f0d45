#pragma once

#include "ppreal/alpha.hpp"
#include "ppreal/artifacts.hpp"
#include "ppreal/bounds.hpp"
#include "ppreal/conditions.hpp"
#include "ppreal/exact.hpp"
#include "ppreal/lattice.hpp"
#include "ppreal/measure.hpp"
#include "ppreal/montecarlo.hpp"
#include "ppreal/pair_function.hpp"
#include "ppreal/rng.hpp"
#include "ppreal/simplex.hpp"
#include "ppreal/spec.hpp"
#include "ppreal/truncated.hpp"
