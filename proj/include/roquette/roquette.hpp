#pragma once

#include "roquette/cache.hpp"
#include "roquette/cohomology.hpp"
#include "roquette/constructors.hpp"
#include "roquette/definition.hpp"
#include "roquette/element_set.hpp"
#include "roquette/error.hpp"
#include "roquette/expansivity.hpp"
#include "roquette/group.hpp"
#include "roquette/isomorphism.hpp"
#include "roquette/lattice.hpp"
#include "roquette/parallel.hpp"
#include "roquette/report.hpp"
#include "roquette/structure.hpp"
#include "roquette/suites.hpp"
