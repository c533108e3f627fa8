#pragma once

#include "infodim/cantor.hpp"
#include "infodim/distributions.hpp"
#include "infodim/dsl.hpp"
#include "infodim/entropy_vector.hpp"
#include "infodim/error.hpp"
#include "infodim/fixtures.hpp"
#include "infodim/group.hpp"
#include "infodim/group_witness.hpp"
#include "infodim/inequality.hpp"
#include "infodim/loglin.hpp"
#include "infodim/point_set.hpp"
#include "infodim/rational.hpp"
#include "infodim/shannon.hpp"
#include "infodim/simplex.hpp"
#include "infodim/splitting.hpp"
#include "infodim/subset.hpp"
