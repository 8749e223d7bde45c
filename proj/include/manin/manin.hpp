#pragma once

#include "manin/rational.hpp"
#include "manin/matrix.hpp"
#include "manin/subspace.hpp"
#include "manin/check_report.hpp"
#include "manin/lie_algebra.hpp"
#include "manin/manin_triple.hpp"
#include "manin/weyl.hpp"
#include "manin/group.hpp"
#include "manin/sl.hpp"
#include "manin/poisson.hpp"
#include "manin/sampling.hpp"
#include "manin/splitcheck.hpp"
#include "manin/flagapps.hpp"
#include "manin/cli.hpp"
