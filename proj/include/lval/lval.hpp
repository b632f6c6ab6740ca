#pragma once

#include "lval/borel.hpp"
#include "lval/check_report.hpp"
#include "lval/convex.hpp"
#include "lval/errors.hpp"
#include "lval/fubini.hpp"
#include "lval/group.hpp"
#include "lval/instances.hpp"
#include "lval/interval_set.hpp"
#include "lval/json_io.hpp"
#include "lval/lattice.hpp"
#include "lval/piecewise.hpp"
#include "lval/random.hpp"
#include "lval/rational.hpp"
#include "lval/seq_template.hpp"
#include "lval/sequences.hpp"
#include "lval/step_function.hpp"
#include "lval/uniformity.hpp"
#include "lval/valuation.hpp"
