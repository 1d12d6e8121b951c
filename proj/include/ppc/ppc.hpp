#pragma once

#include "errors.hpp"
#include "sparsity.hpp"
#include "truth_table.hpp"
#include "twolevel/cover.hpp"
#include "twolevel/verify.hpp"
#include "twolevel/exact.hpp"
#include "twolevel/heuristic.hpp"
#include "twolevel/pla.hpp"
#include "twolevel/segmented.hpp"
#include "error_analysis.hpp"
#include "fixed_point.hpp"
#include "image.hpp"
#include "apps.hpp"
#include "json.hpp"
