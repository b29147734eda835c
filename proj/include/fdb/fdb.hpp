#pragma once

#include "fdb/asets.hpp"
#include "fdb/commands.hpp"
#include "fdb/cuboid.hpp"
#include "fdb/eval.hpp"
#include "fdb/expand.hpp"
#include "fdb/expr.hpp"
#include "fdb/multi_index.hpp"
#include "fdb/partition.hpp"
#include "fdb/polynomial.hpp"
#include "fdb/random.hpp"
#include "fdb/render.hpp"
#include "fdb/smooth.hpp"
#include "fdb/value.hpp"
#include "fdb/verify.hpp"
