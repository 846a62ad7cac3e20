#pragma once

#include "gsft/action.hpp"
#include "gsft/bigint.hpp"
#include "gsft/error.hpp"
#include "gsft/group_table.hpp"
#include "gsft/io.hpp"
#include "gsft/matrix.hpp"
#include "gsft/perm_group.hpp"
#include "gsft/polynomial.hpp"
#include "gsft/quotient.hpp"
#include "gsft/reduce.hpp"
#include "gsft/repshift.hpp"
#include "gsft/sft.hpp"
#include "gsft/smith.hpp"
#include "gsft/sse.hpp"
