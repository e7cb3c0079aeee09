#pragma once

#include "bpt/bench.hpp"
#include "bpt/bp_tree.hpp"
#include "bpt/generate.hpp"
#include "bpt/space.hpp"
