#pragma once

#include "cuckoo/experiments.hpp"
#include "cuckoo/graph.hpp"
#include "cuckoo/hash_pair.hpp"
#include "cuckoo/kwise_hash.hpp"
#include "cuckoo/oracles.hpp"
#include "cuckoo/rational.hpp"
#include "cuckoo/rng.hpp"
#include "cuckoo/stats.hpp"
#include "cuckoo/table.hpp"
#include "cuckoo/uniform.hpp"
#include "cuckoo/zfamily.hpp"
