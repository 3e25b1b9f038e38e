#pragma once

#include "seqmine/types.hpp"
#include "seqmine/result.hpp"
#include "seqmine/io.hpp"
#include "seqmine/relations.hpp"
#include "seqmine/regex.hpp"
#include "seqmine/constraints.hpp"
#include "seqmine/condensed.hpp"
#include "seqmine/miner.hpp"
#include "seqmine/oracle.hpp"
#include "seqmine/datagen.hpp"
#include "seqmine/bench.hpp"
#include "seqmine/cli.hpp"
