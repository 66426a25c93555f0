#pragma once

#include "seqsem/analysis.hpp"
#include "seqsem/default_params.hpp"
#include "seqsem/energy.hpp"
#include "seqsem/energy_params.hpp"
#include "seqsem/fold.hpp"
#include "seqsem/io.hpp"
#include "seqsem/loops.hpp"
#include "seqsem/nucleotide.hpp"
#include "seqsem/random.hpp"
#include "seqsem/sampler.hpp"
#include "seqsem/seq_partition.hpp"
#include "seqsem/structure.hpp"
#include "seqsem/structure_count.hpp"
