#pragma once

// Umbrella header.

#include "idealkit/error.hpp"
#include "idealkit/rational.hpp"
#include "idealkit/seqspace.hpp"
#include "idealkit/seq_dsl.hpp"
#include "idealkit/idealcalc.hpp"
#include "idealkit/matrix.hpp"
#include "idealkit/linalg.hpp"
#include "idealkit/matlie.hpp"
#include "idealkit/witness.hpp"
#include "idealkit/json_io.hpp"
