#pragma once

#include "hasse/exterior.hpp"
#include "hasse/hs_series.hpp"
#include "hasse/identities.hpp"
#include "hasse/json_io.hpp"
#include "hasse/matrix.hpp"
#include "hasse/multi_index.hpp"
#include "hasse/random_gen.hpp"
#include "hasse/rational.hpp"
#include "hasse/traces.hpp"
