#pragma once

#include "semisum/airy.hpp"
#include "semisum/errors.hpp"
#include "semisum/format.hpp"
#include "semisum/numeric.hpp"
#include "semisum/potential.hpp"
#include "semisum/precision.hpp"
#include "semisum/spectral.hpp"
#include "semisum/sum_engine.hpp"
#include "semisum/tf.hpp"
#include "semisum/wkb.hpp"
