#pragma once

// Umbrella header for the soft-clustering comparison toolkit.

#include "softcmp/clusterers.hpp"
#include "softcmp/common.hpp"
#include "softcmp/core.hpp"
#include "softcmp/distributional.hpp"
#include "softcmp/enumerate.hpp"
#include "softcmp/errors.hpp"
#include "softcmp/io.hpp"
#include "softcmp/metrics.hpp"
#include "softcmp/pipeline.hpp"
#include "softcmp/rng.hpp"
#include "softcmp/sampling.hpp"
