#pragma once

#include "cwilab/annotation.hpp"
#include "cwilab/ensemble.hpp"
#include "cwilab/errors.hpp"
#include "cwilab/io.hpp"
#include "cwilab/metrics.hpp"
#include "cwilab/selection.hpp"
#include "cwilab/synth.hpp"
#include "cwilab/types.hpp"
