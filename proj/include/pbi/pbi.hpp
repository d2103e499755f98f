#pragma once

// Percentile-based citation indicators over exact rational arithmetic:
// per-field citation distributions, percentile schemes, the fractional
// interval-overlap approach and the earlier approaches it is compared
// against, plus dataset/report serialization.

#include "pbi/bigint.hpp"
#include "pbi/distribution.hpp"
#include "pbi/errors.hpp"
#include "pbi/fractional.hpp"
#include "pbi/ingest.hpp"
#include "pbi/interval.hpp"
#include "pbi/legacy.hpp"
#include "pbi/rational.hpp"
#include "pbi/scheme.hpp"
