#pragma once

#include "ava/attributes.hpp"
#include "ava/counting.hpp"
#include "ava/errors.hpp"
#include "ava/geometry.hpp"
#include "ava/ingest.hpp"
#include "ava/io.hpp"
#include "ava/localization.hpp"
#include "ava/matching.hpp"
#include "ava/report.hpp"
#include "ava/rng.hpp"
#include "ava/stats.hpp"
#include "ava/synth.hpp"
#include "ava/types.hpp"
