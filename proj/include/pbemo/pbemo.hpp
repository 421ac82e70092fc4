#ifndef PBEMO_PBEMO_HPP
#define PBEMO_PBEMO_HPP

#include "pbemo/algorithms.hpp"
#include "pbemo/archive.hpp"
#include "pbemo/config.hpp"
#include "pbemo/core.hpp"
#include "pbemo/harness.hpp"
#include "pbemo/indicators.hpp"
#include "pbemo/io.hpp"
#include "pbemo/nds.hpp"
#include "pbemo/postprocess.hpp"
#include "pbemo/problems.hpp"
#include "pbemo/rng.hpp"
#include "pbemo/stats.hpp"
#include "pbemo/variation.hpp"

#endif
