#pragma once

// Umbrella header.

#include "advice_kit/advice.hpp"
#include "advice_kit/catalog.hpp"
#include "advice_kit/complexity.hpp"
#include "advice_kit/fixtures.hpp"
#include "advice_kit/literals.hpp"
#include "advice_kit/problems.hpp"
#include "advice_kit/random.hpp"
#include "advice_kit/reductions.hpp"
#include "advice_kit/spaces.hpp"
