#pragma once

// Umbrella header for the betaxp library (excludes the CLI front end,
// which pulls in vendored CLI11/json headers).

#include "betaxp/beta.hpp"
#include "betaxp/bigfloat.hpp"
#include "betaxp/characterize.hpp"
#include "betaxp/digit_sequence.hpp"
#include "betaxp/enumeration.hpp"
#include "betaxp/errors.hpp"
#include "betaxp/expansion.hpp"
#include "betaxp/interval.hpp"
#include "betaxp/polynomial.hpp"
#include "betaxp/root_isolation.hpp"
#include "betaxp/stochastic.hpp"
#include "betaxp/swaps.hpp"
