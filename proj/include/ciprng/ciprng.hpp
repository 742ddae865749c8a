#pragma once

// Umbrella header for the CI(xorshift, xorshift) generator library.

#include "ciprng/battery.hpp"
#include "ciprng/bits.hpp"
#include "ciprng/ci.hpp"
#include "ciprng/image.hpp"
#include "ciprng/logistic.hpp"
#include "ciprng/old_ci.hpp"
#include "ciprng/stats.hpp"
#include "ciprng/thresholds.hpp"
#include "ciprng/watermark.hpp"
#include "ciprng/xorshift.hpp"
