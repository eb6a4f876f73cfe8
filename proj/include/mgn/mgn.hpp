/// Umbrella header.
#pragma once

#include "mgn/rational.hpp"
#include "mgn/picard.hpp"
#include "mgn/serialize.hpp"
#include "mgn/pullback.hpp"
#include "mgn/intersection.hpp"
#include "mgn/bigness.hpp"
#include "mgn/reid_tai.hpp"
