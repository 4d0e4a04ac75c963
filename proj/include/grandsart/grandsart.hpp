#pragma once

#include "grandsart/core.hpp"
#include "grandsart/debruijn.hpp"
#include "grandsart/invariants.hpp"
#include "grandsart/io.hpp"
#include "grandsart/span.hpp"
#include "grandsart/words.hpp"
