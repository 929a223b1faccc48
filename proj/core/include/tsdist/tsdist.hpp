#pragma once

#include "tsdist/core.hpp"
#include "tsdist/datagen.hpp"
#include "tsdist/elastic.hpp"
#include "tsdist/eval.hpp"
#include "tsdist/io.hpp"
#include "tsdist/spd.hpp"
