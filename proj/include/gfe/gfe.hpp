#pragma once

#include "gfe/arith.hpp"
#include "gfe/bounds.hpp"
#include "gfe/errors.hpp"
#include "gfe/io.hpp"
#include "gfe/search.hpp"
#include "gfe/verify.hpp"
