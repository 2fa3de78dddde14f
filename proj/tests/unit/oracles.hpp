#pragma once

#include "cubaug/oracle.hpp"

namespace testing {

using namespace cubaug;
using namespace cubaug::oracle;

}  // namespace testing
