#pragma once

#include "arfs/instances.hpp"

namespace arfs::testing {
using namespace arfs::instances;
}  // namespace arfs::testing
