#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "arfs/error.hpp"

int main(int argc, char** argv) {
  arfs::set_warnings_enabled(false);
  doctest::Context context(argc, argv);
  return context.run();
}
