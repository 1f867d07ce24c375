#include "maxmedian/rng.hpp"

namespace maxmedian {

static_assert(splitmix64(0) == 0xe220a8397b1dcdafULL, "splitmix64 reference value");

}  // namespace maxmedian
