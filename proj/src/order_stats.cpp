#include "maxmedian/order_stats.hpp"

#include <cmath>
#include <string>

#include "maxmedian/error.hpp"

namespace maxmedian {

void RewardArchive::insert(double x) {
    if (!std::isfinite(x)) throw PreconditionError("RewardArchive::insert: reward must be finite");
    tree_.insert({x, next_seq_++});
}

double RewardArchive::select(std::size_t zeta) const {
    if (zeta < 1 || zeta > tree_.size()) {
        throw RangeError("RewardArchive::select: rank " + std::to_string(zeta) +
                         " outside [1, " + std::to_string(tree_.size()) + "]");
    }
    return tree_.find_by_order(tree_.size() - zeta)->first;
}

}  // namespace maxmedian
