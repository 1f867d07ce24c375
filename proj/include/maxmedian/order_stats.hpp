#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

namespace maxmedian {

// Multiset of one arm's rewards with O(log n) insert and rank selection.
//
// Backed by a red-black tree with subtree-size node updates. Duplicates are
// kept by pairing each value with its insertion sequence number.
class RewardArchive {
public:
    RewardArchive() = default;

    // Throws PreconditionError for NaN or infinite x.
    void insert(double x);

    // zeta-th largest stored value; zeta = 1 is the maximum, zeta = size() the minimum.
    // Throws RangeError unless 1 <= zeta <= size().
    double select(std::size_t zeta) const;

    double max() const { return select(1); }
    double min() const { return select(size()); }

    std::size_t size() const noexcept { return tree_.size(); }
    bool empty() const noexcept { return tree_.empty(); }

private:
    using Key = std::pair<double, std::uint64_t>;
    using Tree = __gnu_pbds::tree<Key, __gnu_pbds::null_type, std::less<Key>,
                                  __gnu_pbds::rb_tree_tag,
                                  __gnu_pbds::tree_order_statistics_node_update>;
    Tree tree_;
    std::uint64_t next_seq_ = 0;
};

}  // namespace maxmedian
