#ifndef ACTFD_ALLDISTINCT_HPP
#define ACTFD_ALLDISTINCT_HPP

#include <actfd/runtime.hpp>

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace actfd
{
    enum class AllDistinctStrategy
    {
        NaivePairwise,
        LinearSpace,
        WeakAC
    };

    [[nodiscard]] auto to_string(AllDistinctStrategy s) -> const char *;

    struct AllDistinctPosting
    {
        std::vector<VarId> vars;
        AllDistinctStrategy strategy = AllDistinctStrategy::LinearSpace;
    };

    // The variable at `index` of a shared list. Left is [0, index), right is
    // (index, size): every agent of one posting refers to the same vector,
    // so the whole posting stays linear in the list length.
    struct OutofAgentArgs
    {
        std::shared_ptr<const std::vector<VarId>> list;
        std::size_t index = 0;

        [[nodiscard]] auto x() const -> VarId { return (*list)[index]; }
        [[nodiscard]] auto left() const -> std::span<const VarId> { return std::span(*list).first(index); }
        [[nodiscard]] auto right() const -> std::span<const VarId> { return std::span(*list).subspan(index + 1); }
    };

    auto post_alldistinct(Runtime & rt, const AllDistinctPosting & p) -> Status;

    // Counting step of weak arc consistency for one list member: with
    // n = |dom(x)| and m the number of other members whose domains are
    // subsets of dom(x), fail when m + 1 > n and, when m + 1 = n, remove
    // dom(x) from every member whose domain is not such a subset. `hint` is
    // a value just removed from dom(x).
    auto outof_reducer(Store & s, VarId x, std::span<const VarId> left, std::span<const VarId> right,
        std::optional<Value> hint = std::nullopt) -> Status;
}

#endif
