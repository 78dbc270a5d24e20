#ifndef ACTFD_SEARCH_HPP
#define ACTFD_SEARCH_HPP

#include <actfd/runtime.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace actfd
{
    struct SearchStats
    {
        // (variable, value) attempts whose binding failed during propagation.
        // Exhausting a subtree is not counted again at its parent, and
        // failures during root propagation are not counted.
        std::uint64_t backtracks = 0;
        std::uint64_t activations = 0;
        std::uint64_t solutions = 0;
    };

    enum class VarOrder
    {
        LeftToRight,
        // Smallest domain first, ties broken left to right. Not used by any of
        // the reference benchmarks.
        FirstFail
    };

    enum class SearchMode
    {
        FirstSolution,
        AllSolutions
    };

    struct LabelingSpec
    {
        VarOrder order = VarOrder::LeftToRight;
        SearchMode mode = SearchMode::FirstSolution;
    };

    struct SearchResult
    {
        SearchStats stats;
        // Values of the labelled variables, one row per solution, in the order
        // the solutions were found.
        std::vector<std::vector<Value>> solutions;
    };

    using SolutionCallback = std::function<void(const Store &)>;

    // Runs root propagation, then depth-first labeling with ascending values.
    // The store is restored to its post-root-propagation state on return.
    auto label(Runtime & rt, std::span<const VarId> vars, const LabelingSpec & spec,
        const SolutionCallback & on_solution = {}) -> SearchResult;
}

#endif
