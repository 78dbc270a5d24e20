#ifndef ACTFD_SOLVER_HPP
#define ACTFD_SOLVER_HPP

#include <actfd/model.hpp>
#include <actfd/search.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace actfd
{
    // fc: forward checking everywhere. ic: interval consistency (unite for
    // sums). ac: arc consistency for binary equations and the hybrid scheme
    // for sums.
    enum class SolverLevel
    {
        FC,
        IC,
        AC
    };

    [[nodiscard]] auto to_string(SolverLevel l) -> const char *;
    [[nodiscard]] auto parse_solver_level(const std::string & s) -> std::optional<SolverLevel>;
    [[nodiscard]] auto parse_alldistinct_strategy(const std::string & s) -> std::optional<AllDistinctStrategy>;

    [[nodiscard]] auto binary_level(SolverLevel l) -> ConsistencyLevel;
    [[nodiscard]] auto nary_level(SolverLevel l) -> ConsistencyLevel;

    struct SolverConfig
    {
        SolverLevel level = SolverLevel::AC;
        AllDistinctStrategy alldistinct = AllDistinctStrategy::LinearSpace;
        SearchMode mode = SearchMode::FirstSolution;
        VarOrder order = VarOrder::LeftToRight;
        bool coalesce = true;
        SchedulePolicy policy = SchedulePolicy::Fifo;
        std::uint64_t seed = 0;
        std::ostream * trace = nullptr;
    };

    [[nodiscard]] auto runtime_options(const SolverConfig & config) -> RuntimeOptions;

    // Creates the model's variables in `rt.store()` (which must be empty) and
    // posts every constraint. Stops at the first constraint that fails.
    auto post_model(Runtime & rt, const Model & m, const SolverConfig & config) -> Status;

    struct SolveOutcome
    {
        SearchResult result;
        std::vector<VarId> order;
        double time_ms = 0;
    };

    // post_model + label. Solution rows follow `order`.
    [[nodiscard]] auto solve(const Model & m, const SolverConfig & config) -> SolveOutcome;

    // Reorders a labeling-order row into declaration order.
    [[nodiscard]] auto to_declaration_order(const std::vector<Value> & row, const std::vector<VarId> & order)
        -> std::vector<Value>;
}

#endif
