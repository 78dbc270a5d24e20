#ifndef ACTFD_ORACLE_HPP
#define ACTFD_ORACLE_HPP

// Brute-force reference checks. Nothing here touches a Store or Runtime.

#include <actfd/model.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace actfd
{
    using Assignment = std::vector<Value>;

    struct GroundConstraint
    {
        std::vector<std::uint32_t> scope;
        // Called with the full assignment once every scope variable is set.
        std::function<bool(const Assignment &)> holds;
    };

    struct GroundModel
    {
        std::vector<std::vector<Value>> domains;
        std::vector<GroundConstraint> constraints;
    };

    // Too many search nodes for the oracle.
    class OracleRefusal : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline constexpr std::uint64_t default_oracle_cap = 10'000'000;

    [[nodiscard]] auto ground(const Model & m) -> GroundModel;

    // Constraint set semantics, independent of any propagator.
    [[nodiscard]] auto satisfies(const Model & m, const Assignment & a) -> bool;

    // Sorted solution set, rows in declaration order. Depth-first over the
    // variables in index order; a constraint is evaluated as soon as its
    // scope is assigned. Throws OracleRefusal after `cap` nodes.
    [[nodiscard]] auto enumerate_solutions(const GroundModel & g, std::uint64_t cap = default_oracle_cap)
        -> std::vector<Assignment>;

    // Same result; the first variable's values are split over OpenMP threads.
    [[nodiscard]] auto enumerate_solutions_parallel(const GroundModel & g, std::uint64_t cap = default_oracle_cap)
        -> std::vector<Assignment>;

    // Domains are indexed by VarId::index.
    [[nodiscard]] auto check_interval_consistent(const NaryLinear & c, std::span<const FiniteDomain> domains) -> bool;
    [[nodiscard]] auto check_interval_consistent(const BinaryLinear & c, std::span<const FiniteDomain> domains) -> bool;

    [[nodiscard]] auto check_arc_consistent(const std::function<bool(Value, Value)> & p, const FiniteDomain & dx,
        const FiniteDomain & dy) -> bool;
    [[nodiscard]] auto check_arc_consistent(const BinaryLinear & c, std::span<const FiniteDomain> domains) -> bool;

    [[nodiscard]] auto check_weak_arc_consistent(std::span<const FiniteDomain> list) -> bool;

    [[nodiscard]] auto to_nary(const BinaryLinear & c) -> NaryLinear;
}

#endif
