#ifndef ACTFD_VERIFY_HPP
#define ACTFD_VERIFY_HPP

// Cross-checks between the solver and the oracle.

#include <actfd/oracle.hpp>
#include <actfd/solver.hpp>

#include <optional>
#include <string>
#include <vector>

namespace actfd
{
    // Domains after posting and root propagation; nullopt if that failed.
    [[nodiscard]] auto root_domains(const Model & m, const SolverConfig & config)
        -> std::optional<std::vector<FiniteDomain>>;

    struct FixpointReport
    {
        std::size_t checked = 0;
        // One description per violated check.
        std::vector<std::string> violations;

        [[nodiscard]] auto ok() const -> bool { return violations.empty(); }
    };

    // Interval consistency of every linear constraint under ic and ac, arc
    // consistency of every binary equation under ac, weak arc consistency of
    // every alldistinct under wac.
    [[nodiscard]] auto check_fixpoint(const Model & m, const SolverConfig & config,
        const std::vector<FiniteDomain> & domains) -> FixpointReport;

    // All solutions in declaration order, sorted.
    [[nodiscard]] auto solver_solutions(const Model & m, SolverConfig config) -> std::vector<Assignment>;

    struct ConfigName
    {
        SolverLevel level;
        AllDistinctStrategy alldistinct;
    };

    [[nodiscard]] auto all_configurations() -> std::vector<ConfigName>;
}

#endif
