#include <actfd/verify.hpp>

#include <algorithm>

namespace actfd
{
    auto root_domains(const Model & m, const SolverConfig & config) -> std::optional<std::vector<FiniteDomain>>
    {
        Store store;
        Runtime rt(store, runtime_options(config));
        if (failed(post_model(rt, m, config)) || failed(rt.run_to_fixpoint()))
            return std::nullopt;
        std::vector<FiniteDomain> out;
        for (std::uint32_t i = 0; i < m.vars.size(); ++i)
            out.push_back(store.domain(VarId{i}));
        return out;
    }

    auto check_fixpoint(const Model & m, const SolverConfig & config, const std::vector<FiniteDomain> & domains)
        -> FixpointReport
    {
        FixpointReport r;
        const bool bounds = config.level != SolverLevel::FC;
        const bool arc = config.level == SolverLevel::AC;
        const bool wac = config.alldistinct == AllDistinctStrategy::WeakAC;

        for (std::size_t i = 0; i < m.constraints.size(); ++i) {
            auto report = [&](bool ok, const char * what) {
                ++r.checked;
                if (! ok)
                    r.violations.push_back("constraint " + std::to_string(i) + " is not " + what);
            };
            std::visit(
                [&](const auto & k) {
                    using K = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<K, NaryLinear>) {
                        if (bounds)
                            report(check_interval_consistent(k, domains), "interval consistent");
                    }
                    else if constexpr (std::is_same_v<K, BinaryLinear>) {
                        if (bounds)
                            report(check_interval_consistent(k, domains), "interval consistent");
                        if (arc)
                            report(check_arc_consistent(k, domains), "arc consistent");
                    }
                    else if constexpr (std::is_same_v<K, AllDistinct>) {
                        if (wac) {
                            std::vector<FiniteDomain> list;
                            for (auto v : k.vars)
                                list.push_back(domains[v.index]);
                            report(check_weak_arc_consistent(list), "weakly arc consistent");
                        }
                    }
                },
                m.constraints[i]);
        }
        return r;
    }

    auto solver_solutions(const Model & m, SolverConfig config) -> std::vector<Assignment>
    {
        config.mode = SearchMode::AllSolutions;
        auto out = solve(m, config);
        std::vector<Assignment> rows;
        for (const auto & row : out.result.solutions)
            rows.push_back(to_declaration_order(row, out.order));
        std::sort(rows.begin(), rows.end());
        return rows;
    }

    auto all_configurations() -> std::vector<ConfigName>
    {
        std::vector<ConfigName> out;
        for (auto l : {SolverLevel::FC, SolverLevel::IC, SolverLevel::AC})
            for (auto a : {AllDistinctStrategy::NaivePairwise, AllDistinctStrategy::LinearSpace,
                     AllDistinctStrategy::WeakAC})
                out.push_back({l, a});
        return out;
    }
}
