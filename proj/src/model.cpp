#include <actfd/model.hpp>
#include <actfd/solver.hpp>

#include <chrono>

namespace actfd
{
    auto Model::labeling_order() const -> std::vector<VarId>
    {
        std::vector<VarId> order = label;
        std::vector<bool> seen(vars.size(), false);
        for (auto v : label)
            seen[v.index] = true;
        for (std::uint32_t i = 0; i < vars.size(); ++i)
            if (! seen[i])
                order.push_back(VarId{i});
        return order;
    }

    auto Model::find(const std::string & name) const -> std::optional<VarId>
    {
        for (std::uint32_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == name)
                return VarId{i};
        return std::nullopt;
    }

    auto to_string(SolverLevel l) -> const char *
    {
        switch (l) {
        case SolverLevel::FC: return "fc";
        case SolverLevel::IC: return "ic";
        case SolverLevel::AC: return "ac";
        }
        return "?";
    }

    auto parse_solver_level(const std::string & s) -> std::optional<SolverLevel>
    {
        if (s == "fc")
            return SolverLevel::FC;
        if (s == "ic")
            return SolverLevel::IC;
        if (s == "ac")
            return SolverLevel::AC;
        return std::nullopt;
    }

    auto parse_alldistinct_strategy(const std::string & s) -> std::optional<AllDistinctStrategy>
    {
        if (s == "naive")
            return AllDistinctStrategy::NaivePairwise;
        if (s == "linear")
            return AllDistinctStrategy::LinearSpace;
        if (s == "wac")
            return AllDistinctStrategy::WeakAC;
        return std::nullopt;
    }

    auto binary_level(SolverLevel l) -> ConsistencyLevel
    {
        switch (l) {
        case SolverLevel::FC: return ConsistencyLevel::ForwardChecking;
        case SolverLevel::IC: return ConsistencyLevel::Interval;
        case SolverLevel::AC: return ConsistencyLevel::Arc;
        }
        return ConsistencyLevel::Interval;
    }

    auto nary_level(SolverLevel l) -> ConsistencyLevel
    {
        switch (l) {
        case SolverLevel::FC: return ConsistencyLevel::ForwardChecking;
        case SolverLevel::IC: return ConsistencyLevel::Interval;
        case SolverLevel::AC: return ConsistencyLevel::Hybrid;
        }
        return ConsistencyLevel::Interval;
    }

    auto runtime_options(const SolverConfig & config) -> RuntimeOptions
    {
        RuntimeOptions o;
        o.coalesce = config.coalesce;
        o.policy = config.policy;
        o.seed = config.seed;
        o.trace = config.trace;
        return o;
    }

    auto post_model(Runtime & rt, const Model & m, const SolverConfig & config) -> Status
    {
        auto & s = rt.store();
        if (s.num_vars() != 0)
            throw std::logic_error("post_model needs an empty store");
        for (const auto & v : m.vars)
            s.new_var(v.domain, v.name);

        for (const auto & c : m.constraints) {
            auto st = std::visit(
                [&](const auto & k) -> Status {
                    using K = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<K, NaryLinear>)
                        return post_linear(rt, k, nary_level(config.level));
                    else if constexpr (std::is_same_v<K, BinaryLinear>)
                        return post_binary(rt, k, binary_level(config.level));
                    else if constexpr (std::is_same_v<K, Disequality>)
                        return post_diseq(rt, k.x, k.y, k.c);
                    else
                        return post_alldistinct(rt, AllDistinctPosting{k.vars, config.alldistinct});
                },
                c);
            if (failed(st))
                return st;
        }
        return Status::Ok;
    }

    auto solve(const Model & m, const SolverConfig & config) -> SolveOutcome
    {
        auto start = std::chrono::steady_clock::now();
        Store store;
        Runtime rt(store, runtime_options(config));
        SolveOutcome out;
        out.order = m.labeling_order();
        if (! failed(post_model(rt, m, config)))
            out.result = label(rt, out.order, LabelingSpec{config.order, config.mode});
        else
            out.result.stats.activations = rt.activations();
        out.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out;
    }

    auto to_declaration_order(const std::vector<Value> & row, const std::vector<VarId> & order) -> std::vector<Value>
    {
        std::vector<Value> out(row.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            out[order[i].index] = row[i];
        return out;
    }
}
