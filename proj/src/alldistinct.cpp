#include <actfd/alldistinct.hpp>
#include <actfd/linear.hpp>

#include <algorithm>

namespace actfd
{
    auto to_string(AllDistinctStrategy s) -> const char *
    {
        switch (s) {
        case AllDistinctStrategy::NaivePairwise: return "naive";
        case AllDistinctStrategy::LinearSpace: return "linear";
        case AllDistinctStrategy::WeakAC: return "wac";
        }
        return "?";
    }

    auto outof_reducer(Store & s, VarId x, std::span<const VarId> left, std::span<const VarId> right,
        std::optional<Value> hint) -> Status
    {
        const auto & dx = s.domain(x);
        auto n = dx.size();
        Value m = 0;
        std::vector<VarId> outside;
        for (auto side : {left, right})
            for (auto z : side) {
                if (is_subset_of(s.domain(z), dx, hint))
                    ++m;
                else if (s.is_free(z))
                    outside.push_back(z);
            }

        if (m + 1 > n)
            return Status::Failed;
        if (m + 1 < n || outside.empty())
            return Status::Ok;

        auto values = dx.values();
        for (auto z : outside)
            for (auto v : values)
                if (failed(s.exclude(z, v)))
                    return Status::Failed;
        return Status::Ok;
    }

    namespace
    {
        auto exclude_list(Store & s, const OutofAgentArgs & args) -> Status
        {
            auto v = s.value(args.x());
            for (auto side : {args.left(), args.right()})
                for (auto z : side)
                    if (failed(s.exclude(z, v)))
                        return Status::Failed;
            return Status::Ok;
        }

        // The counting step for x, then for every member whose domain now
        // contains dom(x): shrinking x can only raise their subset counts, and
        // their own agents are not woken by events on x.
        auto weak_ac_step(Store & s, const OutofAgentArgs & args, std::optional<Value> hint) -> Status
        {
            if (failed(outof_reducer(s, args.x(), args.left(), args.right(), hint)))
                return Status::Failed;
            const auto & list = *args.list;
            for (std::size_t j = 0; j < list.size(); ++j) {
                if (j == args.index || s.is_bound(list[j]) || s.is_bound(args.x()))
                    continue;
                if (! is_subset_of(s.domain(args.x()), s.domain(list[j])))
                    continue;
                OutofAgentArgs other{args.list, j};
                if (failed(outof_reducer(s, other.x(), other.left(), other.right())))
                    return Status::Failed;
            }
            return Status::Ok;
        }

        auto is_free_guard(VarId x)
        {
            return [x](const Store & s) { return s.is_free(x); };
        }

        auto linear_outof(const OutofAgentArgs & args) -> AgentSpec
        {
            AgentSpec spec;
            spec.label = "outof";
            spec.rules.push_back(Rule{is_free_guard(args.x()), {{EventKind::Ins, args.x()}}, false, {}});
            spec.rules.push_back(Rule{{}, {}, false,
                [args](Runtime & rt, const Event &) { return exclude_list(rt.store(), args); }});
            return spec;
        }

        auto weak_outof(const OutofAgentArgs & args) -> AgentSpec
        {
            AgentSpec spec;
            spec.label = "outof_wac";
            spec.rules.push_back(Rule{is_free_guard(args.x()), {{EventKind::Ins, args.x()}, {EventKind::Bound, args.x()}}, true,
                [args](Runtime & rt, const Event &) { return weak_ac_step(rt.store(), args, std::nullopt); }});
            spec.rules.push_back(Rule{{}, {}, false,
                [args](Runtime & rt, const Event &) { return exclude_list(rt.store(), args); }});
            return spec;
        }

        auto weak_outof_dom(const OutofAgentArgs & args) -> AgentSpec
        {
            AgentSpec spec;
            spec.label = "outof_dom";
            spec.rules.push_back(Rule{is_free_guard(args.x()), {{EventKind::Dom, args.x()}}, false,
                [args](Runtime & rt, const Event & e) { return weak_ac_step(rt.store(), args, e.value); }});
            spec.rules.push_back(Rule{{}, {}, false, {}});
            return spec;
        }
    }

    auto post_alldistinct(Runtime & rt, const AllDistinctPosting & p) -> Status
    {
        auto sorted = p.vars;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            return Status::Failed;

        if (p.strategy == AllDistinctStrategy::NaivePairwise) {
            for (std::size_t i = 0; i < p.vars.size(); ++i)
                for (std::size_t j = i + 1; j < p.vars.size(); ++j)
                    if (failed(post_diseq(rt, p.vars[i], p.vars[j], 0)))
                        return Status::Failed;
            return Status::Ok;
        }

        auto list = std::make_shared<const std::vector<VarId>>(p.vars);
        for (std::size_t i = 0; i < list->size(); ++i) {
            OutofAgentArgs args{list, i};
            if (p.strategy == AllDistinctStrategy::LinearSpace) {
                if (failed(rt.spawn(linear_outof(args)).status))
                    return Status::Failed;
            }
            else {
                if (failed(rt.spawn(weak_outof(args)).status))
                    return Status::Failed;
                if (failed(rt.spawn(weak_outof_dom(args)).status))
                    return Status::Failed;
            }
        }
        return Status::Ok;
    }
}
