#include <actfd/linear.hpp>

#include <algorithm>
#include <map>
#include <memory>

namespace actfd
{
    auto to_string(ConsistencyLevel l) -> const char *
    {
        switch (l) {
        case ConsistencyLevel::ForwardChecking: return "fc";
        case ConsistencyLevel::Interval: return "ic";
        case ConsistencyLevel::Arc: return "arc";
        case ConsistencyLevel::Hybrid: return "hybrid";
        }
        return "?";
    }

    auto quotient_range(Value lo, Value hi, Value a) -> std::pair<Value, Value>
    {
        if (a > 0)
            return {ceil_div(lo, a), floor_div(hi, a)};
        return {ceil_div(-hi, -a), floor_div(-lo, -a)};
    }

    auto product_range(const Store & s, Value a, VarId x) -> std::pair<Value, Value>
    {
        auto p = a * s.min(x), q = a * s.max(x);
        return p <= q ? std::pair{p, q} : std::pair{q, p};
    }

    auto normalize(NaryLinear nc) -> NaryLinear
    {
        std::map<std::uint32_t, Value> merged;
        std::vector<VarId> order;
        for (const auto & t : nc.terms) {
            if (t.coeff == 0)
                throw std::invalid_argument("zero coefficient in linear constraint");
            if (! merged.contains(t.var.index))
                order.push_back(t.var);
            merged[t.var.index] += t.coeff;
        }
        NaryLinear out{nc.c, {}};
        for (auto v : order)
            if (auto a = merged[v.index]; a != 0)
                out.terms.push_back({a, v});
        return out;
    }

    namespace
    {
        constexpr __int128 capacity_limit = static_cast<__int128>(1) << 62;

        auto magnitude(const Store & s, Value a, VarId x) -> __int128
        {
            __int128 m = std::max(s.min(x) < 0 ? -static_cast<__int128>(s.min(x)) : s.min(x),
                s.max(x) < 0 ? -static_cast<__int128>(s.max(x)) : s.max(x));
            return (a < 0 ? -static_cast<__int128>(a) : a) * m;
        }

        auto abs128(Value v) -> __int128 { return v < 0 ? -static_cast<__int128>(v) : v; }
    }

    auto check_capacity(const Store & s, const NaryLinear & nc) -> void
    {
        __int128 total = abs128(nc.c);
        for (const auto & t : nc.terms) {
            total += magnitude(s, t.coeff, t.var);
            if (total >= capacity_limit)
                throw CapacityError("linear constraint may overflow 64-bit arithmetic");
        }
    }

    auto check_capacity(const Store & s, const BinaryLinear & bc) -> void
    {
        if (magnitude(s, bc.a, bc.x) + magnitude(s, bc.b, bc.y) + abs128(bc.c) >= capacity_limit)
            throw CapacityError("binary constraint may overflow 64-bit arithmetic");
    }

    auto forward_partial_sums(const Store & s, const NaryLinear & nc) -> PartialSums
    {
        PartialSums ps;
        ps.lt.reserve(nc.terms.size() + 1);
        ps.ut.reserve(nc.terms.size() + 1);
        ps.lt.push_back(nc.c);
        ps.ut.push_back(nc.c);
        for (const auto & t : nc.terms) {
            auto [lo, hi] = product_range(s, t.coeff, t.var);
            ps.lt.push_back(ps.lt.back() + lo);
            ps.ut.push_back(ps.ut.back() + hi);
        }
        return ps;
    }

    auto reduce_linear(Store & s, const NaryLinear & nc) -> Status
    {
        auto ps = forward_partial_sums(s, nc);
        auto n = nc.terms.size();
        if (ps.lt[n] > 0 || ps.ut[n] < 0)
            return Status::Failed;

        // T_n = 0; walk back, narrowing x_i from T_i - T_{i-1} and then
        // T_{i-1} from T_i and the narrowed x_i.
        Value t_lo = 0, t_hi = 0;
        for (auto i = n; i-- > 0;) {
            const auto & t = nc.terms[i];
            auto [x_lo, x_hi] = quotient_range(t_lo - ps.ut[i], t_hi - ps.lt[i], t.coeff);
            if (failed(s.intersect(t.var, x_lo, x_hi)))
                return Status::Failed;
            auto [p_lo, p_hi] = product_range(s, t.coeff, t.var);
            t_lo = std::max(t_lo - p_hi, ps.lt[i]);
            t_hi = std::min(t_hi - p_lo, ps.ut[i]);
            if (t_lo > t_hi)
                return Status::Failed;
        }
        return Status::Ok;
    }

    auto count_free(const Store & s, const NaryLinear & nc) -> std::size_t
    {
        return static_cast<std::size_t>(
            std::count_if(nc.terms.begin(), nc.terms.end(), [&](const LinearTerm & t) { return s.is_free(t.var); }));
    }

    namespace
    {
        // target_coeff * target = source_coeff * source + offset, with
        // target_coeff > 0. Both directions of a binary constraint are views of
        // this shape; the reverse one swaps roles and negates the offset.
        struct Direction
        {
            Value target_coeff;
            VarId target;
            Value source_coeff;
            VarId source;
            Value offset;
        };

        auto forward_of(const BinaryLinear & bc) -> Direction { return {bc.a, bc.x, bc.b, bc.y, bc.c}; }
        auto backward_of(const BinaryLinear & bc) -> Direction { return {bc.b, bc.y, bc.a, bc.x, -bc.c}; }

        auto both_free(VarId x, VarId y)
        {
            return [x, y](const Store & s) { return s.is_free(x) && s.is_free(y); };
        }

        auto is_free_guard(VarId x)
        {
            return [x](const Store & s) { return s.is_free(x); };
        }

        // Binds the target from a bound source: X is T//A, A*X =:= T.
        auto solve_target(Store & s, const Direction & d) -> Status
        {
            auto t = d.source_coeff * s.value(d.source) + d.offset;
            auto q = t / d.target_coeff;
            if (q * d.target_coeff != t)
                return Status::Failed;
            return s.bind(d.target, q);
        }

        auto narrow_interval(Store & s, const Direction & d) -> Status
        {
            auto [lo, hi] = product_range(s, d.source_coeff, d.source);
            auto [x_lo, x_hi] = quotient_range(lo + d.offset, hi + d.offset, d.target_coeff);
            return s.intersect(d.target, x_lo, x_hi);
        }

        auto exclude_counterpart(Store & s, const Direction & d, Value removed) -> Status
        {
            auto t = d.source_coeff * removed + d.offset;
            auto q = t / d.target_coeff;
            if (q * d.target_coeff != t)
                return Status::Ok;
            return s.exclude(d.target, q);
        }

        // Removes every target value without a support in the source domain.
        auto revise(Store & s, const Direction & d) -> Status
        {
            std::vector<Value> unsupported;
            s.domain(d.target).for_each([&](Value v) {
                auto t = d.target_coeff * v - d.offset;
                auto w = t / d.source_coeff;
                if (w * d.source_coeff != t || ! s.domain(d.source).contains(w))
                    unsupported.push_back(v);
            });
            for (auto v : unsupported)
                if (failed(s.exclude(d.target, v)))
                    return Status::Failed;
            return Status::Ok;
        }

        auto forward_agent(const BinaryLinear & bc) -> AgentSpec
        {
            auto fwd = forward_of(bc), bwd = backward_of(bc);
            AgentSpec spec;
            spec.label = "lin2_forward";
            spec.rules.push_back(Rule{both_free(bc.x, bc.y), {{EventKind::Ins, bc.x}, {EventKind::Ins, bc.y}}, false, {}});
            spec.rules.push_back(Rule{is_free_guard(bc.x), {}, false,
                [fwd](Runtime & rt, const Event &) { return solve_target(rt.store(), fwd); }});
            spec.rules.push_back(Rule{{}, {}, false,
                [bwd](Runtime & rt, const Event &) { return solve_target(rt.store(), bwd); }});
            return spec;
        }

        auto interval_agent(const Direction & d) -> AgentSpec
        {
            AgentSpec spec;
            spec.label = "lin2_interval";
            spec.rules.push_back(Rule{both_free(d.target, d.source), {{EventKind::Bound, d.source}}, true,
                [d](Runtime & rt, const Event &) { return narrow_interval(rt.store(), d); }});
            spec.rules.push_back(Rule{{}, {}, false, {}});
            return spec;
        }

        auto arc_agent(const Direction & d) -> AgentSpec
        {
            AgentSpec spec;
            spec.label = "lin2_arc";
            spec.rules.push_back(Rule{both_free(d.target, d.source), {{EventKind::Dom, d.source}}, false,
                [d](Runtime & rt, const Event & e) { return exclude_counterpart(rt.store(), d, e.value); }});
            spec.rules.push_back(Rule{{}, {}, false, {}});
            return spec;
        }

        // Dom events only report removals that happen after posting; values
        // that were unsupported from the start are swept once here.
        auto revise_agent(const BinaryLinear & bc) -> AgentSpec
        {
            auto fwd = forward_of(bc), bwd = backward_of(bc);
            AgentSpec spec;
            spec.label = "lin2_revise";
            spec.rules.push_back(Rule{{}, {}, false, [fwd, bwd](Runtime & rt, const Event &) {
                                          auto & s = rt.store();
                                          if (s.is_bound(fwd.target) || s.is_bound(fwd.source))
                                              return Status::Ok;
                                          if (failed(revise(s, fwd)))
                                              return Status::Failed;
                                          return revise(s, bwd);
                                      }});
            return spec;
        }

        auto spawn_all(Runtime & rt, std::vector<AgentSpec> specs) -> Status
        {
            for (auto & spec : specs)
                if (failed(rt.spawn(std::move(spec)).status))
                    return Status::Failed;
            return Status::Ok;
        }
    }

    auto post_binary(Runtime & rt, const BinaryLinear & bc, ConsistencyLevel level) -> Status
    {
        if (bc.a <= 0 || bc.b == 0)
            throw std::invalid_argument("binary linear constraint needs a > 0 and b != 0");
        if (level == ConsistencyLevel::Hybrid)
            throw std::invalid_argument("hybrid consistency applies to n-ary constraints only");
        auto & s = rt.store();
        check_capacity(s, bc);

        if (bc.x == bc.y) {
            // (a - b) * x = c
            auto k = bc.a - bc.b;
            if (k == 0)
                return bc.c == 0 ? Status::Ok : Status::Failed;
            if (bc.c % k != 0)
                return Status::Failed;
            return s.bind(bc.x, bc.c / k);
        }

        std::vector<AgentSpec> specs;
        specs.push_back(forward_agent(bc));
        if (level != ConsistencyLevel::ForwardChecking) {
            specs.push_back(interval_agent(forward_of(bc)));
            specs.push_back(interval_agent(backward_of(bc)));
        }
        if (level == ConsistencyLevel::Arc) {
            specs.push_back(arc_agent(forward_of(bc)));
            specs.push_back(arc_agent(backward_of(bc)));
            specs.push_back(revise_agent(bc));
        }
        return spawn_all(rt, std::move(specs));
    }

    auto post_diseq(Runtime & rt, VarId x, VarId y, Value c) -> Status
    {
        if (x == y)
            return c == 0 ? Status::Failed : Status::Ok;

        AgentSpec spec;
        spec.label = "diseq";
        spec.rules.push_back(Rule{both_free(x, y), {{EventKind::Ins, x}, {EventKind::Ins, y}}, false, {}});
        spec.rules.push_back(Rule{is_free_guard(x), {}, false,
            [x, y, c](Runtime & rt, const Event &) { return rt.store().exclude(x, rt.store().value(y) + c); }});
        spec.rules.push_back(Rule{{}, {}, false,
            [x, y, c](Runtime & rt, const Event &) { return rt.store().exclude(y, rt.store().value(x) - c); }});
        return rt.spawn(std::move(spec)).status;
    }

    namespace
    {
        auto sum_watches(const NaryLinear & nc, bool with_bounds) -> std::vector<Watch>
        {
            std::vector<Watch> w;
            for (const auto & t : nc.terms) {
                w.push_back({EventKind::Ins, t.var});
                if (with_bounds)
                    w.push_back({EventKind::Bound, t.var});
            }
            return w;
        }

        // Folds bound terms into the constant and hands what is left (at most
        // two free terms) to the matching propagator.
        auto collapse(Runtime & rt, const NaryLinear & nc) -> Status
        {
            auto & s = rt.store();
            Value c = nc.c;
            std::vector<LinearTerm> free_terms;
            for (const auto & t : nc.terms) {
                if (s.is_bound(t.var))
                    c += t.coeff * s.value(t.var);
                else
                    free_terms.push_back(t);
            }

            switch (free_terms.size()) {
            case 0:
                return c == 0 ? Status::Ok : Status::Failed;
            case 1: {
                auto [a, x] = free_terms[0];
                if (c % a != 0)
                    return Status::Failed;
                return s.bind(x, -c / a);
            }
            case 2: {
                // a1*x1 + a2*x2 + c = 0  ->  |a1|*x1 = -sign(a1)*a2*x2 - sign(a1)*c
                auto [a1, x1] = free_terms[0];
                auto [a2, x2] = free_terms[1];
                Value sign = a1 < 0 ? -1 : 1;
                return post_binary(rt, BinaryLinear{sign * a1, x1, -sign * a2, x2, -sign * c}, ConsistencyLevel::Arc);
            }
            default:
                throw std::logic_error("collapse called with more than two free terms");
            }
        }

        auto prepare(Runtime & rt, const NaryLinear & raw) -> std::shared_ptr<const NaryLinear>
        {
            auto nc = std::make_shared<NaryLinear>(normalize(raw));
            check_capacity(rt.store(), *nc);
            return nc;
        }
    }

    auto post_nary_unite(Runtime & rt, const NaryLinear & raw) -> Status
    {
        auto nc = prepare(rt, raw);
        if (nc->terms.empty())
            return nc->c == 0 ? Status::Ok : Status::Failed;

        AgentSpec spec;
        spec.label = "lin_unite";
        spec.rules.push_back(Rule{{}, sum_watches(*nc, true), true,
            [nc](Runtime & rt, const Event &) { return reduce_linear(rt.store(), *nc); }});
        return rt.spawn(std::move(spec)).status;
    }

    auto post_nary_hybrid(Runtime & rt, const NaryLinear & raw) -> Status
    {
        auto nc = prepare(rt, raw);
        if (nc->terms.empty())
            return nc->c == 0 ? Status::Ok : Status::Failed;

        AgentSpec spec;
        spec.label = "lin_hybrid";
        spec.rules.push_back(Rule{[nc](const Store & s) { return count_free(s, *nc) > 2; }, sum_watches(*nc, true), true,
            [nc](Runtime & rt, const Event &) { return reduce_linear(rt.store(), *nc); }});
        spec.rules.push_back(Rule{{}, {}, false, [nc](Runtime & rt, const Event &) { return collapse(rt, *nc); }});
        return rt.spawn(std::move(spec)).status;
    }

    auto post_nary_forward(Runtime & rt, const NaryLinear & raw) -> Status
    {
        auto nc = prepare(rt, raw);
        if (nc->terms.empty())
            return nc->c == 0 ? Status::Ok : Status::Failed;

        AgentSpec spec;
        spec.label = "lin_forward";
        spec.rules.push_back(Rule{[nc](const Store & s) { return count_free(s, *nc) > 1; }, sum_watches(*nc, false), false, {}});
        spec.rules.push_back(Rule{{}, {}, false, [nc](Runtime & rt, const Event &) { return collapse(rt, *nc); }});
        return rt.spawn(std::move(spec)).status;
    }

    auto post_linear(Runtime & rt, const NaryLinear & nc, ConsistencyLevel level) -> Status
    {
        switch (level) {
        case ConsistencyLevel::ForwardChecking: return post_nary_forward(rt, nc);
        case ConsistencyLevel::Interval: return post_nary_unite(rt, nc);
        case ConsistencyLevel::Arc:
        case ConsistencyLevel::Hybrid: return post_nary_hybrid(rt, nc);
        }
        return Status::Ok;
    }
}
