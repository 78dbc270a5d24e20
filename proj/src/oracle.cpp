#include <actfd/oracle.hpp>

#include <algorithm>
#include <atomic>
#include <optional>

namespace actfd
{
    namespace
    {
        using Wide = __int128;

        auto linear_value(const NaryLinear & c, const Assignment & a) -> Wide
        {
            Wide sum = c.c;
            for (const auto & t : c.terms)
                sum += Wide(t.coeff) * a[t.var.index];
            return sum;
        }

        auto scope_of(const NaryLinear & c) -> std::vector<std::uint32_t>
        {
            std::vector<std::uint32_t> s;
            for (const auto & t : c.terms)
                s.push_back(t.var.index);
            return s;
        }

        // Constraints grouped by the depth at which their scope completes.
        struct Schedule
        {
            std::vector<const GroundConstraint *> constant;
            std::vector<std::vector<const GroundConstraint *>> at;

            explicit Schedule(const GroundModel & g) :
                at(g.domains.size())
            {
                for (const auto & c : g.constraints) {
                    if (c.scope.empty())
                        constant.push_back(&c);
                    else
                        at[*std::max_element(c.scope.begin(), c.scope.end())].push_back(&c);
                }
            }
        };

        class Enumerator
        {
        public:
            Enumerator(const GroundModel & g, const Schedule & sched, std::atomic<std::uint64_t> & nodes,
                std::uint64_t cap) :
                g_(g),
                sched_(sched),
                nodes_(nodes),
                cap_(cap),
                current_(g.domains.size())
            {
            }

            // Returns false when the cap was hit.
            auto run(std::size_t depth) -> bool
            {
                if (depth == g_.domains.size()) {
                    found.push_back(current_);
                    return true;
                }
                for (auto v : g_.domains[depth]) {
                    if (! try_value(depth, v))
                        return false;
                }
                return true;
            }

            auto try_value(std::size_t depth, Value v) -> bool
            {
                if (nodes_.fetch_add(1, std::memory_order_relaxed) >= cap_)
                    return false;
                current_[depth] = v;
                for (const auto * c : sched_.at[depth])
                    if (! c->holds(current_))
                        return true;
                return run(depth + 1);
            }

            std::vector<Assignment> found;

        private:
            const GroundModel & g_;
            const Schedule & sched_;
            std::atomic<std::uint64_t> & nodes_;
            std::uint64_t cap_;
            Assignment current_;
        };

        auto constants_hold(const Schedule & sched) -> bool
        {
            Assignment empty;
            return std::all_of(sched.constant.begin(), sched.constant.end(),
                [&](const GroundConstraint * c) { return c->holds(empty); });
        }

        [[noreturn]] auto refuse(std::uint64_t cap) -> void
        {
            throw OracleRefusal("oracle refused: more than " + std::to_string(cap) + " search nodes");
        }
    }

    auto to_nary(const BinaryLinear & c) -> NaryLinear
    {
        return NaryLinear{-c.c, {{c.a, c.x}, {-c.b, c.y}}};
    }

    auto ground(const Model & m) -> GroundModel
    {
        GroundModel g;
        for (const auto & v : m.vars)
            g.domains.push_back(v.domain.values());

        for (const auto & c : m.constraints) {
            std::visit(
                [&](const auto & k) {
                    using K = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<K, NaryLinear>) {
                        g.constraints.push_back(
                            {scope_of(k), [k](const Assignment & a) { return linear_value(k, a) == 0; }});
                    }
                    else if constexpr (std::is_same_v<K, BinaryLinear>) {
                        auto n = to_nary(k);
                        g.constraints.push_back(
                            {scope_of(n), [n](const Assignment & a) { return linear_value(n, a) == 0; }});
                    }
                    else if constexpr (std::is_same_v<K, Disequality>) {
                        g.constraints.push_back({{k.x.index, k.y.index}, [k](const Assignment & a) {
                                                     return Wide(a[k.x.index]) != Wide(a[k.y.index]) + k.c;
                                                 }});
                    }
                    else {
                        // Pairwise, so partial assignments are rejected early.
                        for (std::size_t i = 0; i < k.vars.size(); ++i)
                            for (std::size_t j = i + 1; j < k.vars.size(); ++j) {
                                auto x = k.vars[i].index, y = k.vars[j].index;
                                g.constraints.push_back(
                                    {{x, y}, [x, y](const Assignment & a) { return a[x] != a[y]; }});
                            }
                    }
                },
                c);
        }
        return g;
    }

    auto satisfies(const Model & m, const Assignment & a) -> bool
    {
        if (a.size() != m.vars.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (! m.vars[i].domain.contains(a[i]))
                return false;
        for (const auto & c : m.constraints) {
            bool ok = std::visit(
                [&](const auto & k) -> bool {
                    using K = std::decay_t<decltype(k)>;
                    if constexpr (std::is_same_v<K, NaryLinear>)
                        return linear_value(k, a) == 0;
                    else if constexpr (std::is_same_v<K, BinaryLinear>)
                        return Wide(k.a) * a[k.x.index] == Wide(k.b) * a[k.y.index] + k.c;
                    else if constexpr (std::is_same_v<K, Disequality>)
                        return Wide(a[k.x.index]) != Wide(a[k.y.index]) + k.c;
                    else {
                        std::vector<Value> vals;
                        for (auto v : k.vars)
                            vals.push_back(a[v.index]);
                        std::sort(vals.begin(), vals.end());
                        return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
                    }
                },
                c);
            if (! ok)
                return false;
        }
        return true;
    }

    auto enumerate_solutions(const GroundModel & g, std::uint64_t cap) -> std::vector<Assignment>
    {
        Schedule sched(g);
        if (! constants_hold(sched))
            return {};
        std::atomic<std::uint64_t> nodes{0};
        Enumerator e(g, sched, nodes, cap);
        if (! e.run(0))
            refuse(cap);
        std::sort(e.found.begin(), e.found.end());
        return std::move(e.found);
    }

    auto enumerate_solutions_parallel(const GroundModel & g, std::uint64_t cap) -> std::vector<Assignment>
    {
        if (g.domains.empty())
            return enumerate_solutions(g, cap);
        Schedule sched(g);
        if (! constants_hold(sched))
            return {};

        std::atomic<std::uint64_t> nodes{0};
        std::atomic<bool> exceeded{false};
        const auto & first = g.domains[0];
        std::vector<std::vector<Assignment>> parts(first.size());
        const auto n = static_cast<std::int64_t>(first.size());

#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < n; ++i) {
            if (exceeded.load(std::memory_order_relaxed))
                continue;
            Enumerator e(g, sched, nodes, cap);
            if (! e.try_value(0, first[i]))
                exceeded = true;
            parts[i] = std::move(e.found);
        }
        if (exceeded)
            refuse(cap);

        // Rows from lower first values sort first; each part is already
        // ascending, so concatenation is the sorted set.
        std::vector<Assignment> out;
        for (auto & p : parts)
            for (auto & r : p)
                out.push_back(std::move(r));
        return out;
    }

    auto check_interval_consistent(const NaryLinear & raw, std::span<const FiniteDomain> domains) -> bool
    {
        auto c = normalize(raw);
        // term extremes
        std::vector<Wide> lo(c.terms.size()), hi(c.terms.size());
        Wide sum_lo = c.c, sum_hi = c.c;
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            const auto & d = domains[c.terms[i].var.index];
            Wide a = c.terms[i].coeff;
            lo[i] = std::min(a * d.min(), a * d.max());
            hi[i] = std::max(a * d.min(), a * d.max());
            sum_lo += lo[i];
            sum_hi += hi[i];
        }
        if (c.terms.empty())
            return c.c == 0;
        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            // a_i * x_i = -(rest), rest in [rest_lo, rest_hi]
            Wide rest_lo = sum_lo - lo[i], rest_hi = sum_hi - hi[i];
            Wide a = c.terms[i].coeff;
            const auto & d = domains[c.terms[i].var.index];
            for (Wide v : {Wide(d.min()), Wide(d.max())}) {
                Wide p = a * v;
                if (p < -rest_hi || p > -rest_lo)
                    return false;
            }
        }
        return true;
    }

    auto check_interval_consistent(const BinaryLinear & c, std::span<const FiniteDomain> domains) -> bool
    {
        if (c.x == c.y) {
            // Single variable: every value must satisfy the equation.
            bool ok = true;
            domains[c.x.index].for_each([&](Value v) { ok = ok && Wide(c.a) * v == Wide(c.b) * v + c.c; });
            return ok;
        }
        return check_interval_consistent(to_nary(c), domains);
    }

    auto check_arc_consistent(const std::function<bool(Value, Value)> & p, const FiniteDomain & dx,
        const FiniteDomain & dy) -> bool
    {
        auto xs = dx.values(), ys = dy.values();
        for (auto x : xs)
            if (std::none_of(ys.begin(), ys.end(), [&](Value y) { return p(x, y); }))
                return false;
        for (auto y : ys)
            if (std::none_of(xs.begin(), xs.end(), [&](Value x) { return p(x, y); }))
                return false;
        return true;
    }

    auto check_arc_consistent(const BinaryLinear & c, std::span<const FiniteDomain> domains) -> bool
    {
        if (c.x == c.y)
            return check_interval_consistent(c, domains);
        return check_arc_consistent([&](Value x, Value y) { return Wide(c.a) * x == Wide(c.b) * y + c.c; },
            domains[c.x.index], domains[c.y.index]);
    }

    auto check_weak_arc_consistent(std::span<const FiniteDomain> list) -> bool
    {
        for (const auto & d : list) {
            Value subsets = 0;
            for (const auto & z : list) {
                bool sub = true;
                z.for_each([&](Value v) { sub = sub && d.contains(v); });
                subsets += sub ? 1 : 0;
            }
            if (subsets > d.size())
                return false;
        }
        return true;
    }
}
