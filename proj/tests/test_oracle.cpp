#include <actfd/oracle.hpp>

#include "support/random_models.hpp"

#include <doctest.h>

using namespace actfd;

namespace
{
    auto two_var_model(FiniteDomain dx, FiniteDomain dy) -> std::pair<Model, std::pair<VarId, VarId>>
    {
        Model m;
        auto x = m.add_var("X", std::move(dx));
        auto y = m.add_var("Y", std::move(dy));
        return {m, {x, y}};
    }
}

TEST_CASE("enumerate_solutions")
{
    {
        auto [m, v] = two_var_model(make_interval(1, 2), make_interval(1, 2));
        m.constraints.push_back(Disequality{v.first, v.second, 0});
        CHECK(enumerate_solutions(ground(m)) == std::vector<Assignment>{{1, 2}, {2, 1}});
    }
    {
        Model m;
        AllDistinct a;
        for (auto n : {"X", "Y", "Z"})
            a.vars.push_back(m.add_var(n, make_set({1, 2})));
        m.constraints.push_back(a);
        CHECK(enumerate_solutions(ground(m)).empty());
    }
    {
        auto [m, v] = two_var_model(make_interval(1, 3), make_interval(1, 3));
        m.constraints.push_back(BinaryLinear{1, v.first, 1, v.second, 1});
        CHECK(enumerate_solutions(ground(m)) == std::vector<Assignment>{{2, 1}, {3, 2}});
    }
    {
        Model m;
        for (int i = 0; i < 8; ++i)
            m.add_var("v" + std::to_string(i), make_interval(0, 9));
        CHECK_THROWS_AS((void)enumerate_solutions(ground(m), 1000), OracleRefusal);
        CHECK_THROWS_AS((void)enumerate_solutions_parallel(ground(m), 1000), OracleRefusal);
    }
}

TEST_CASE("parallel enumeration matches the serial reference")
{
    std::mt19937_64 rng(41);
    for (int run = 0; run < 300; ++run) {
        auto m = testing::random_model(rng);
        auto g = ground(m);
        auto serial = enumerate_solutions(g);
        CHECK(enumerate_solutions_parallel(g) == serial);
        for (const auto & row : serial)
            CHECK(satisfies(m, row));
    }
}

TEST_CASE("check_interval_consistent")
{
    VarId x{0}, y{1};
    BinaryLinear c{1, x, 1, y, 1};
    std::vector<FiniteDomain> a{make_interval(2, 5), make_interval(1, 4)};
    CHECK(check_interval_consistent(c, a));
    std::vector<FiniteDomain> b{make_interval(1, 5), make_interval(1, 5)};
    CHECK_FALSE(check_interval_consistent(c, b));
    std::vector<FiniteDomain> bound{make_interval(3, 3), make_interval(2, 2)};
    CHECK(check_interval_consistent(c, bound));
}

TEST_CASE("closed form agrees with enumeration of extremes")
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<Value> lo_d(-3, 3), w(0, 3), co(-3, 3), cd(-6, 6);
    for (int run = 0; run < 2000; ++run) {
        NaryLinear nc{cd(rng), {}};
        std::vector<FiniteDomain> doms;
        for (std::uint32_t i = 0; i < 3; ++i) {
            auto lo = lo_d(rng);
            doms.push_back(make_interval(lo, lo + w(rng)));
            Value a = 0;
            while (a == 0)
                a = co(rng);
            nc.terms.push_back({a, VarId{i}});
        }
        // Definition: for each i, every value of D_i lies within the rational
        // range of g_i over the other domains.
        bool expected = true;
        for (std::size_t i = 0; i < 3; ++i) {
            Value gmin = 0, gmax = 0;
            bool first = true;
            // -(c + sum_{j != i} a_j x_j), scaled by a_i afterwards
            for (auto p : doms[(i + 1) % 3].values())
                for (auto q : doms[(i + 2) % 3].values()) {
                    Value r = -(nc.c + nc.terms[(i + 1) % 3].coeff * p + nc.terms[(i + 2) % 3].coeff * q);
                    gmin = first ? r : std::min(gmin, r);
                    gmax = first ? r : std::max(gmax, r);
                    first = false;
                }
            for (auto v : {doms[i].min(), doms[i].max()}) {
                Value av = nc.terms[i].coeff * v;
                expected = expected && av >= gmin && av <= gmax;
            }
        }
        CHECK(check_interval_consistent(nc, doms) == expected);
    }
}

TEST_CASE("check_arc_consistent")
{
    auto p = [](Value x, Value y) { return x == y + 1; };
    CHECK_FALSE(check_arc_consistent(p, make_set({2, 4, 5}), make_interval(1, 4)));
    CHECK(check_arc_consistent(p, make_set({2, 4, 5}), make_set({1, 3, 4})));
    CHECK_FALSE(check_arc_consistent([](Value, Value) { return false; }, make_interval(1, 2), make_interval(1, 2)));
}

TEST_CASE("arc consistency implies support in a solution")
{
    std::mt19937_64 rng(47);
    for (int run = 0; run < 500; ++run) {
        Model m;
        auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
        std::vector<VarId> v;
        for (int i = 0; i < 2; ++i) {
            std::vector<Value> vals;
            for (Value x = 0; x < 6; ++x)
                if (pick(0, 2))
                    vals.push_back(x);
            if (vals.empty())
                vals.push_back(0);
            v.push_back(m.add_var("v" + std::to_string(i), make_set(vals)));
        }
        BinaryLinear c{pick(1, 2), v[0], pick(1, 2), v[1], pick(-3, 3)};
        m.constraints.push_back(c);
        std::vector<FiniteDomain> doms{m.vars[0].domain, m.vars[1].domain};
        if (! check_arc_consistent(c, doms))
            continue;
        auto sols = enumerate_solutions(ground(m));
        for (int i = 0; i < 2; ++i)
            m.vars[i].domain.for_each([&](Value x) {
                CHECK(std::any_of(sols.begin(), sols.end(), [&](const Assignment & a) { return a[i] == x; }));
            });
    }
}

TEST_CASE("check_weak_arc_consistent")
{
    auto d = make_set({1, 2});
    CHECK_FALSE(check_weak_arc_consistent(std::vector<FiniteDomain>{d, d, d}));
    CHECK(check_weak_arc_consistent(std::vector<FiniteDomain>{d, d, make_interval(3, 3)}));
    CHECK(check_weak_arc_consistent(std::vector<FiniteDomain>{make_interval(5, 5)}));
}
