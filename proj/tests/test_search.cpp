#include <actfd/benchmarks.hpp>
#include <actfd/verify.hpp>

#include "support/random_models.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace actfd;

namespace
{
    auto permutation_queens(int n) -> std::size_t
    {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::size_t count = 0;
        do {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = i + 1; j < n && ok; ++j)
                    ok = std::abs(p[i] - p[j]) != j - i;
            count += ok;
        } while (std::next_permutation(p.begin(), p.end()));
        return count;
    }
}

TEST_CASE("queens(8) finds every solution")
{
    SolverConfig c;
    c.level = SolverLevel::IC;
    c.mode = SearchMode::AllSolutions;
    auto out = solve(queens_model(8), c);
    CHECK(out.result.stats.solutions == permutation_queens(8));
    CHECK(out.result.stats.solutions == 92);
    // Every solution row is a valid placement.
    for (const auto & row : out.result.solutions)
        for (std::size_t i = 0; i < row.size(); ++i)
            for (std::size_t j = i + 1; j < row.size(); ++j) {
                CHECK(row[i] != row[j]);
                CHECK(std::abs(row[i] - row[j]) != Value(j - i));
            }
}

TEST_CASE("root failure counts no backtracks")
{
    Model m;
    auto d = make_set({1, 2});
    AllDistinct a;
    for (auto name : {"X", "Y", "Z"})
        a.vars.push_back(m.add_var(name, d));
    m.constraints.push_back(a);
    SolverConfig c;
    c.alldistinct = AllDistinctStrategy::WeakAC;
    auto out = solve(m, c);
    CHECK(out.result.stats.solutions == 0);
    CHECK(out.result.stats.backtracks == 0);
}

TEST_CASE("unconstrained singleton")
{
    Model m;
    m.add_var("X", make_interval(3, 3));
    auto out = solve(m, SolverConfig{});
    CHECK(out.result.stats.solutions == 1);
    CHECK(out.result.stats.backtracks == 0);
    REQUIRE(out.result.solutions.size() == 1);
    CHECK(out.result.solutions[0] == std::vector<Value>{3});
}

TEST_CASE("backtrack counter")
{
    // x in 1..3, y in 1..3, x = y + 2: labeling x tries 1, 2 (both fail
    // during propagation at fc) before 3.
    Model m;
    auto x = m.add_var("x", make_interval(1, 3));
    auto y = m.add_var("y", make_interval(1, 3));
    m.constraints.push_back(BinaryLinear{1, x, 1, y, 2});
    m.label = {x, y};
    SolverConfig c;
    c.level = SolverLevel::FC;
    CHECK(solve(m, c).result.stats.backtracks == 2);
    c.level = SolverLevel::IC;
    CHECK(solve(m, c).result.stats.backtracks == 0);

    // An exhausted subtree adds nothing on top of its own failures.
    Model u;
    auto a = u.add_var("a", make_interval(1, 2));
    auto b = u.add_var("b", make_interval(1, 2));
    auto e = u.add_var("c", make_interval(1, 2));
    u.constraints.push_back(Disequality{b, e, 0});
    u.constraints.push_back(Disequality{b, e, 1});
    u.constraints.push_back(Disequality{b, e, -1});
    u.label = {a, b, e};
    c.mode = SearchMode::AllSolutions;
    auto out = solve(u, c);
    CHECK(out.result.stats.solutions == 0);
    // a = 1: b = 1 and b = 2 both fail -> 2; same for a = 2.
    CHECK(out.result.stats.backtracks == 4);
}

TEST_CASE("first fail order")
{
    Model m;
    auto x = m.add_var("x", make_interval(1, 9));
    auto y = m.add_var("y", make_interval(1, 2));
    m.constraints.push_back(Disequality{x, y, 0});
    m.label = {x, y};
    SolverConfig c;
    c.order = VarOrder::FirstFail;
    c.mode = SearchMode::AllSolutions;
    auto out = solve(m, c);
    CHECK(out.result.stats.solutions == 16);
}

TEST_CASE("property: every configuration agrees with the oracle")
{
    std::mt19937_64 rng(23);
    for (int run = 0; run < 150; ++run) {
        auto m = testing::random_model(rng);
        auto expected = enumerate_solutions(ground(m));
        for (auto [level, ad] : all_configurations()) {
            SolverConfig c;
            c.level = level;
            c.alldistinct = ad;
            CHECK(solver_solutions(m, c) == expected);
        }
    }
}

TEST_CASE("property: stronger levels never explore more")
{
    std::mt19937_64 rng(29);
    for (int run = 0; run < 200; ++run) {
        auto m = testing::random_model(rng);
        std::uint64_t prev = ~0ull;
        for (auto level : {SolverLevel::FC, SolverLevel::IC, SolverLevel::AC}) {
            SolverConfig c;
            c.level = level;
            c.mode = SearchMode::AllSolutions;
            auto bt = solve(m, c).result.stats.backtracks;
            CHECK(bt <= prev);
            prev = bt;
        }
    }
    for (auto name : {"sendmoney", "zebra", "magic(3)", "eq20", "queens(8)"}) {
        auto m = generate_benchmark(name);
        std::uint64_t prev = ~0ull;
        for (auto level : {SolverLevel::FC, SolverLevel::IC, SolverLevel::AC}) {
            SolverConfig c;
            c.level = level;
            auto bt = solve(m, c).result.stats.backtracks;
            CHECK_MESSAGE(bt <= prev, name);
            prev = bt;
        }
    }
}
