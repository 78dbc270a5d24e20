#include "../support/properties.hpp"

#include <actfd/benchmarks.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>

using namespace actfd;

namespace
{
    struct Verdict
    {
        bool pass = false;
        std::string detail;
    };

    constexpr std::uint64_t random_seed = 20020101;

    auto elapsed_ms(std::chrono::steady_clock::time_point since) -> double
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
    }

    auto first_solution(const SolveOutcome & out) -> std::optional<Assignment>
    {
        if (out.result.solutions.empty())
            return std::nullopt;
        return to_declaration_order(out.result.solutions.front(), out.order);
    }

    auto queens() -> Verdict
    {
        SolverConfig c;
        c.level = SolverLevel::IC;
        auto out = solve(queens_model(25), c);
        auto bt = out.result.stats.backtracks;

        auto q8 = queens_model(8);
        SolverConfig all;
        all.level = SolverLevel::IC;
        auto q8_solutions = solver_solutions(q8, all);
        bool q8_ok = q8_solutions.size() == 92 && q8_solutions == enumerate_solutions(ground(q8));

        std::ostringstream d;
        d << "queens(25) ic backtracks=" << bt << " (expected 7255) time_ms=" << out.time_ms
          << "; queens(8) all solutions=" << q8_solutions.size() << (q8_ok ? " oracle ok" : " oracle MISMATCH");
        return {bt == 7255 && out.time_ms < 5000 && out.result.stats.solutions == 1 && q8_ok, d.str()};
    }

    auto sendmoney() -> Verdict
    {
        auto m = generate_benchmark("sendmoney");
        auto out = solve(m, SolverConfig{});
        auto oracle = enumerate_solutions(ground(m));
        auto sol = first_solution(out);
        bool match = oracle.size() == 1 && sol && *sol == oracle.front();
        auto bt = out.result.stats.backtracks;

        std::ostringstream d;
        d << "ac backtracks=" << bt << " (expected 2) time_ms=" << out.time_ms << "; solution "
          << (match ? "matches oracle" : "does NOT match oracle");
        return {bt == 2 && match && out.time_ms < 1000, d.str()};
    }

    auto zebra() -> Verdict
    {
        auto m = generate_benchmark("zebra");
        auto out = solve(m, SolverConfig{});
        auto oracle = enumerate_solutions(ground(m));
        auto sol = first_solution(out);
        bool match = sol && std::find(oracle.begin(), oracle.end(), *sol) != oracle.end() && oracle.size() == 1;
        auto bt = out.result.stats.backtracks;

        std::ostringstream d;
        d << "solution " << (match ? "matches" : "does NOT match") << " oracle (" << oracle.size()
          << " solutions); ac backtracks=" << bt << " (reference 2, best effort: "
          << (bt == 2 ? "met" : "not met") << ")";
        return {match, d.str()};
    }

    auto weak_ac() -> Verdict
    {
        auto query = [](Value z_hi) {
            Model m;
            AllDistinct a;
            a.vars.push_back(m.add_var("X", make_interval(1, 2)));
            a.vars.push_back(m.add_var("Y", make_interval(1, 2)));
            a.vars.push_back(m.add_var("Z", make_interval(1, z_hi)));
            m.constraints.push_back(a);
            m.label = a.vars;
            return m;
        };
        SolverConfig c;
        c.alldistinct = AllDistinctStrategy::WeakAC;

        auto q1 = query(2);
        bool root_failed = ! root_domains(q1, c).has_value();
        auto s1 = solve(q1, c);
        bool q1_ok = root_failed && s1.result.stats.backtracks == 0 && s1.result.stats.solutions == 0;

        auto q2 = query(3);
        auto d2 = root_domains(q2, c);
        bool q2_ok = d2 && (*d2)[2] == make_interval(3, 3) && (*d2)[0] == make_interval(1, 2)
            && (*d2)[1] == make_interval(1, 2);

        std::ostringstream d;
        d << "query 1 " << (q1_ok ? "fails at root with 0 backtracks" : "did NOT fail at root")
          << "; query 2 " << (q2_ok ? "binds Z=3 at root" : "did NOT bind Z=3 at root");
        return {q1_ok && q2_ok, d.str()};
    }

    auto ac_vs_ic() -> Verdict
    {
        bool ok = true;
        std::ostringstream d;
        for (const auto * name : {"chain4", "chain6", "chain8", "chain12"}) {
            auto m = generate_benchmark(name);
            SolverConfig c;
            c.mode = SearchMode::AllSolutions;
            auto ac = solve(m, c).result.stats;
            c.level = SolverLevel::IC;
            auto ic = solve(m, c).result.stats;
            ok = ok && ac.backtracks < ic.backtracks && ac.solutions == ic.solutions;
            d << name << " ac=" << ac.backtracks << " ic=" << ic.backtracks << "; ";
        }

        auto alpha = generate_benchmark("alpha");
        SolverConfig c;
        auto ac = solve(alpha, c).result.stats.backtracks;
        c.level = SolverLevel::IC;
        auto ic = solve(alpha, c).result.stats.backtracks;
        d << "alpha ac=" << ac << " ic=" << ic << " (reference 4605/8440, best effort: "
          << (ac == 4605 && ic == 8440 ? "met" : "not met") << ")";
        return {ok, d.str()};
    }

    auto summarize(const testing::SuiteResult & r, const std::string & what, double ms) -> std::string
    {
        std::ostringstream d;
        d << r.runs << ' ' << what << ", " << r.checks << " checks, "
          << r.failures.size() << " failures, time_ms=" << ms;
        for (const auto & f : r.failures)
            if (! f.empty())
                d << "\n    " << f;
        return d.str();
    }

    auto oracle_suite() -> Verdict
    {
        auto t0 = std::chrono::steady_clock::now();
        auto r = testing::oracle_equivalence(random_seed, 500);
        auto ms = elapsed_ms(t0);
        return {r.ok() && ms < 60000, summarize(r, "models x 9 configurations", ms)};
    }

    auto fixpoint_suite() -> Verdict
    {
        auto t0 = std::chrono::steady_clock::now();
        auto r = testing::fixpoint_definitions(random_seed, 500);
        return {r.ok(), summarize(r, "models x 9 configurations", elapsed_ms(t0))};
    }

    auto runtime_suite() -> Verdict
    {
        auto t0 = std::chrono::steady_clock::now();
        auto r = testing::runtime_semantics(random_seed, 1000);
        return {r.ok(), summarize(r, "runs of erasure, coalescing, multi-dom, trail and scheduling properties",
                            elapsed_ms(t0))};
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Acceptance criteria"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "Run only these criteria (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    const std::map<int, Verdict (*)()> criteria{
        {1, queens},
        {2, sendmoney},
        {3, zebra},
        {4, weak_ac},
        {5, ac_vs_ic},
        {6, oracle_suite},
        {7, fixpoint_suite},
        {8, runtime_suite},
    };
    if (selected.empty())
        for (const auto & [n, f] : criteria)
            selected.push_back(n);

    int failures = 0;
    for (int n : selected) {
        auto v = criteria.at(n)();
        failures += v.pass ? 0 : 1;
        std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
