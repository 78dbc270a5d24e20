#include <actfd/benchmarks.hpp>
#include <actfd/model_io.hpp>
#include <actfd/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

using namespace actfd;

namespace
{
    constexpr int exit_parse_error = 2;
    constexpr int exit_unsat = 3;
    constexpr int exit_invariant = 4;

    struct SolveArgs
    {
        std::string input;
        std::string level = "ac";
        std::string alldistinct = "linear";
        bool all = false;
        bool trace = false;
        bool no_coalesce = false;
        bool first_fail = false;
        bool expect_sat = false;
        std::string stats_json;
    };

    auto load(const std::string & input) -> Model
    {
        if (input.starts_with("bench:"))
            return generate_benchmark(input.substr(6));
        return load_model_file(input).model;
    }

    auto make_config(const SolveArgs & a) -> SolverConfig
    {
        SolverConfig c;
        c.level = *parse_solver_level(a.level);
        c.alldistinct = *parse_alldistinct_strategy(a.alldistinct);
        c.mode = a.all ? SearchMode::AllSolutions : SearchMode::FirstSolution;
        c.order = a.first_fail ? VarOrder::FirstFail : VarOrder::LeftToRight;
        c.coalesce = ! a.no_coalesce;
        c.trace = a.trace ? &std::cerr : nullptr;
        return c;
    }

    auto print_solution(const Model & m, const std::vector<Value> & row) -> void
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            std::cout << (i ? " " : "") << m.vars[i].name << '=' << row[i];
        std::cout << '\n';
    }

    auto run_solve(const SolveArgs & a) -> int
    {
        auto m = load(a.input);
        auto out = solve(m, make_config(a));
        for (const auto & row : out.result.solutions)
            print_solution(m, to_declaration_order(row, out.order));

        const auto & st = out.result.stats;
        std::cout << "stats: backtracks=" << st.backtracks << " activations=" << st.activations
                  << " solutions=" << st.solutions << " time_ms=" << std::fixed << std::setprecision(3)
                  << out.time_ms << '\n';
        if (! a.stats_json.empty()) {
            nlohmann::json j = {{"backtracks", st.backtracks}, {"activations", st.activations},
                {"solutions", st.solutions}, {"time_ms", out.time_ms}};
            std::ofstream(a.stats_json) << j.dump(2) << '\n';
        }
        if (a.expect_sat && st.solutions == 0)
            return exit_unsat;
        return 0;
    }

    auto run_verify(const std::string & input) -> int
    {
        auto m = load(input);
        auto expected = enumerate_solutions(ground(m));
        std::cout << "oracle: " << expected.size() << " solutions\n";

        bool agree = true, fixpoints = true;
        for (auto [level, ad] : all_configurations()) {
            SolverConfig c;
            c.level = level;
            c.alldistinct = ad;
            auto got = solver_solutions(m, c);
            bool same = got == expected;
            agree = agree && same;

            std::string fix = "root failed";
            if (auto doms = root_domains(m, c)) {
                auto rep = check_fixpoint(m, c, *doms);
                fix = rep.ok() ? "ok (" + std::to_string(rep.checked) + " checks)"
                               : std::to_string(rep.violations.size()) + " violations";
                fixpoints = fixpoints && rep.ok();
                for (const auto & v : rep.violations)
                    std::cout << "  " << v << '\n';
            }
            std::cout << to_string(level) << '/' << to_string(ad) << ": solutions=" << got.size()
                      << (same ? " match" : " MISMATCH") << " fixpoint " << fix << '\n';
        }
        std::cout << "solutions agree: " << (agree ? "yes" : "no") << '\n';
        std::cout << "fixpoints consistent: " << (fixpoints ? "yes" : "no") << '\n';
        return agree && fixpoints ? 0 : 1;
    }

    auto run_bench() -> int
    {
        auto corpus = benchmark_corpus();
        struct Row
        {
            SolveOutcome ac, ic;
        };
        std::vector<Row> rows(corpus.size());
        const auto n = static_cast<std::int64_t>(corpus.size());

#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < n; ++i) {
            auto m = generate_benchmark(corpus[i].name);
            SolverConfig c;
            rows[i].ac = solve(m, c);
            c.level = SolverLevel::IC;
            rows[i].ic = solve(m, c);
        }

        std::cout << std::left << std::setw(12) << "name" << std::right << std::setw(10) << "bt(ac)" << std::setw(8)
                  << "ref" << std::setw(10) << "bt(ic)" << std::setw(8) << "ref" << std::setw(11) << "solutions"
                  << std::setw(12) << "ms(ac)" << std::setw(12) << "ms(ic)" << '\n';
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const auto & e = corpus[i];
            const auto & r = rows[i];
            std::cout << std::left << std::setw(12) << e.name << std::right << std::setw(10)
                      << r.ac.result.stats.backtracks << std::setw(8) << e.reference_ac << std::setw(10)
                      << r.ic.result.stats.backtracks << std::setw(8) << e.reference_ic << std::setw(11)
                      << r.ac.result.stats.solutions << std::setw(12) << std::fixed << std::setprecision(1)
                      << r.ac.time_ms << std::setw(12) << r.ic.time_ms << (e.exact_instance ? "" : "  *") << '\n';
        }
        std::cout << "* shipped formulation may differ from the reference instance\n";
        return 0;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Finite-domain constraint solver built on event-driven propagation agents"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto * solve_cmd = app.add_subcommand("solve", "Solve a model file or bench:<name>");
    solve_cmd->add_option("input", sa.input, "Model file, or bench:queens(n), bench:sendmoney, ...")->required();
    solve_cmd->add_option("--level", sa.level, "Consistency level")->check(CLI::IsMember({"fc", "ic", "ac"}));
    solve_cmd->add_option("--alldistinct", sa.alldistinct, "all_distinct propagator")
        ->check(CLI::IsMember({"naive", "linear", "wac"}));
    solve_cmd->add_flag("--all", sa.all, "Enumerate all solutions");
    solve_cmd->add_flag("--trace", sa.trace, "Write agent activations to stderr");
    solve_cmd->add_flag("--no-coalesce", sa.no_coalesce, "Deliver every event separately");
    solve_cmd->add_flag("--first-fail", sa.first_fail, "Label smallest domain first");
    solve_cmd->add_flag("--expect-sat", sa.expect_sat, "Exit with 3 when there is no solution");
    solve_cmd->add_option("--stats-json", sa.stats_json, "Write statistics as JSON");

    std::string verify_input;
    auto * verify_cmd = app.add_subcommand("verify", "Compare every configuration with brute-force enumeration");
    verify_cmd->add_option("input", verify_input, "Model file or bench:<name>")->required();

    auto * bench_cmd = app.add_subcommand("bench", "Run the benchmark corpus at ac and ic");

    std::string print_input;
    auto * print_cmd = app.add_subcommand("print", "Print a model in file syntax");
    print_cmd->add_option("input", print_input, "Model file or bench:<name>")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd)
            return run_solve(sa);
        if (*verify_cmd)
            return run_verify(verify_input);
        if (*bench_cmd)
            return run_bench();
        if (*print_cmd) {
            print_model(std::cout, load(print_input));
            return 0;
        }
    }
    catch (const ParseError & e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse_error;
    }
    catch (const UnknownBenchmark & e) {
        std::cerr << e.what() << '\n';
        return exit_parse_error;
    }
    catch (const InvariantViolation & e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return exit_invariant;
    }
    catch (const OracleRefusal & e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
