#ifndef ACTFD_BENCHMARKS_HPP
#define ACTFD_BENCHMARKS_HPP

#include <actfd/model.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace actfd
{
    class UnknownBenchmark : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // n variables in 1..n; for every pair i < j with N = j - i:
    // Qi != Qj, Qi != Qj + N, Qi != Qj - N.
    [[nodiscard]] auto queens_model(int n) -> Model;

    // 1..n*n distinct; rows, columns and both diagonals sum to n(n*n+1)/2.
    [[nodiscard]] auto magic_model(int n) -> Model;

    // X1..Xn over 0..29, about a sixth of the values missing, linked by
    // X(i+1) = Xi + c with |c| <= 3. Deterministic in n; always satisfiable.
    [[nodiscard]] auto chain_model(int n) -> Model;

    // Source text of a model shipped with the library (sendmoney, alpha,
    // eq10, eq20, zebra, magic3, magic4, chain4, chain6, chain8, chain12).
    [[nodiscard]] auto shipped_model_text(std::string_view name) -> std::string_view;
    [[nodiscard]] auto shipped_model_names() -> std::vector<std::string>;

    // queens(n), magic(n), chain(n), or the name of a shipped model.
    [[nodiscard]] auto generate_benchmark(std::string_view name) -> Model;

    struct CorpusEntry
    {
        std::string name;
        // Published backtrack counts at ac and ic; negative when unknown.
        long reference_ac = -1;
        long reference_ic = -1;
        // False when the shipped formulation may differ from the one the
        // reference counts were measured on.
        bool exact_instance = true;
    };

    [[nodiscard]] auto benchmark_corpus() -> std::vector<CorpusEntry>;
}

#endif
