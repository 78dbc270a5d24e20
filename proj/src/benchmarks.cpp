#include <actfd/benchmarks.hpp>
#include <actfd/model_io.hpp>

#include <actfd_embedded_models.hpp>

#include <algorithm>
#include <charconv>
#include <random>

namespace actfd
{
    namespace
    {
        // "name(n)" -> n
        auto parameter(std::string_view name, std::string_view prefix) -> std::optional<int>
        {
            if (! name.starts_with(prefix) || name.size() < prefix.size() + 3 || name[prefix.size()] != '('
                || name.back() != ')')
                return std::nullopt;
            auto digits = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
            int n = 0;
            auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
            if (ec != std::errc{} || p != digits.data() + digits.size() || n < 1)
                return std::nullopt;
            return n;
        }
    }

    auto queens_model(int n) -> Model
    {
        Model m;
        std::vector<VarId> q;
        for (int i = 1; i <= n; ++i)
            q.push_back(m.add_var("Q" + std::to_string(i), FiniteDomain::interval(1, n)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Value d = j - i;
                m.constraints.push_back(Disequality{q[i], q[j], 0});
                m.constraints.push_back(Disequality{q[i], q[j], d});
                m.constraints.push_back(Disequality{q[i], q[j], -d});
            }
        m.label = q;
        return m;
    }

    auto magic_model(int n) -> Model
    {
        Model m;
        const Value sum = Value(n) * (Value(n) * n + 1) / 2;
        auto cell = [n](int r, int c) {
            return n < 10 ? "M" + std::to_string(r + 1) + std::to_string(c + 1)
                          : "M" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
        };
        std::vector<std::vector<VarId>> g(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                g[r].push_back(m.add_var(cell(r, c), FiniteDomain::interval(1, Value(n) * n)));

        AllDistinct all;
        for (auto & row : g)
            all.vars.insert(all.vars.end(), row.begin(), row.end());
        m.constraints.push_back(all);

        auto line = [&](auto at) {
            NaryLinear nc{-sum, {}};
            for (int i = 0; i < n; ++i)
                nc.terms.push_back({1, at(i)});
            m.constraints.push_back(nc);
        };
        for (int r = 0; r < n; ++r)
            line([&](int i) { return g[r][i]; });
        for (int c = 0; c < n; ++c)
            line([&](int i) { return g[i][c]; });
        line([&](int i) { return g[i][i]; });
        line([&](int i) { return g[i][n - 1 - i]; });
        m.label = all.vars;
        return m;
    }

    auto chain_model(int n) -> Model
    {
        constexpr Value width = 30;
        // Raw engine output only, so the instance is the same on every platform.
        std::minstd_rand rng(7919u * static_cast<unsigned>(n) + 1);
        auto draw = [&rng](Value k) { return static_cast<Value>(rng() % static_cast<std::uint64_t>(k)); };

        std::vector<Value> witness{draw(width)};
        std::vector<Value> c;
        for (int i = 1; i < n; ++i) {
            Value w = std::clamp<Value>(witness.back() + draw(7) - 3, 0, width - 1);
            c.push_back(w - witness.back());
            witness.push_back(w);
        }

        Model m;
        std::vector<VarId> x;
        for (int i = 0; i < n; ++i) {
            std::vector<Value> keep;
            for (Value v = 0; v < width; ++v)
                if (v == witness[i] || draw(6) != 0)
                    keep.push_back(v);
            x.push_back(m.add_var("X" + std::to_string(i + 1), FiniteDomain::of_values(keep)));
        }
        for (int i = 0; i + 1 < n; ++i)
            m.constraints.push_back(BinaryLinear{1, x[i + 1], 1, x[i], c[i]});
        m.label = x;
        return m;
    }

    auto shipped_model_text(std::string_view name) -> std::string_view
    {
        for (const auto & [n, text] : embedded::models)
            if (n == name)
                return text;
        throw UnknownBenchmark("unknown benchmark: " + std::string(name));
    }

    auto shipped_model_names() -> std::vector<std::string>
    {
        std::vector<std::string> out;
        for (const auto & [n, text] : embedded::models)
            out.emplace_back(n);
        return out;
    }

    auto generate_benchmark(std::string_view name) -> Model
    {
        if (auto n = parameter(name, "queens"))
            return queens_model(*n);
        if (auto n = parameter(name, "magic")) {
            for (const auto & [shipped, text] : embedded::models)
                if (shipped == "magic" + std::to_string(*n))
                    return parse_model(text).model;
            return magic_model(*n);
        }
        if (auto n = parameter(name, "chain"); n && *n >= 2) {
            for (const auto & [shipped, text] : embedded::models)
                if (shipped == "chain" + std::to_string(*n))
                    return parse_model(text).model;
            return chain_model(*n);
        }
        return parse_model(shipped_model_text(name)).model;
    }

    auto benchmark_corpus() -> std::vector<CorpusEntry>
    {
        return {
            {"alpha", 4605, 8440, false},
            {"eq10", 49, 49, false},
            {"eq20", 49, 49, false},
            {"magic(3)", 2, 2, false},
            {"magic(4)", 18, 18, false},
            {"queens(25)", 7255, 7255, true},
            {"sendmoney", 2, 2, true},
            {"zebra", 2, 2, false},
        };
    }
}
