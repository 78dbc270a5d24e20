#include <actfd/search.hpp>

#include <optional>

namespace actfd
{
    namespace
    {
        class Labeler
        {
        public:
            Labeler(Runtime & rt, std::span<const VarId> vars, const LabelingSpec & spec, const SolutionCallback & cb) :
                rt_(rt),
                vars_(vars),
                spec_(spec),
                on_solution_(cb)
            {
            }

            auto run() -> SearchResult
            {
                if (! failed(rt_.run_to_fixpoint()))
                    descend();
                result_.stats.activations = rt_.activations();
                return std::move(result_);
            }

        private:
            Runtime & rt_;
            std::span<const VarId> vars_;
            const LabelingSpec & spec_;
            const SolutionCallback & on_solution_;
            SearchResult result_;

            auto pick() const -> std::optional<VarId>
            {
                const auto & s = rt_.store();
                std::optional<VarId> best;
                for (auto v : vars_) {
                    if (s.is_bound(v))
                        continue;
                    if (spec_.order == VarOrder::LeftToRight)
                        return v;
                    if (! best || s.size(v) < s.size(*best))
                        best = v;
                }
                return best;
            }

            auto record() -> void
            {
                const auto & s = rt_.store();
                std::vector<Value> row;
                row.reserve(vars_.size());
                for (auto v : vars_)
                    row.push_back(s.value(v));
                result_.solutions.push_back(std::move(row));
                ++result_.stats.solutions;
                if (on_solution_)
                    on_solution_(s);
            }

            // Returns true when search should stop; `found` reports whether
            // the subtree produced any solution.
            auto descend(bool * found = nullptr) -> bool
            {
                auto var = pick();
                if (! var) {
                    record();
                    if (found)
                        *found = true;
                    return spec_.mode == SearchMode::FirstSolution;
                }

                auto values = rt_.store().domain(*var).values();
                for (auto v : values) {
                    auto cp = rt_.push_choice_point();
                    bool sub_found = false, stop = false;
                    if (! failed(rt_.store().bind(*var, v)) && ! failed(rt_.run_to_fixpoint()))
                        stop = descend(&sub_found);
                    else
                        ++result_.stats.backtracks;
                    rt_.backtrack_to(cp);
                    if (sub_found && found)
                        *found = true;
                    if (stop)
                        return true;
                }
                return false;
            }
        };
    }

    auto label(Runtime & rt, std::span<const VarId> vars, const LabelingSpec & spec, const SolutionCallback & on_solution)
        -> SearchResult
    {
        return Labeler(rt, vars, spec, on_solution).run();
    }
}
