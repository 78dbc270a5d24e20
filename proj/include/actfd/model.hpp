#ifndef ACTFD_MODEL_HPP
#define ACTFD_MODEL_HPP

#include <actfd/alldistinct.hpp>
#include <actfd/linear.hpp>

#include <string>
#include <variant>
#include <vector>

namespace actfd
{
    struct VarDecl
    {
        std::string name;
        FiniteDomain domain;
    };

    // x != y + c
    struct Disequality
    {
        VarId x, y;
        Value c = 0;
    };

    struct AllDistinct
    {
        std::vector<VarId> vars;
    };

    using Constraint = std::variant<NaryLinear, BinaryLinear, Disequality, AllDistinct>;

    // Declarative problem. Variable i of the model becomes VarId{i} of the
    // store it is posted into.
    struct Model
    {
        std::vector<VarDecl> vars;
        std::vector<Constraint> constraints;
        std::vector<VarId> label;

        auto add_var(std::string name, FiniteDomain d) -> VarId
        {
            vars.push_back({std::move(name), std::move(d)});
            return VarId{static_cast<std::uint32_t>(vars.size() - 1)};
        }

        // `label` followed by every variable it leaves out, in declaration
        // order, so that a solution is always a total assignment.
        [[nodiscard]] auto labeling_order() const -> std::vector<VarId>;

        [[nodiscard]] auto find(const std::string & name) const -> std::optional<VarId>;
    };
}

#endif
