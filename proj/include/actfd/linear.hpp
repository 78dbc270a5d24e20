#ifndef ACTFD_LINEAR_HPP
#define ACTFD_LINEAR_HPP

#include <actfd/runtime.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace actfd
{
    // Model would overflow 64-bit intermediate arithmetic.
    class CapacityError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    enum class ConsistencyLevel
    {
        ForwardChecking,
        Interval,
        Arc,
        Hybrid
    };

    [[nodiscard]] auto to_string(ConsistencyLevel l) -> const char *;

    // a*x = b*y + c. a is positive; b may be of either sign (the two-free-term
    // collapse of an n-ary sum produces negative b).
    struct BinaryLinear
    {
        Value a = 1;
        VarId x;
        Value b = 1;
        VarId y;
        Value c = 0;
    };

    struct LinearTerm
    {
        Value coeff = 1;
        VarId var;
    };

    // c + sum(coeff_i * var_i) = 0
    struct NaryLinear
    {
        Value c = 0;
        std::vector<LinearTerm> terms;
    };

    // Running bounds of the prefix sums T_0 = c, T_i = T_{i-1} + a_i*x_i.
    struct PartialSums
    {
        std::vector<Value> lt, ut;
    };

    [[nodiscard]] constexpr auto floor_div(Value p, Value q) -> Value
    {
        auto d = p / q;
        return (p % q != 0 && p < 0) ? d - 1 : d;
    }

    [[nodiscard]] constexpr auto ceil_div(Value p, Value q) -> Value
    {
        auto d = p / q;
        return (p % q != 0 && p > 0) ? d + 1 : d;
    }

    // Integer range of x given a*x in [lo, hi], for any non-zero a.
    [[nodiscard]] auto quotient_range(Value lo, Value hi, Value a) -> std::pair<Value, Value>;

    // Range of a*x over the current domain of x.
    [[nodiscard]] auto product_range(const Store & s, Value a, VarId x) -> std::pair<Value, Value>;

    // Merges repeated variables and drops terms whose merged coefficient is
    // zero. Throws std::invalid_argument on a zero input coefficient.
    [[nodiscard]] auto normalize(NaryLinear nc) -> NaryLinear;

    auto check_capacity(const Store & s, const NaryLinear & nc) -> void;
    auto check_capacity(const Store & s, const BinaryLinear & bc) -> void;

    [[nodiscard]] auto forward_partial_sums(const Store & s, const NaryLinear & nc) -> PartialSums;

    // One forward and one backward pass over the prefix sums. Does not by
    // itself reach a fixpoint; the agent is re-woken by its own bound events.
    auto reduce_linear(Store & s, const NaryLinear & nc) -> Status;

    [[nodiscard]] auto count_free(const Store & s, const NaryLinear & nc) -> std::size_t;

    auto post_binary(Runtime & rt, const BinaryLinear & bc, ConsistencyLevel level) -> Status;

    // x != y + c
    auto post_diseq(Runtime & rt, VarId x, VarId y, Value c) -> Status;

    auto post_nary_unite(Runtime & rt, const NaryLinear & nc) -> Status;
    auto post_nary_hybrid(Runtime & rt, const NaryLinear & nc) -> Status;
    auto post_nary_forward(Runtime & rt, const NaryLinear & nc) -> Status;

    // Picks the propagator family for an n-ary sum at a solver level:
    // ForwardChecking -> forward, Interval -> unite, Arc/Hybrid -> hybrid.
    auto post_linear(Runtime & rt, const NaryLinear & nc, ConsistencyLevel level) -> Status;
}

#endif
