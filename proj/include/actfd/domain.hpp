#ifndef ACTFD_DOMAIN_HPP
#define ACTFD_DOMAIN_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace actfd
{
    using Value = std::int64_t;

    // Raised for malformed input at construction time (empty ranges, domains
    // wider than the bit-vector cap). Runtime wipe-outs are never reported
    // this way; they surface as DeltaKind::Emptied / Status::Failed.
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    enum class DeltaKind
    {
        Unchanged,
        Instantiated,
        BoundChanged,
        InnerExcluded,
        MultiChanged,
        Emptied
    };

    // What a single domain operation did. `value` is the remaining element for
    // Instantiated and the removed element for InnerExcluded.
    struct DomainDelta
    {
        DeltaKind kind = DeltaKind::Unchanged;
        Value value = 0;
        bool bound_changed = false;
        std::vector<Value> excluded_inner;

        [[nodiscard]] static auto unchanged() -> DomainDelta { return {}; }
        [[nodiscard]] static auto emptied() -> DomainDelta { return {DeltaKind::Emptied, 0, false, {}}; }
        [[nodiscard]] static auto instantiated(Value v) -> DomainDelta { return {DeltaKind::Instantiated, v, true, {}}; }
        [[nodiscard]] static auto bound() -> DomainDelta { return {DeltaKind::BoundChanged, 0, true, {}}; }
        [[nodiscard]] static auto inner(Value v) -> DomainDelta { return {DeltaKind::InnerExcluded, v, false, {}}; }
    };

    // A finite set of integers stored as [lo, hi] plus, only when the set has
    // holes, a bit vector. Bit i of `bits_` stands for `base_ + i`; base_ is
    // left where it was when bounds tighten, so the vector is never shifted.
    //
    // Mutators never leave the object empty: an operation that would wipe the
    // domain out reports Emptied and leaves the domain as it was.
    class FiniteDomain
    {
    public:
        static constexpr Value default_max_width = Value{1} << 20;

        FiniteDomain() = default;

        [[nodiscard]] static auto interval(Value lo, Value hi) -> FiniteDomain;
        [[nodiscard]] static auto of_values(std::span<const Value> values) -> FiniteDomain;
        [[nodiscard]] static auto singleton(Value v) -> FiniteDomain { return interval(v, v); }

        [[nodiscard]] auto min() const -> Value { return lo_; }
        [[nodiscard]] auto max() const -> Value { return hi_; }
        [[nodiscard]] auto size() const -> Value { return count_; }
        [[nodiscard]] auto is_singleton() const -> bool { return count_ == 1; }
        [[nodiscard]] auto is_interval() const -> bool { return bits_.empty(); }
        [[nodiscard]] auto contains(Value v) const -> bool;

        // Smallest member strictly greater than v / largest strictly smaller.
        [[nodiscard]] auto next_above(Value v) const -> std::optional<Value>;
        [[nodiscard]] auto next_below(Value v) const -> std::optional<Value>;

        template <typename F_>
        auto for_each(F_ && f) const -> void
        {
            if (bits_.empty()) {
                for (Value v = lo_; v <= hi_; ++v)
                    f(v);
                return;
            }
            for (Value v = lo_;;) {
                f(v);
                if (v == hi_)
                    break;
                v = *next_above(v);
            }
        }

        [[nodiscard]] auto values() const -> std::vector<Value>;

        auto exclude(Value v) -> DomainDelta;
        auto intersect(Value lo, Value hi) -> DomainDelta;
        auto restrict_to(const FiniteDomain & other) -> DomainDelta;
        auto bind(Value v) -> DomainDelta;

        [[nodiscard]] auto to_string() const -> std::string;

        // Same members and same representation form.
        friend auto operator==(const FiniteDomain & a, const FiniteDomain & b) -> bool;

    private:
        Value lo_ = 0;
        Value hi_ = -1;
        Value count_ = 0;
        Value base_ = 0;
        std::vector<std::uint64_t> bits_;

        auto test_bit(Value v) const -> bool;
        auto clear_bit(Value v) -> void;
        auto count_range(Value lo, Value hi) const -> Value;
        auto materialize_bits() -> void;
        auto normalize() -> void;
        auto collapse_to(Value v) -> void;
    };

    [[nodiscard]] auto make_interval(Value lo, Value hi) -> FiniteDomain;
    [[nodiscard]] auto make_set(std::span<const Value> values) -> FiniteDomain;
    [[nodiscard]] auto make_set(std::initializer_list<Value> values) -> FiniteDomain;

    [[nodiscard]] auto exclude_value(FiniteDomain d, Value v) -> std::pair<FiniteDomain, DomainDelta>;
    [[nodiscard]] auto intersect_range(FiniteDomain d, Value lo, Value hi) -> std::pair<FiniteDomain, DomainDelta>;

    // Subset test that tries the cheap refutations first: size, bounds, both
    // intervals, and (when d2 just lost `excluded_hint`) membership of the
    // hint in d1. Only then does it scan d1.
    [[nodiscard]] auto is_subset_of(const FiniteDomain & d1, const FiniteDomain & d2,
        std::optional<Value> excluded_hint = std::nullopt) -> bool;
}

#endif
