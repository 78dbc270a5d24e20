#ifndef ACTFD_STORE_HPP
#define ACTFD_STORE_HPP

#include <actfd/domain.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace actfd
{
    struct VarId
    {
        std::uint32_t index = 0;
        auto operator<=>(const VarId &) const = default;
    };

    struct AgentId
    {
        std::uint32_t index = 0;
        auto operator<=>(const AgentId &) const = default;
    };

    enum class Status
    {
        Ok,
        Failed
    };

    [[nodiscard]] inline auto failed(Status s) -> bool { return s == Status::Failed; }

    enum class EventKind : std::uint8_t
    {
        Generated,
        Ins,
        Bound,
        Dom,
        User
    };

    struct Event
    {
        EventKind kind = EventKind::Generated;
        VarId var{};
        Value value = 0;
        std::uint64_t seq = 0;

        auto operator==(const Event &) const -> bool = default;

        [[nodiscard]] static auto generated() -> Event { return {}; }
        [[nodiscard]] static auto ins(VarId x) -> Event { return {EventKind::Ins, x, 0, 0}; }
        [[nodiscard]] static auto bound(VarId x) -> Event { return {EventKind::Bound, x, 0, 0}; }
        [[nodiscard]] static auto dom(VarId x, Value v) -> Event { return {EventKind::Dom, x, v, 0}; }
        [[nodiscard]] static auto user(VarId x, Value payload) -> Event { return {EventKind::User, x, payload, 0}; }

        // Identity ignoring the posting sequence number.
        [[nodiscard]] auto same_as(const Event & o) const -> bool
        {
            return kind == o.kind && var == o.var && ((kind != EventKind::Dom && kind != EventKind::User) || value == o.value);
        }
    };

    // Suspension lists, one per event kind that can be watched on a variable.
    enum class WatchList : std::uint8_t
    {
        Ins = 0,
        Bound = 1,
        Dom = 2,
        User = 3
    };

    inline constexpr std::size_t watch_list_count = 4;

    [[nodiscard]] auto watch_list_for(EventKind k) -> std::optional<WatchList>;

    struct WatchEntry
    {
        AgentId agent;
        std::uint32_t rule = 0;
        auto operator<=>(const WatchEntry &) const = default;
    };

    struct Variable
    {
        FiniteDomain domain;
        std::optional<Value> bound_value;
        std::array<std::vector<WatchEntry>, watch_list_count> watchers;
        std::string name;
    };

    struct ExcludeValue
    {
        Value value;
    };
    struct IntersectRange
    {
        Value lo, hi;
    };
    struct Bind
    {
        Value value;
    };

    struct StoreMark
    {
        std::size_t domain_trail = 0;
        std::size_t watch_trail = 0;
        std::uint64_t previous_segment = 0;
        std::size_t var_count = 0;
    };

    struct StoreSnapshot
    {
        std::vector<FiniteDomain> domains;
        std::vector<std::optional<Value>> bindings;
        std::vector<std::array<std::vector<WatchEntry>, watch_list_count>> watchers;
        std::vector<Event> pending;

        auto operator==(const StoreSnapshot &) const -> bool = default;
    };

    // Owns the decision variables. Every narrowing goes through tighten(),
    // which trails the old domain (once per variable per choice-point
    // segment), auto-instantiates singletons, and queues the events implied
    // by the domain delta. Events sit in `posted_` until the runtime takes
    // them.
    class Store
    {
    public:
        auto new_var(FiniteDomain d, std::string name = {}) -> VarId;

        auto tighten(VarId x, ExcludeValue op) -> Status;
        auto tighten(VarId x, IntersectRange op) -> Status;
        auto tighten(VarId x, Bind op) -> Status;
        auto tighten(VarId x, const FiniteDomain & keep) -> Status;

        auto exclude(VarId x, Value v) -> Status { return tighten(x, ExcludeValue{v}); }
        auto intersect(VarId x, Value lo, Value hi) -> Status { return tighten(x, IntersectRange{lo, hi}); }
        auto bind(VarId x, Value v) -> Status { return tighten(x, Bind{v}); }

        [[nodiscard]] auto domain(VarId x) const -> const FiniteDomain & { return vars_[x.index].domain; }
        [[nodiscard]] auto min(VarId x) const -> Value { return domain(x).min(); }
        [[nodiscard]] auto max(VarId x) const -> Value { return domain(x).max(); }
        [[nodiscard]] auto size(VarId x) const -> Value { return domain(x).size(); }
        [[nodiscard]] auto is_bound(VarId x) const -> bool { return vars_[x.index].bound_value.has_value(); }
        [[nodiscard]] auto is_free(VarId x) const -> bool { return ! is_bound(x); }
        [[nodiscard]] auto value(VarId x) const -> Value { return *vars_[x.index].bound_value; }
        [[nodiscard]] auto bound_value(VarId x) const -> std::optional<Value> { return vars_[x.index].bound_value; }
        [[nodiscard]] auto name(VarId x) const -> const std::string & { return vars_[x.index].name; }
        [[nodiscard]] auto display_name(VarId x) const -> std::string;
        [[nodiscard]] auto num_vars() const -> std::size_t { return vars_.size(); }

        auto add_watcher(VarId x, WatchList list, WatchEntry entry) -> void;
        [[nodiscard]] auto watchers(VarId x, WatchList list) const -> std::span<const WatchEntry>
        {
            return vars_[x.index].watchers[static_cast<std::size_t>(list)];
        }

        auto post(Event e) -> void;
        [[nodiscard]] auto has_posted() const -> bool { return ! posted_.empty(); }
        [[nodiscard]] auto posted() const -> std::span<const Event> { return posted_; }
        auto take_posted() -> std::vector<Event>;

        auto push_choice_point() -> StoreMark;
        auto backtrack_to(const StoreMark & mark) -> void;
        [[nodiscard]] auto depth() const -> std::size_t { return depth_; }

        [[nodiscard]] auto digest() const -> std::uint64_t;
        [[nodiscard]] auto snapshot() const -> StoreSnapshot;

    private:
        struct DomainTrailEntry
        {
            VarId var;
            FiniteDomain domain;
            std::optional<Value> bound_value;
            std::uint64_t stamp;
        };

        struct WatchTrailEntry
        {
            VarId var;
            WatchList list;
            std::size_t length;
            std::uint64_t stamp;
        };

        std::vector<Variable> vars_;
        std::vector<std::uint64_t> domain_stamps_;
        std::vector<std::array<std::uint64_t, watch_list_count>> watch_stamps_;
        std::vector<DomainTrailEntry> domain_trail_;
        std::vector<WatchTrailEntry> watch_trail_;
        std::vector<Event> posted_;
        std::uint64_t event_seq_ = 0;
        std::uint64_t segment_ = 0;
        std::uint64_t next_segment_ = 1;
        std::size_t depth_ = 0;

        auto save_domain(VarId x) -> void;
        auto apply(VarId x, DomainDelta && delta) -> Status;
    };
}

#endif
