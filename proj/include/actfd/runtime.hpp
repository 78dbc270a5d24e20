#ifndef ACTFD_RUNTIME_HPP
#define ACTFD_RUNTIME_HPP

#include <actfd/store.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace actfd
{
    class Runtime;

    enum class AgentState : std::uint8_t
    {
        Start,
        Sleep,
        Woken,
        End
    };

    [[nodiscard]] auto to_string(AgentState s) -> const char *;

    struct Watch
    {
        EventKind kind;
        VarId var;
    };

    // One guarded rule of an agent. Rules are tried in order; the first whose
    // guard holds is applicable. A rule with no watches is a commitment rule:
    // its action runs once and the agent ends. Otherwise the agent suspends on
    // the watched events, and runs the action once at suspension time when
    // `on_generated` is set.
    //
    // Guards see the store through a const reference and may not narrow it.
    struct Rule
    {
        std::function<bool(const Store &)> guard;
        std::vector<Watch> watches;
        bool on_generated = false;
        std::function<Status(Runtime &, const Event &)> action;

        [[nodiscard]] auto is_commitment() const -> bool { return watches.empty(); }
    };

    struct AgentSpec
    {
        std::string label;
        std::vector<Rule> rules;
        // Event coalescing only applies to constraint propagators.
        bool propagator = true;
    };

    struct Agent
    {
        AgentId id;
        std::uint64_t seq = 0;
        AgentState state = AgentState::Start;
        std::uint32_t sleeping_on = 0;
        std::shared_ptr<const AgentSpec> spec;
        std::vector<std::size_t> pending;
    };

    enum class SchedulePolicy
    {
        Fifo,
        Lifo,
        Random
    };

    struct RuntimeOptions
    {
        bool coalesce = true;
        SchedulePolicy policy = SchedulePolicy::Fifo;
        std::uint64_t seed = 0;
        std::ostream * trace = nullptr;
        bool check_guard_purity = false;
    };

    struct SpawnResult
    {
        AgentId id;
        Status status;
    };

    struct ChoicePoint
    {
        StoreMark store;
        std::size_t agent_count = 0;
        std::size_t agent_trail = 0;
    };

    // Thrown when an instrumented check (guard purity) detects a broken
    // runtime invariant.
    class InvariantViolation : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };

    // Drops redundant pending events for one propagator: repeated Bound(x)
    // collapse to the first, and Bound(x) vanishes when Ins(x) is also
    // pending. Dom events are never merged.
    [[nodiscard]] auto coalesce(const std::vector<Event> & pending) -> std::vector<Event>;

    using TransitionObserver = std::function<void(AgentId, AgentState from, std::optional<AgentState> to)>;

    class Runtime
    {
    public:
        explicit Runtime(Store & store, RuntimeOptions options = {});

        [[nodiscard]] auto store() -> Store & { return store_; }
        [[nodiscard]] auto store() const -> const Store & { return store_; }
        [[nodiscard]] auto options() const -> const RuntimeOptions & { return options_; }

        auto spawn(AgentSpec spec) -> SpawnResult;
        auto spawn(std::shared_ptr<const AgentSpec> spec) -> SpawnResult;

        // Wakes every agent currently suspended on `e`, then forgets `e`.
        auto post(Event e) -> void;

        auto run_to_fixpoint() -> Status;

        auto push_choice_point() -> ChoicePoint;
        auto backtrack_to(const ChoicePoint & cp) -> void;

        [[nodiscard]] auto agent(AgentId id) const -> const Agent & { return agents_[id.index]; }
        [[nodiscard]] auto state(AgentId id) const -> AgentState { return agents_[id.index].state; }
        [[nodiscard]] auto agent_count() const -> std::size_t { return agents_.size(); }
        [[nodiscard]] auto live_agent_count() const -> std::size_t;
        [[nodiscard]] auto queue_size() const -> std::size_t { return live_in_queue_; }
        [[nodiscard]] auto activations() const -> std::uint64_t { return activations_; }

        auto set_transition_observer(TransitionObserver obs) -> void { observer_ = std::move(obs); }

    private:
        struct Activation
        {
            AgentId agent;
            Event event;
            bool live = true;
        };

        struct AgentTrailEntry
        {
            AgentId agent;
            AgentState state;
            std::uint32_t sleeping_on;
        };

        Store & store_;
        RuntimeOptions options_;
        std::vector<Agent> agents_;
        std::vector<AgentTrailEntry> agent_trail_;
        std::vector<Activation> queue_;
        std::size_t head_ = 0;
        std::size_t live_in_queue_ = 0;
        std::uint64_t activations_ = 0;
        std::uint64_t trace_seq_ = 0;
        std::mt19937_64 rng_;
        TransitionObserver observer_;

        auto dispatch_posted() -> void;
        auto enqueue(AgentId a, const Event & e) -> void;
        auto cancel(std::size_t pos) -> void;
        auto dequeue() -> std::optional<Activation>;
        auto clear_queue() -> void;

        auto select_rule(AgentId a, const Event & e, bool first_time) -> Status;
        auto run_action(AgentId a, std::uint32_t rule, const Event & e) -> Status;
        auto test_guard(const Rule & r) -> bool;
        auto set_state(AgentId a, AgentState to) -> void;
        auto save_agent(AgentId a) -> void;
        auto trace(AgentId a, const Event & e, std::uint32_t rule, const char * outcome) -> void;
    };
}

#endif
