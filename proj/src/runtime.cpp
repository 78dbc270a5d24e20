#include <actfd/runtime.hpp>

#include <algorithm>
#include <ostream>

namespace actfd
{
    auto to_string(AgentState s) -> const char *
    {
        switch (s) {
        case AgentState::Start: return "start";
        case AgentState::Sleep: return "sleep";
        case AgentState::Woken: return "woken";
        case AgentState::End: return "end";
        }
        return "?";
    }

    auto coalesce(const std::vector<Event> & pending) -> std::vector<Event>
    {
        std::vector<Event> out;
        for (const auto & e : pending) {
            if (e.kind == EventKind::Bound) {
                bool shadowed = std::any_of(out.begin(), out.end(), [&](const Event & o) {
                    return o.var == e.var && (o.kind == EventKind::Bound || o.kind == EventKind::Ins);
                });
                if (shadowed)
                    continue;
            }
            else if (e.kind == EventKind::Ins)
                std::erase_if(out, [&](const Event & o) { return o.kind == EventKind::Bound && o.var == e.var; });
            out.push_back(e);
        }
        return out;
    }

    Runtime::Runtime(Store & store, RuntimeOptions options) :
        store_(store),
        options_(options),
        rng_(options.seed)
    {
    }

    auto Runtime::live_agent_count() const -> std::size_t
    {
        return static_cast<std::size_t>(
            std::count_if(agents_.begin(), agents_.end(), [](const Agent & a) { return a.state != AgentState::End; }));
    }

    auto Runtime::set_state(AgentId a, AgentState to) -> void
    {
        auto & ag = agents_[a.index];
        if (ag.state == to)
            return;
        auto from = ag.state;
        ag.state = to;
        if (observer_)
            observer_(a, from, to);
    }

    auto Runtime::save_agent(AgentId a) -> void
    {
        if (store_.depth() == 0)
            return;
        const auto & ag = agents_[a.index];
        // Agents are never woken across a choice point, so the restorable
        // state is Sleep whenever it is not End.
        auto st = ag.state == AgentState::End ? AgentState::End : AgentState::Sleep;
        agent_trail_.push_back({a, st, ag.sleeping_on});
    }

    auto Runtime::spawn(AgentSpec spec) -> SpawnResult
    {
        return spawn(std::make_shared<const AgentSpec>(std::move(spec)));
    }

    auto Runtime::spawn(std::shared_ptr<const AgentSpec> spec) -> SpawnResult
    {
        if (spec->rules.empty())
            throw std::invalid_argument("agent '" + spec->label + "' has no rules");

        // Anything posted before the agent exists must not reach it.
        dispatch_posted();

        AgentId id{static_cast<std::uint32_t>(agents_.size())};
        Agent ag;
        ag.id = id;
        ag.seq = id.index;
        ag.spec = std::move(spec);
        agents_.push_back(std::move(ag));

        return {id, select_rule(id, Event::generated(), true)};
    }

    auto Runtime::test_guard(const Rule & r) -> bool
    {
        if (! r.guard)
            return true;
        if (! options_.check_guard_purity)
            return r.guard(store_);
        auto before = store_.digest();
        auto holds = r.guard(store_);
        if (store_.digest() != before)
            throw InvariantViolation("guard modified the store");
        return holds;
    }

    auto Runtime::run_action(AgentId a, std::uint32_t rule, const Event & e) -> Status
    {
        ++activations_;
        const auto & r = agents_[a.index].spec->rules[rule];
        auto st = r.action ? r.action(*this, e) : Status::Ok;
        if (options_.trace)
            trace(a, e, rule, failed(st) ? "fail" : (r.is_commitment() ? "end" : "ok"));
        return st;
    }

    auto Runtime::select_rule(AgentId a, const Event & e, bool first_time) -> Status
    {
        auto spec = agents_[a.index].spec;
        const auto & rules = spec->rules;
        for (std::uint32_t i = 0; i < rules.size(); ++i) {
            const auto & r = rules[i];
            if (! test_guard(r))
                continue;

            if (r.is_commitment()) {
                save_agent(a);
                set_state(a, AgentState::End);
                auto st = run_action(a, i, e);
                if (failed(st))
                    return st;
                dispatch_posted();
                return Status::Ok;
            }

            auto & ag = agents_[a.index];
            bool switching = first_time || i != ag.sleeping_on;
            if (switching) {
                save_agent(a);
                ag.sleeping_on = i;
                for (const auto & w : r.watches) {
                    auto list = watch_list_for(w.kind);
                    if (! list)
                        throw std::invalid_argument("agent '" + spec->label + "' watches a non-variable event");
                    store_.add_watcher(w.var, *list, WatchEntry{a, i});
                }
            }
            set_state(a, ag.pending.empty() ? AgentState::Sleep : AgentState::Woken);

            if (switching && r.on_generated) {
                auto st = run_action(a, i, Event::generated());
                if (failed(st)) {
                    if (observer_)
                        observer_(a, agents_[a.index].state, std::nullopt);
                    return st;
                }
            }
            dispatch_posted();
            return Status::Ok;
        }

        if (observer_)
            observer_(a, agents_[a.index].state, std::nullopt);
        return Status::Failed;
    }

    auto Runtime::post(Event e) -> void
    {
        auto list = watch_list_for(e.kind);
        if (! list)
            return;

        std::vector<AgentId> woken;
        for (const auto & w : store_.watchers(e.var, *list)) {
            const auto & ag = agents_[w.agent.index];
            if ((ag.state == AgentState::Sleep || ag.state == AgentState::Woken) && ag.sleeping_on == w.rule)
                woken.push_back(w.agent);
        }
        // First generated, first served.
        std::sort(woken.begin(), woken.end());
        woken.erase(std::unique(woken.begin(), woken.end()), woken.end());
        for (auto a : woken)
            enqueue(a, e);
    }

    auto Runtime::dispatch_posted() -> void
    {
        while (store_.has_posted())
            for (const auto & e : store_.take_posted())
                post(e);
    }

    auto Runtime::enqueue(AgentId a, const Event & e) -> void
    {
        auto & ag = agents_[a.index];
        if (options_.coalesce && ag.spec->propagator) {
            if (e.kind == EventKind::Bound) {
                for (auto pos : ag.pending) {
                    const auto & q = queue_[pos].event;
                    if (q.var == e.var && (q.kind == EventKind::Bound || q.kind == EventKind::Ins))
                        return;
                }
            }
            else if (e.kind == EventKind::Ins) {
                std::vector<std::size_t> doomed;
                for (auto pos : ag.pending)
                    if (queue_[pos].event.kind == EventKind::Bound && queue_[pos].event.var == e.var)
                        doomed.push_back(pos);
                for (auto pos : doomed)
                    cancel(pos);
            }
        }

        queue_.push_back({a, e, true});
        ag.pending.push_back(queue_.size() - 1);
        ++live_in_queue_;
        set_state(a, AgentState::Woken);
    }

    auto Runtime::cancel(std::size_t pos) -> void
    {
        auto & act = queue_[pos];
        act.live = false;
        --live_in_queue_;
        std::erase(agents_[act.agent.index].pending, pos);
    }

    auto Runtime::dequeue() -> std::optional<Activation>
    {
        if (live_in_queue_ == 0) {
            clear_queue();
            return std::nullopt;
        }

        std::size_t pos = 0;
        switch (options_.policy) {
        case SchedulePolicy::Fifo:
            while (! queue_[head_].live)
                ++head_;
            pos = head_;
            break;
        case SchedulePolicy::Lifo:
            while (! queue_.back().live)
                queue_.pop_back();
            pos = queue_.size() - 1;
            break;
        case SchedulePolicy::Random: {
            std::uniform_int_distribution<std::size_t> pick(head_, queue_.size() - 1);
            pos = pick(rng_);
            while (! queue_[pos].live)
                pos = (pos + 1 < queue_.size()) ? pos + 1 : head_;
            break;
        }
        }

        auto act = queue_[pos];
        cancel(pos);
        return act;
    }

    auto Runtime::clear_queue() -> void
    {
        for (const auto & act : queue_)
            if (act.live) {
                auto & ag = agents_[act.agent.index];
                ag.pending.clear();
                if (ag.state == AgentState::Woken)
                    ag.state = AgentState::Sleep;
            }
        queue_.clear();
        head_ = 0;
        live_in_queue_ = 0;
    }

    auto Runtime::run_to_fixpoint() -> Status
    {
        dispatch_posted();
        while (auto act = dequeue()) {
            auto a = act->agent;
            if (agents_[a.index].state == AgentState::End)
                continue;

            auto rule = agents_[a.index].sleeping_on;
            const auto & r = agents_[a.index].spec->rules[rule];
            if (test_guard(r)) {
                auto st = run_action(a, rule, act->event);
                if (failed(st)) {
                    if (observer_)
                        observer_(a, agents_[a.index].state, std::nullopt);
                    return st;
                }
                if (agents_[a.index].pending.empty())
                    set_state(a, AgentState::Sleep);
                dispatch_posted();
            }
            else if (failed(select_rule(a, act->event, false)))
                return Status::Failed;
        }
        return Status::Ok;
    }

    auto Runtime::push_choice_point() -> ChoicePoint
    {
        if (live_in_queue_ != 0 || store_.has_posted())
            throw std::logic_error("choice point requested while activations are pending");
        return {store_.push_choice_point(), agents_.size(), agent_trail_.size()};
    }

    auto Runtime::backtrack_to(const ChoicePoint & cp) -> void
    {
        clear_queue();
        for (auto & ag : agents_)
            if (ag.state == AgentState::Woken) {
                ag.pending.clear();
                ag.state = AgentState::Sleep;
            }

        while (agent_trail_.size() > cp.agent_trail) {
            const auto & e = agent_trail_.back();
            if (e.agent.index < cp.agent_count) {
                auto & ag = agents_[e.agent.index];
                ag.state = e.state;
                ag.sleeping_on = e.sleeping_on;
            }
            agent_trail_.pop_back();
        }
        agents_.resize(cp.agent_count);
        store_.backtrack_to(cp.store);
    }

    namespace
    {
        auto describe(const Store & s, const Event & e) -> std::string
        {
            switch (e.kind) {
            case EventKind::Generated: return "generated";
            case EventKind::Ins: return "ins(" + s.display_name(e.var) + ")";
            case EventKind::Bound: return "bound(" + s.display_name(e.var) + ")";
            case EventKind::Dom: return "dom(" + s.display_name(e.var) + "," + std::to_string(e.value) + ")";
            case EventKind::User: return "event(" + s.display_name(e.var) + "," + std::to_string(e.value) + ")";
            }
            return "?";
        }
    }

    auto Runtime::trace(AgentId a, const Event & e, std::uint32_t rule, const char * outcome) -> void
    {
        *options_.trace << ++trace_seq_ << '\t' << a.index << ':' << agents_[a.index].spec->label << '\t'
                        << describe(store_, e) << '\t' << rule << '\t' << outcome << '\n';
    }
}
