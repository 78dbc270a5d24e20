#include <actfd/store.hpp>

#include <stdexcept>

namespace actfd
{
    auto watch_list_for(EventKind k) -> std::optional<WatchList>
    {
        switch (k) {
        case EventKind::Ins: return WatchList::Ins;
        case EventKind::Bound: return WatchList::Bound;
        case EventKind::Dom: return WatchList::Dom;
        case EventKind::User: return WatchList::User;
        case EventKind::Generated: return std::nullopt;
        }
        return std::nullopt;
    }

    auto Store::new_var(FiniteDomain d, std::string name) -> VarId
    {
        if (d.size() == 0)
            throw DomainError("variable created with an empty domain");
        VarId id{static_cast<std::uint32_t>(vars_.size())};
        Variable v;
        if (d.is_singleton())
            v.bound_value = d.min();
        v.domain = std::move(d);
        v.name = std::move(name);
        vars_.push_back(std::move(v));
        domain_stamps_.push_back(segment_);
        watch_stamps_.push_back({segment_, segment_, segment_, segment_});
        return id;
    }

    auto Store::display_name(VarId x) const -> std::string
    {
        const auto & n = vars_[x.index].name;
        return n.empty() ? "_" + std::to_string(x.index) : n;
    }

    auto Store::save_domain(VarId x) -> void
    {
        if (depth_ == 0 || domain_stamps_[x.index] == segment_)
            return;
        const auto & v = vars_[x.index];
        domain_trail_.push_back({x, v.domain, v.bound_value, domain_stamps_[x.index]});
        domain_stamps_[x.index] = segment_;
    }

    auto Store::apply(VarId x, DomainDelta && delta) -> Status
    {
        switch (delta.kind) {
        case DeltaKind::Unchanged:
            return Status::Ok;
        case DeltaKind::Emptied:
            return Status::Failed;
        case DeltaKind::Instantiated:
            vars_[x.index].bound_value = delta.value;
            post(Event::ins(x));
            return Status::Ok;
        case DeltaKind::BoundChanged:
            post(Event::bound(x));
            return Status::Ok;
        case DeltaKind::InnerExcluded:
            post(Event::dom(x, delta.value));
            return Status::Ok;
        case DeltaKind::MultiChanged:
            if (delta.bound_changed)
                post(Event::bound(x));
            for (auto v : delta.excluded_inner)
                post(Event::dom(x, v));
            return Status::Ok;
        }
        return Status::Ok;
    }

    // The domain is copied to the trail before mutation; Emptied leaves the
    // live domain untouched, so a failed tighten is harmless even at depth 0.
    auto Store::tighten(VarId x, ExcludeValue op) -> Status
    {
        auto & d = vars_[x.index].domain;
        if (! d.contains(op.value))
            return Status::Ok;
        if (d.is_singleton())
            return Status::Failed;
        save_domain(x);
        return apply(x, d.exclude(op.value));
    }

    auto Store::tighten(VarId x, IntersectRange op) -> Status
    {
        auto & d = vars_[x.index].domain;
        if (op.lo <= d.min() && op.hi >= d.max())
            return Status::Ok;
        if (op.lo > d.max() || op.hi < d.min())
            return Status::Failed;
        save_domain(x);
        return apply(x, d.intersect(op.lo, op.hi));
    }

    auto Store::tighten(VarId x, Bind op) -> Status
    {
        auto & d = vars_[x.index].domain;
        if (! d.contains(op.value))
            return Status::Failed;
        if (d.is_singleton())
            return Status::Ok;
        save_domain(x);
        return apply(x, d.bind(op.value));
    }

    auto Store::tighten(VarId x, const FiniteDomain & keep) -> Status
    {
        save_domain(x);
        return apply(x, vars_[x.index].domain.restrict_to(keep));
    }

    auto Store::add_watcher(VarId x, WatchList list, WatchEntry entry) -> void
    {
        auto li = static_cast<std::size_t>(list);
        auto & stamp = watch_stamps_[x.index][li];
        auto & lst = vars_[x.index].watchers[li];
        if (depth_ != 0 && stamp != segment_) {
            watch_trail_.push_back({x, list, lst.size(), stamp});
            stamp = segment_;
        }
        lst.push_back(entry);
    }

    auto Store::post(Event e) -> void
    {
        e.seq = ++event_seq_;
        posted_.push_back(e);
    }

    auto Store::take_posted() -> std::vector<Event>
    {
        std::vector<Event> out;
        out.swap(posted_);
        return out;
    }

    auto Store::push_choice_point() -> StoreMark
    {
        StoreMark mark{domain_trail_.size(), watch_trail_.size(), segment_, vars_.size()};
        segment_ = next_segment_++;
        ++depth_;
        return mark;
    }

    auto Store::backtrack_to(const StoreMark & mark) -> void
    {
        if (depth_ == 0)
            throw std::logic_error("backtrack_to without a matching choice point");

        while (domain_trail_.size() > mark.domain_trail) {
            auto & e = domain_trail_.back();
            if (e.var.index < vars_.size()) {
                auto & v = vars_[e.var.index];
                v.domain = std::move(e.domain);
                v.bound_value = e.bound_value;
                domain_stamps_[e.var.index] = e.stamp;
            }
            domain_trail_.pop_back();
        }
        while (watch_trail_.size() > mark.watch_trail) {
            auto & e = watch_trail_.back();
            if (e.var.index < vars_.size()) {
                vars_[e.var.index].watchers[static_cast<std::size_t>(e.list)].resize(e.length);
                watch_stamps_[e.var.index][static_cast<std::size_t>(e.list)] = e.stamp;
            }
            watch_trail_.pop_back();
        }

        vars_.resize(mark.var_count);
        domain_stamps_.resize(mark.var_count);
        watch_stamps_.resize(mark.var_count);
        posted_.clear();
        segment_ = mark.previous_segment;
        --depth_;
    }

    auto Store::digest() const -> std::uint64_t
    {
        // FNV-1a over bounds, sizes and members.
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&](std::uint64_t x) {
            for (int i = 0; i < 8; ++i) {
                h ^= (x >> (8 * i)) & 0xff;
                h *= 1099511628211ULL;
            }
        };
        for (const auto & v : vars_) {
            mix(static_cast<std::uint64_t>(v.domain.size()));
            v.domain.for_each([&](Value x) { mix(static_cast<std::uint64_t>(x)); });
            mix(v.bound_value ? static_cast<std::uint64_t>(*v.bound_value) : 0x9e3779b97f4a7c15ULL);
        }
        return h;
    }

    auto Store::snapshot() const -> StoreSnapshot
    {
        StoreSnapshot s;
        for (const auto & v : vars_) {
            s.domains.push_back(v.domain);
            s.bindings.push_back(v.bound_value);
            s.watchers.push_back(v.watchers);
        }
        s.pending = posted_;
        return s;
    }
}
