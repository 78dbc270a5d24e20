#include <actfd/domain.hpp>

#include <algorithm>
#include <bit>
#include <sstream>

namespace actfd
{
    namespace
    {
        auto width_of(Value lo, Value hi) -> __int128
        {
            return static_cast<__int128>(hi) - static_cast<__int128>(lo) + 1;
        }

        auto check_width(Value lo, Value hi) -> void
        {
            if (width_of(lo, hi) > FiniteDomain::default_max_width)
                throw DomainError("domain " + std::to_string(lo) + ".." + std::to_string(hi) + " is wider than " +
                    std::to_string(FiniteDomain::default_max_width) + " values");
        }
    }

    auto FiniteDomain::interval(Value lo, Value hi) -> FiniteDomain
    {
        if (lo > hi)
            throw DomainError("empty range " + std::to_string(lo) + ".." + std::to_string(hi));
        check_width(lo, hi);
        FiniteDomain d;
        d.lo_ = lo;
        d.hi_ = hi;
        d.count_ = hi - lo + 1;
        return d;
    }

    auto FiniteDomain::of_values(std::span<const Value> values) -> FiniteDomain
    {
        if (values.empty())
            throw DomainError("empty value list");
        std::vector<Value> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

        auto d = interval(sorted.front(), sorted.back());
        if (static_cast<Value>(sorted.size()) == d.count_)
            return d;

        d.base_ = d.lo_;
        d.bits_.assign(static_cast<std::size_t>((d.count_ + 63) / 64), 0);
        for (auto v : sorted) {
            auto off = v - d.base_;
            d.bits_[static_cast<std::size_t>(off >> 6)] |= std::uint64_t{1} << (off & 63);
        }
        d.count_ = static_cast<Value>(sorted.size());
        return d;
    }

    auto FiniteDomain::test_bit(Value v) const -> bool
    {
        auto off = v - base_;
        return (bits_[static_cast<std::size_t>(off >> 6)] >> (off & 63)) & 1U;
    }

    auto FiniteDomain::clear_bit(Value v) -> void
    {
        auto off = v - base_;
        bits_[static_cast<std::size_t>(off >> 6)] &= ~(std::uint64_t{1} << (off & 63));
    }

    auto FiniteDomain::contains(Value v) const -> bool
    {
        if (count_ == 0 || v < lo_ || v > hi_)
            return false;
        return bits_.empty() || test_bit(v);
    }

    auto FiniteDomain::next_above(Value v) const -> std::optional<Value>
    {
        if (count_ == 0 || v >= hi_)
            return std::nullopt;
        if (v < lo_)
            return lo_;
        if (bits_.empty())
            return v + 1;

        auto off = v + 1 - base_;
        auto word = static_cast<std::size_t>(off >> 6);
        auto w = bits_[word] & (~std::uint64_t{0} << (off & 63));
        while (w == 0) {
            ++word;
            w = bits_[word];
        }
        return base_ + static_cast<Value>(word * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }

    auto FiniteDomain::next_below(Value v) const -> std::optional<Value>
    {
        if (count_ == 0 || v <= lo_)
            return std::nullopt;
        if (v > hi_)
            return hi_;
        if (bits_.empty())
            return v - 1;

        auto off = v - 1 - base_;
        auto word = static_cast<std::size_t>(off >> 6);
        auto shift = 63 - (off & 63);
        auto w = (bits_[word] << shift) >> shift;
        while (w == 0) {
            --word;
            w = bits_[word];
        }
        return base_ + static_cast<Value>(word * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w)));
    }

    auto FiniteDomain::values() const -> std::vector<Value>
    {
        std::vector<Value> out;
        out.reserve(static_cast<std::size_t>(count_));
        for_each([&](Value v) { out.push_back(v); });
        return out;
    }

    auto FiniteDomain::count_range(Value lo, Value hi) const -> Value
    {
        if (bits_.empty())
            return hi - lo + 1;
        Value total = 0;
        auto first = lo - base_, last = hi - base_;
        for (auto word = first >> 6; word <= (last >> 6); ++word) {
            auto w = bits_[static_cast<std::size_t>(word)];
            if (word == (first >> 6))
                w &= ~std::uint64_t{0} << (first & 63);
            if (word == (last >> 6) && (last & 63) != 63)
                w &= (std::uint64_t{1} << ((last & 63) + 1)) - 1;
            total += std::popcount(w);
        }
        return total;
    }

    auto FiniteDomain::materialize_bits() -> void
    {
        base_ = lo_;
        auto width = hi_ - lo_ + 1;
        bits_.assign(static_cast<std::size_t>((width + 63) / 64), ~std::uint64_t{0});
    }

    auto FiniteDomain::normalize() -> void
    {
        if (! bits_.empty() && count_ == hi_ - lo_ + 1)
            bits_.clear();
    }

    auto FiniteDomain::collapse_to(Value v) -> void
    {
        lo_ = hi_ = v;
        count_ = 1;
        bits_.clear();
    }

    auto FiniteDomain::exclude(Value v) -> DomainDelta
    {
        if (! contains(v))
            return DomainDelta::unchanged();
        if (count_ == 1)
            return DomainDelta::emptied();
        if (count_ == 2) {
            auto other = (v == lo_) ? hi_ : lo_;
            collapse_to(other);
            return DomainDelta::instantiated(other);
        }

        if (v == lo_) {
            lo_ = *next_above(v);
            --count_;
            normalize();
            return DomainDelta::bound();
        }
        if (v == hi_) {
            hi_ = *next_below(v);
            --count_;
            normalize();
            return DomainDelta::bound();
        }

        if (bits_.empty())
            materialize_bits();
        clear_bit(v);
        --count_;
        return DomainDelta::inner(v);
    }

    auto FiniteDomain::intersect(Value lo, Value hi) -> DomainDelta
    {
        auto new_lo = std::max(lo_, lo), new_hi = std::min(hi_, hi);
        if (new_lo > new_hi)
            return DomainDelta::emptied();
        if (new_lo == lo_ && new_hi == hi_)
            return DomainDelta::unchanged();

        if (! bits_.empty()) {
            if (! test_bit(new_lo)) {
                auto above = next_above(new_lo);
                if (! above || *above > new_hi)
                    return DomainDelta::emptied();
                new_lo = *above;
            }
            if (! test_bit(new_hi))
                new_hi = *next_below(new_hi);
        }

        auto new_count = count_range(new_lo, new_hi);
        if (new_count == 1) {
            collapse_to(new_lo);
            return DomainDelta::instantiated(new_lo);
        }
        lo_ = new_lo;
        hi_ = new_hi;
        count_ = new_count;
        normalize();
        return DomainDelta::bound();
    }

    auto FiniteDomain::restrict_to(const FiniteDomain & other) -> DomainDelta
    {
        std::vector<Value> kept, dropped;
        for_each([&](Value v) { (other.contains(v) ? kept : dropped).push_back(v); });

        if (kept.empty())
            return DomainDelta::emptied();
        if (dropped.empty())
            return DomainDelta::unchanged();
        if (kept.size() == 1) {
            collapse_to(kept.front());
            return DomainDelta::instantiated(kept.front());
        }

        DomainDelta delta;
        delta.kind = DeltaKind::MultiChanged;
        delta.bound_changed = kept.front() != lo_ || kept.back() != hi_;
        for (auto v : dropped)
            if (v > kept.front() && v < kept.back())
                delta.excluded_inner.push_back(v);

        lo_ = kept.front();
        hi_ = kept.back();
        count_ = static_cast<Value>(kept.size());
        if (! delta.excluded_inner.empty()) {
            if (bits_.empty())
                materialize_bits();
            for (auto v : delta.excluded_inner)
                clear_bit(v);
        }
        normalize();
        return delta;
    }

    auto FiniteDomain::bind(Value v) -> DomainDelta
    {
        if (! contains(v))
            return DomainDelta::emptied();
        if (count_ == 1)
            return DomainDelta::unchanged();
        collapse_to(v);
        return DomainDelta::instantiated(v);
    }

    auto FiniteDomain::to_string() const -> std::string
    {
        std::ostringstream out;
        if (count_ == 0)
            out << "{}";
        else if (count_ == 1)
            out << lo_;
        else if (bits_.empty())
            out << lo_ << ".." << hi_;
        else {
            out << '{';
            bool first = true;
            for_each([&](Value v) {
                out << (first ? "" : ",") << v;
                first = false;
            });
            out << '}';
        }
        return out.str();
    }

    auto operator==(const FiniteDomain & a, const FiniteDomain & b) -> bool
    {
        if (a.count_ != b.count_ || a.lo_ != b.lo_ || a.hi_ != b.hi_ || a.bits_.empty() != b.bits_.empty())
            return false;
        if (a.bits_.empty())
            return true;
        for (Value v = a.lo_; v <= a.hi_; ++v)
            if (a.test_bit(v) != b.test_bit(v))
                return false;
        return true;
    }

    auto make_interval(Value lo, Value hi) -> FiniteDomain
    {
        return FiniteDomain::interval(lo, hi);
    }

    auto make_set(std::span<const Value> values) -> FiniteDomain
    {
        return FiniteDomain::of_values(values);
    }

    auto make_set(std::initializer_list<Value> values) -> FiniteDomain
    {
        return FiniteDomain::of_values(std::span<const Value>(values.begin(), values.size()));
    }

    auto exclude_value(FiniteDomain d, Value v) -> std::pair<FiniteDomain, DomainDelta>
    {
        auto delta = d.exclude(v);
        return {std::move(d), std::move(delta)};
    }

    auto intersect_range(FiniteDomain d, Value lo, Value hi) -> std::pair<FiniteDomain, DomainDelta>
    {
        auto delta = d.intersect(lo, hi);
        return {std::move(d), std::move(delta)};
    }

    auto is_subset_of(const FiniteDomain & d1, const FiniteDomain & d2, std::optional<Value> excluded_hint) -> bool
    {
        if (d1.size() > d2.size())
            return false;
        if (d1.min() < d2.min() || d1.max() > d2.max())
            return false;
        if (d2.is_interval())
            return true;
        if (excluded_hint && d1.contains(*excluded_hint))
            return false;

        bool subset = true;
        d1.for_each([&](Value v) {
            if (subset && ! d2.contains(v))
                subset = false;
        });
        return subset;
    }
}
