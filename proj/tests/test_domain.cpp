#include <actfd/domain.hpp>

#include <doctest.h>

#include <random>
#include <set>

using namespace actfd;

namespace
{
    auto as_set(const FiniteDomain & d) -> std::set<Value>
    {
        auto v = d.values();
        return {v.begin(), v.end()};
    }

    auto random_domain(std::mt19937_64 & rng) -> FiniteDomain
    {
        std::uniform_int_distribution<Value> lo_d(-6, 6), len_d(0, 12), coin(0, 2);
        auto lo = lo_d(rng);
        auto hi = lo + len_d(rng);
        std::vector<Value> vals;
        for (auto v = lo; v <= hi; ++v)
            if (coin(rng) != 0)
                vals.push_back(v);
        if (vals.empty())
            vals.push_back(lo);
        return make_set(vals);
    }

    auto check_representation(const FiniteDomain & d) -> void
    {
        Value n = 0;
        for (auto w = d.min(); w <= d.max(); ++w)
            n += d.contains(w) ? 1 : 0;
        CHECK(n == d.size());
        CHECK(d.contains(d.min()));
        CHECK(d.contains(d.max()));
        CHECK(d.is_interval() == (d.size() == d.max() - d.min() + 1));
    }
}

TEST_CASE("make_interval")
{
    auto d = make_interval(1, 5);
    CHECK(d.size() == 5);
    CHECK(d.is_interval());
    CHECK(d.to_string() == "1..5");
    CHECK(make_interval(3, 3).is_singleton());
    auto n = make_interval(-4, 4);
    CHECK(n.size() == 9);
    CHECK(n.min() == -4);
    CHECK_THROWS_AS((void)make_interval(5, 1), DomainError);
    CHECK_THROWS_AS((void)make_interval(0, Value(1) << 21), DomainError);
}

TEST_CASE("make_set")
{
    auto d = make_set({2, 4, 5});
    CHECK(d.min() == 2);
    CHECK(d.max() == 5);
    CHECK(d.size() == 3);
    CHECK_FALSE(d.contains(3));
    CHECK_FALSE(d.is_interval());
    CHECK(d.to_string() == "{2,4,5}");

    auto c = make_set({3, 1, 2, 2});
    CHECK(c.is_interval());
    CHECK(c == make_interval(1, 3));
    CHECK(make_set({7}).is_singleton());
    CHECK_THROWS_AS((void)make_set(std::vector<Value>{}), DomainError);
}

TEST_CASE("exclude_value")
{
    auto [a, da] = exclude_value(make_interval(1, 5), 3);
    CHECK(a == make_set({1, 2, 4, 5}));
    CHECK(da.kind == DeltaKind::InnerExcluded);
    CHECK(da.value == 3);

    auto [b, db] = exclude_value(make_interval(1, 5), 1);
    CHECK(b == make_interval(2, 5));
    CHECK(db.kind == DeltaKind::BoundChanged);

    auto [c, dc] = exclude_value(make_interval(3, 3), 3);
    CHECK(dc.kind == DeltaKind::Emptied);
    CHECK(c == make_interval(3, 3));

    auto [d, dd] = exclude_value(make_interval(1, 5), 9);
    CHECK(dd.kind == DeltaKind::Unchanged);
    CHECK(d == make_interval(1, 5));

    auto [e, de] = exclude_value(make_set({2, 4}), 2);
    CHECK(e == make_interval(4, 4));
    CHECK(de.kind == DeltaKind::Instantiated);
    CHECK(de.value == 4);

    SUBCASE("bound removal skips holes")
    {
        auto [f, df] = exclude_value(make_set({1, 4, 5}), 1);
        CHECK(f.min() == 4);
        CHECK(f.is_interval());
        CHECK(df.kind == DeltaKind::BoundChanged);
    }
}

TEST_CASE("intersect_range")
{
    auto [a, da] = intersect_range(make_interval(1, 5), 2, 9);
    CHECK(a == make_interval(2, 5));
    CHECK(da.kind == DeltaKind::BoundChanged);

    auto [b, db] = intersect_range(make_interval(1, 5), -10, 4);
    CHECK(b == make_interval(1, 4));
    CHECK(db.kind == DeltaKind::BoundChanged);

    auto [c, dc] = intersect_range(make_set({2, 4, 5}), 3, 10);
    CHECK(c == make_interval(4, 5));
    CHECK(dc.kind == DeltaKind::BoundChanged);

    auto [d, dd] = intersect_range(make_interval(1, 5), 6, 9);
    CHECK(dd.kind == DeltaKind::Emptied);
    CHECK(d == make_interval(1, 5));

    auto [e, de] = intersect_range(make_interval(1, 5), 0, 9);
    CHECK(de.kind == DeltaKind::Unchanged);

    auto [f, df] = intersect_range(make_set({1, 3, 5}), 2, 4);
    CHECK(df.kind == DeltaKind::Instantiated);
    CHECK(df.value == 3);
}

TEST_CASE("is_subset_of")
{
    CHECK(is_subset_of(make_set({1, 2}), make_interval(1, 3)));
    CHECK_FALSE(is_subset_of(make_interval(1, 4), make_interval(2, 9)));
    CHECK(is_subset_of(make_set({1, 2, 5}), make_set({1, 2, 4, 5}), 3));
    CHECK_FALSE(is_subset_of(make_set({1, 3}), make_set({1, 2, 4, 5}), 3));
    CHECK_FALSE(is_subset_of(make_interval(1, 3), make_set({1, 2})));
}

TEST_CASE("bind and iteration")
{
    auto d = make_set({1, 3, 7});
    CHECK(d.values() == std::vector<Value>{1, 3, 7});
    CHECK(d.next_above(3) == 7);
    CHECK(d.next_above(7) == std::nullopt);
    CHECK(d.next_below(3) == 1);
    auto delta = d.bind(3);
    CHECK(delta.kind == DeltaKind::Instantiated);
    CHECK(d.to_string() == "3");
    auto e = make_set({1, 3, 7});
    CHECK(e.bind(2).kind == DeltaKind::Emptied);
    CHECK(e == make_set({1, 3, 7}));
}

TEST_CASE("restrict_to")
{
    auto d = make_interval(1, 9);
    auto delta = d.restrict_to(make_set({0, 2, 5, 6, 10}));
    CHECK(d == make_set({2, 5, 6}));
    CHECK(delta.kind == DeltaKind::MultiChanged);
    CHECK(delta.bound_changed);
}

TEST_CASE("property: operations agree with a reference set")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Value> val(-8, 20);
    for (int iter = 0; iter < 3000; ++iter) {
        auto d = random_domain(rng);
        check_representation(d);
        auto ref = as_set(d);

        auto v = val(rng);
        auto [e, de] = exclude_value(d, v);
        auto ref_e = ref;
        ref_e.erase(v);
        if (ref_e.empty())
            CHECK(de.kind == DeltaKind::Emptied);
        else {
            CHECK(as_set(e) == ref_e);
            CHECK_FALSE(e.contains(v));
            check_representation(e);
            if (! ref.count(v))
                CHECK(de.kind == DeltaKind::Unchanged);
            else if (ref_e.size() == 1)
                CHECK(de.kind == DeltaKind::Instantiated);
            else if (v == d.min() || v == d.max())
                CHECK(de.kind == DeltaKind::BoundChanged);
            else
                CHECK(de.kind == DeltaKind::InnerExcluded);
        }

        auto lo = val(rng), hi = lo + val(rng) / 2;
        auto [r, dr] = intersect_range(d, lo, hi);
        CHECK(dr.kind != DeltaKind::InnerExcluded);
        std::set<Value> ref_r;
        for (auto x : ref)
            if (x >= lo && x <= hi)
                ref_r.insert(x);
        if (ref_r.empty())
            CHECK(dr.kind == DeltaKind::Emptied);
        else {
            CHECK(as_set(r) == ref_r);
            check_representation(r);
        }
    }
}

TEST_CASE("property: subset shortcuts equal a plain scan")
{
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 5000; ++iter) {
        auto d1 = random_domain(rng), d2 = random_domain(rng);
        auto s1 = as_set(d1), s2 = as_set(d2);
        bool expected = std::includes(s2.begin(), s2.end(), s1.begin(), s1.end());
        CHECK(is_subset_of(d1, d2) == expected);

        // A hint must be a value that is no longer in d2.
        std::uniform_int_distribution<Value> val(-8, 20);
        auto h = val(rng);
        if (! d2.contains(h))
            CHECK(is_subset_of(d1, d2, h) == expected);
    }
}
