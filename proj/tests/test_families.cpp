#include <doctest.h>

#include <random>

#include "nds/families.hpp"

using namespace nds;

namespace {

WindowedIndexSet from_mask(int h, unsigned mask) {
    std::vector<int> v;
    for (int n = 1; n <= h; ++n)
        if (mask >> (n - 1) & 1u) v.push_back(n);
    return WindowedIndexSet(h, v);
}

WindowedIndexSet every(int h, int step, int start) {
    std::vector<int> v;
    for (int n = start; n <= h; n += step) v.push_back(n);
    return WindowedIndexSet(h, v);
}

// direct readings of the membership rules
bool infinite_ref(const WindowedIndexSet& s, int m, double tf) {
    int count = 0;
    bool tail = false;
    for (int n : s.indices()) {
        ++count;
        if (n > (1.0 - tf) * s.horizon()) tail = true;
    }
    return count >= m && tail;
}

bool cofinite_ref(const WindowedIndexSet& s, int m) {
    int h = s.horizon(), missing = 0;
    for (int n = 1; n <= h; ++n) {
        if (!s.contains(n)) {
            ++missing;
            if (n > h - m) return false;
        }
    }
    return missing <= m;
}

bool syndetic_ref(const WindowedIndexSet& s, int g) {
    int last = 0;
    for (int n = 1; n <= s.horizon() + 1; ++n) {
        if (n == s.horizon() + 1 || s.contains(n)) {
            if (n - last > g) return false;
            last = n;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("families") {

TEST_CASE("window set algebra") {
    WindowedIndexSet a(10, {1, 3, 5}), b(10, {3, 4});
    CHECK(a.intersect(b).indices() == std::vector<int>{3});
    CHECK(a.unite(b).indices() == std::vector<int>{1, 3, 4, 5});
    CHECK(a.complement().size() == 7);
    CHECK(a.complement().complement() == a);
    CHECK(WindowedIndexSet(10, {3}).subset_of(a));
    CHECK(WindowedIndexSet(10, {5, 1, 5}).indices() == std::vector<int>{1, 5});
    CHECK_THROWS(WindowedIndexSet(10, {11}));
    CHECK_THROWS(WindowedIndexSet(10, {0}));
}

TEST_CASE("max gap counts the window ends") {
    CHECK(WindowedIndexSet(10).max_gap() == 11);
    CHECK(WindowedIndexSet(10, {5}).max_gap() == 6);
    CHECK(WindowedIndexSet::full(10).max_gap() == 1);
    CHECK(every(100, 2, 2).max_gap() == 2);
}

TEST_CASE("infinite surrogate") {
    CHECK(member(InfiniteFamily{10, 0.25}, every(100, 2, 2)));
    CHECK_FALSE(member(InfiniteFamily{10, 0.25}, every(100, 10, 1).intersect(WindowedIndexSet(100, {1, 11, 21}))));
    CHECK_FALSE(member(InfiniteFamily{10, 0.25}, WindowedIndexSet(100, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12})));
}

TEST_CASE("syndetic surrogate") {
    CHECK(member(SyndeticFamily{2}, every(100, 2, 2)));
    CHECK_FALSE(member(SyndeticFamily{2}, every(100, 3, 3)));
    CHECK_FALSE(member(SyndeticFamily{2}, WindowedIndexSet(100)));
}

TEST_CASE("cofinite surrogate") {
    auto s = WindowedIndexSet::full(50).intersect(WindowedIndexSet(50, {1, 2, 3}).complement());
    CHECK(member(CofiniteFamily{5}, s));
    CHECK_FALSE(member(CofiniteFamily{2}, s));
    CHECK_FALSE(member(CofiniteFamily{5}, WindowedIndexSet(50, {50}).complement()));
}

TEST_CASE("membership agrees with the rules on every subset") {
    const int h = 12;
    for (unsigned mask = 0; mask < (1u << h); ++mask) {
        auto s = from_mask(h, mask);
        CHECK(member(NonemptyFamily{}, s) == !s.empty());
        CHECK(member(InfiniteFamily{3, 0.25}, s) == infinite_ref(s, 3, 0.25));
        CHECK(member(CofiniteFamily{2}, s) == cofinite_ref(s, 2));
        CHECK(member(SyndeticFamily{3}, s) == syndetic_ref(s, 3));
        // dual: S in k(F) iff every F-member meets S
        bool meets_all = true;
        for (unsigned other = 0; other < (1u << h) && meets_all; ++other) {
            auto t = from_mask(h, other);
            if (cofinite_ref(t, 2) && s.intersect(t).empty()) meets_all = false;
        }
        CHECK(member(dual(CofiniteFamily{2}), s) == meets_all);
    }
}

TEST_CASE("dual is an involution") {
    FamilySpec f = InfiniteFamily{4, 0.5};
    CHECK(dual(dual(f)) == f);
    CHECK(member(dual(InfiniteFamily{1, 1.0}), WindowedIndexSet::full(20)));
    CHECK_FALSE(member(dual(InfiniteFamily{1, 1.0}), WindowedIndexSet(20, {1})));
    CHECK(dual(f).describe() != f.describe());
}

TEST_CASE("nesting: cofinite within syndetic within infinite within nonempty") {
    std::mt19937_64 rng(17);
    const int h = 200;
    for (int t = 0; t < 2000; ++t) {
        std::bernoulli_distribution keep(t % 2 ? 0.99 : 0.6);
        std::vector<int> v;
        for (int n = 1; n <= h; ++n)
            if (keep(rng)) v.push_back(n);
        WindowedIndexSet s(h, v);
        if (member(CofiniteFamily{20}, s)) CHECK(member(SyndeticFamily{21}, s));
        if (member(SyndeticFamily{20}, s)) CHECK(member(InfiniteFamily{9, 0.25}, s));
        if (member(InfiniteFamily{}, s)) CHECK(member(NonemptyFamily{}, s));
    }
}

TEST_CASE("translation") {
    WindowedIndexSet s(10, {2, 5, 9});
    CHECK(translate(s, 1).indices() == std::vector<int>{3, 6});
    CHECK(translate(s, -1).indices() == std::vector<int>{1, 4, 8});
    CHECK(translate(s, 0) == s);
    std::vector<WindowedIndexSet> samples{every(100, 2, 2), every(100, 3, 1)};
    CHECK(translation_probe(SyndeticFamily{6}, samples, 3).passed());
}

TEST_CASE("filterdual probe") {
    std::vector<WindowedIndexSet> samples{every(20, 2, 2), every(20, 2, 1)};
    auto r = filterdual_probe(InfiniteFamily{1, 0.25}, samples);
    CHECK(r.dual_members == 0);

    std::vector<WindowedIndexSet> all;
    for (unsigned mask = 0; mask < (1u << 10); ++mask) all.push_back(from_mask(10, mask));
    CHECK(filterdual_probe(InfiniteFamily{1, 0.25}, all).passed());
    CHECK_FALSE(filterdual_probe(InfiniteFamily{10, 0.25}, all).passed());
    CHECK_FALSE(filterdual_probe(CofiniteFamily{2}, all).passed());
}

}
