#include "doctest.h"
#include "pqi/common.hpp"

using pqi::Bitset;

TEST_CASE("bitset basic operations") {
    Bitset b(130);
    CHECK(b.count() == 0);
    CHECK(b.empty());
    b.set(0);
    b.set(64);
    b.set(129);
    CHECK(b.count() == 3);
    CHECK(b.test(64));
    CHECK_FALSE(b.test(63));
    CHECK(b.members() == std::vector<int>{0, 64, 129});
    b.reset(64);
    CHECK(b.members() == std::vector<int>{0, 129});

    Bitset c = Bitset::of(130, {0, 1, 129});
    CHECK(b.intersect_count(c) == 2);
    CHECK((b & c).members() == std::vector<int>{0, 129});
    CHECK((b | c).members() == std::vector<int>{0, 1, 129});
    CHECK(b.subset_of(c));
    CHECK_FALSE(c.subset_of(b));

    Bitset d = c;
    d.subtract(b);
    CHECK(d.members() == std::vector<int>{1});
}

TEST_CASE("bitset complement respects the universe size") {
    Bitset b = Bitset::of(67, {0, 66});
    Bitset c = b.complement();
    CHECK(c.count() == 65);
    CHECK_FALSE(c.test(0));
    CHECK_FALSE(c.test(66));
    CHECK(c.test(65));
}

TEST_CASE("bitset iteration") {
    Bitset b = Bitset::of(200, {3, 64, 65, 199});
    std::vector<int> seen;
    for (int i = b.find_first(); i >= 0; i = b.find_next(i)) seen.push_back(i);
    CHECK(seen == std::vector<int>{3, 64, 65, 199});
    CHECK(Bitset(10).find_first() == -1);
}

TEST_CASE("bitset sequence order matches index-list lexicographic order") {
    auto mk = [](std::vector<int> v) { return Bitset::of(100, v); };
    CHECK(Bitset::seq_less(mk({0, 2}), mk({0, 3})));
    CHECK(Bitset::seq_less(mk({0, 5}), mk({1, 2})));
    CHECK(Bitset::seq_less(mk({0, 2}), mk({0, 2, 5})));   // prefix first
    CHECK(Bitset::seq_less(mk({0, 2, 5}), mk({0, 2, 7})));
    CHECK_FALSE(Bitset::seq_less(mk({0, 2, 7}), mk({0, 2, 5})));
    CHECK_FALSE(Bitset::seq_less(mk({1, 2}), mk({0, 5})));
    CHECK_FALSE(Bitset::seq_less(mk({0, 2}), mk({0, 2})));

    std::vector<pqi::Bitset> v{mk({1, 2}), mk({0, 99}), mk({0, 2, 5}), mk({0, 2})};
    pqi::sort_sets(v);
    CHECK(v == std::vector<pqi::Bitset>{mk({0, 2}), mk({0, 2, 5}), mk({0, 99}), mk({1, 2})});
}

TEST_CASE("bitset out-of-range construction is a user error") {
    CHECK_THROWS_AS(Bitset::of(5, {5}), pqi::UserError);
    CHECK_THROWS_AS(Bitset::of(5, {-1}), pqi::UserError);
}
