#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "ciani/fields.hpp"

using namespace ciani;

namespace {

FieldElem rand_el(const FieldCtxPtr& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<uint64_t> d(0, *f->size() - 1);
    return f->element_at(d(rng));
}

FieldElem rand_nonzero(const FieldCtxPtr& f, std::mt19937_64& rng) {
    for (;;) {
        FieldElem x = rand_el(f, rng);
        if (!x.is_zero()) return x;
    }
}

// brute-force set of squares of a small field
std::set<uint64_t> square_indices(const FieldCtxPtr& f) {
    std::set<uint64_t> out;
    for (uint64_t k = 0; k < *f->size(); ++k) {
        FieldElem x = f->element_at(k);
        out.insert(f->index_of(x * x));
    }
    return out;
}

}  // namespace

TEST_CASE("make_field picks the smallest non-residue") {
    auto f9 = make_field(3, 2);
    CHECK(f9->step_constant().coord(0) == 2);  // the only non-residue mod 3

    auto f49 = make_field(7, 2);
    // independent derivation: smallest a in [2, p) that is no b^2 mod 7
    uint64_t expect = 0;
    for (uint64_t a = 2; a < 7 && expect == 0; ++a) {
        bool sq = false;
        for (uint64_t b = 1; b < 7; ++b) sq = sq || (b * b % 7 == a);
        if (!sq) expect = a;
    }
    CHECK(expect == 3);
    CHECK(f49->step_constant().coord(0) == expect);
}

TEST_CASE("make_field rejects bad moduli and bad overrides") {
    CHECK_THROWS_AS(make_field(9, 2), CompositeModulus);
    CHECK_THROWS_AS(make_field(2, 2), CompositeModulus);
    CHECK_THROWS_AS(make_field(1, 1), CompositeModulus);
    CHECK_THROWS_AS(make_field(7, 2, 2), NotANonResidue);  // 2 = 3^2 mod 7
    CHECK_THROWS_AS(make_field(7, 3), Error);
    CHECK_NOTHROW(make_field(7, 2, 5));
}

TEST_CASE("basic arithmetic") {
    auto f9 = make_field(3, 2);
    FieldElem i = f9->from_coords(std::vector<uint64_t>{0, 1});
    FieldElem one = f9->one();
    CHECK((one + i) * (one - i) == f9->from_int(2));
    CHECK(pow(i, 4) == one);
    CHECK(pow(i, 2) == f9->from_int(-1));

    auto f7 = make_field(7, 1);
    CHECK(inv(f7->from_int(3)) == f7->from_int(5));
    CHECK_THROWS_AS(inv(f7->zero()), DivisionByZero);

    auto f25 = make_field(5, 2);
    CHECK_THROWS_AS(f9->one() + f25->one(), CtxMismatch);
}

TEST_CASE("contexts compare by value") {
    auto a = make_field(7, 2);
    auto b = make_field(7, 2);
    CHECK(a->same_field(*b));
    CHECK(a->one() + b->from_int(2) == a->from_int(3));
    auto c = make_field(7, 2, 5);  // different d-chain
    CHECK_FALSE(a->same_field(*c));
    CHECK_THROWS_AS(a->one() + c->one(), CtxMismatch);
}

TEST_CASE("frobenius on F_9") {
    auto f9 = make_field(3, 2);
    FieldElem i = f9->from_coords(std::vector<uint64_t>{0, 1});
    FieldElem x = f9->one() + i;
    CHECK(frobenius(x) == f9->one() - i);
    CHECK(frobenius(f9->from_int(2)) == f9->from_int(2));
    for (uint64_t k = 0; k < 9; ++k) {
        FieldElem e = f9->element_at(k);
        CHECK(frobenius(e) == pow(e, 3));             // direct exponentiation
        CHECK(frobenius(frobenius(e)) == e);          // Galois order 2
    }
}

TEST_CASE("frobenius at level 4 has order 4 and fixes the level-2 subfield") {
    auto f4 = make_field(3, 4);
    std::mt19937_64 rng(11);
    for (int n = 0; n < 40; ++n) {
        FieldElem x = rand_el(f4, rng);
        CHECK(frobenius(x) == pow(x, 3));
        FieldElem y = frobenius(frobenius(frobenius(frobenius(x))));
        CHECK(y == x);
    }
    FieldElem sub = embed(f4->base()->element_at(5), f4);
    CHECK(frobenius(frobenius(sub)) == sub);
}

TEST_CASE("is_square against exhaustive tables") {
    for (auto [p, level] : std::vector<std::pair<uint64_t, int>>{{3, 2}, {7, 2}, {5, 2}, {7, 1}}) {
        auto f = make_field(p, level);
        auto squares = square_indices(f);
        for (uint64_t k = 0; k < *f->size(); ++k) {
            FieldElem x = f->element_at(k);
            CHECK(is_square(x) == (squares.count(k) > 0));
        }
    }
    auto f9 = make_field(3, 2);
    CHECK(is_square(f9->from_coords(std::vector<uint64_t>{0, 1})));  // i is a square in F_9
    CHECK(is_square(f9->zero()));
    auto f7 = make_field(7, 1);
    CHECK_FALSE(is_square(f7->from_int(3)));  // squares mod 7: {0,1,2,4}
}

TEST_CASE("is_fourth_power") {
    auto f9 = make_field(3, 2);
    FieldElem i = f9->from_coords(std::vector<uint64_t>{0, 1});
    CHECK(is_fourth_power(f9->from_int(2)));
    CHECK_FALSE(is_fourth_power(i));
    CHECK(is_fourth_power(f9->one()));
    CHECK(is_fourth_power(f9->zero()));

    // against exhaustive tables at levels 2 and 4
    for (auto [p, level] : std::vector<std::pair<uint64_t, int>>{{3, 2}, {5, 2}, {3, 4}}) {
        auto f = make_field(p, level);
        std::set<uint64_t> fourths;
        for (uint64_t k = 0; k < *f->size(); ++k) {
            FieldElem x = f->element_at(k);
            fourths.insert(f->index_of(x * x * x * x));
        }
        for (uint64_t k = 0; k < *f->size(); ++k)
            CHECK(is_fourth_power(f->element_at(k)) == (fourths.count(k) > 0));
    }

    auto f7 = make_field(7, 1);
    CHECK_THROWS_AS(is_fourth_power(f7->from_int(2)), FourDoesNotDivideGroupOrder);
    auto f13 = make_field(13, 1);
    std::set<uint64_t> fourths;
    for (uint64_t k = 1; k < 13; ++k) fourths.insert(k * k % 13 * (k * k % 13) % 13);
    for (uint64_t k = 1; k < 13; ++k)
        CHECK(is_fourth_power(f13->from_int(static_cast<int64_t>(k))) == (fourths.count(k) > 0));
}

TEST_CASE("sqrt returns the canonical root") {
    auto f7 = make_field(7, 1);
    CHECK(*sqrt(f7->from_int(4)) == f7->from_int(2));  // roots {2,5}, canonical 2
    CHECK_FALSE(sqrt(f7->from_int(3)).has_value());

    auto f9 = make_field(3, 2);
    FieldElem i = f9->from_coords(std::vector<uint64_t>{0, 1});
    // exhaust all nine candidates for the roots of X^2 = i
    std::vector<FieldElem> roots;
    for (uint64_t k = 0; k < 9; ++k) {
        FieldElem x = f9->element_at(k);
        if (x * x == i) roots.push_back(x);
    }
    REQUIRE(roots.size() == 2);
    FieldElem smallest = canonical_less(roots[0], roots[1]) ? roots[0] : roots[1];
    CHECK(*sqrt(i) == smallest);
}

TEST_CASE("extend / embed / try_descend") {
    auto f3 = make_field(3, 1);
    auto f9 = make_field(3, 2);
    CHECK(embed(f3->from_int(2), f9) == f9->from_int(2));

    auto f81 = extend(f9);
    CHECK(f81->level() == 4);
    FieldElem lifted = embed(f9->one(), f81);
    auto back = try_descend(lifted, f9);
    REQUIRE(back.has_value());
    CHECK(*back == f9->one());

    FieldElem j = f81->from_coords(std::vector<uint64_t>{0, 0, 1, 0});
    CHECK_FALSE(try_descend(j, f9).has_value());
    CHECK(j * j == embed(f81->step_constant(), f81));

    CHECK_THROWS_AS(embed(f3->one(), f81), CtxMismatch);
    CHECK(lift_into(f3->from_int(2), f81) == f81->from_int(2));

    // the descent criterion is exactly Frobenius-fixedness
    std::mt19937_64 rng(5);
    for (int n = 0; n < 60; ++n) {
        FieldElem x = rand_el(f81, rng);
        FieldElem rel = frobenius(frobenius(x));  // relative Frobenius for F_81 / F_9
        CHECK(try_descend(x, f9).has_value() == (rel == x));
    }
}

TEST_CASE("field axioms and group laws on random triples") {
    std::mt19937_64 rng(42);
    for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        for (int level : {1, 2, 4}) {
            auto f = make_field(p, level);
            const uint64_t q = *f->size();
            for (int n = 0; n < 25; ++n) {
                FieldElem a = rand_el(f, rng), b = rand_el(f, rng), c = rand_el(f, rng);
                CHECK((a + b) + c == a + (b + c));
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
                CHECK(a + (-a) == f->zero());
                if (!a.is_zero()) {
                    CHECK(a * inv(a) == f->one());
                    CHECK(pow(a, q - 1) == f->one());  // Lagrange
                }
                // multiplicativity of the quadratic character
                if (!a.is_zero() && !b.is_zero())
                    CHECK(is_square(a * b) == (is_square(a) == is_square(b)));
                // sqrt round trips
                if (auto r = sqrt(a)) CHECK(*r * *r == a);
                FieldElem sq = a * a;
                auto r2 = sqrt(sq);
                REQUIRE(r2.has_value());
                CHECK((*r2 == a || *r2 == -a));
                if (level >= 2 && is_fourth_power(a)) CHECK(is_square(a));
                CHECK(frobenius(a * b) == frobenius(a) * frobenius(b));
                CHECK(frobenius(a + b) == frobenius(a) + frobenius(b));
            }
        }
    }
}

TEST_CASE("element indexing is the canonical order") {
    auto f9 = make_field(3, 2);
    for (uint64_t k = 0; k + 1 < 9; ++k)
        CHECK(canonical_less(f9->element_at(k), f9->element_at(k + 1)));
    for (uint64_t k = 0; k < 9; ++k) CHECK(f9->index_of(f9->element_at(k)) == k);
}

TEST_CASE("nonresidue is the lexicographically smallest non-square") {
    for (auto [p, level] : std::vector<std::pair<uint64_t, int>>{{3, 2}, {5, 2}, {7, 2}, {3, 4}}) {
        auto f = make_field(p, level);
        FieldElem nqr = f->nonresidue();
        CHECK_FALSE(is_square(nqr));
        for (uint64_t k = 0; k < f->index_of(nqr); ++k)
            CHECK(is_square(f->element_at(k)));
    }
}

TEST_CASE("tower cap") {
    auto f81 = make_field(3, 4);
    auto f6561 = extend(f81);
    CHECK(f6561->level() == 8);
    CHECK(*f6561->size() == 6561);
    CHECK_THROWS_AS(extend(f6561), Error);
    // arithmetic still exact at level 8
    std::mt19937_64 rng(7);
    for (int n = 0; n < 10; ++n) {
        FieldElem a = rand_nonzero(f6561, rng);
        CHECK(a * inv(a) == f6561->one());
        CHECK(pow(a, 6560) == f6561->one());
        if (auto r = sqrt(a)) CHECK(*r * *r == a);
    }
}
