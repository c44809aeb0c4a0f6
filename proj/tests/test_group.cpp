#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "anomalia/group.hpp"

using namespace anomalia;

namespace {

/// Brute-force closure, independent of Subgroup::generated.
std::set<GroupElt> naive_closure(const FinAbGroup& g, const std::vector<GroupElt>& gens) {
    std::set<GroupElt> s{g.zero()};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<GroupElt> snapshot(s.begin(), s.end());
        for (const auto& a : snapshot)
            for (const auto& x : gens)
                if (s.insert(g.add(a, x)).second) grew = true;
    }
    return s;
}

std::multiset<std::int64_t> order_multiset(const FinAbGroup& g) {
    std::multiset<std::int64_t> m;
    for (const auto& a : g.elements()) m.insert(g.order_of(a));
    return m;
}

} // namespace

TEST_CASE("make_group basics") {
    CHECK(FinAbGroup({3, 3}).order() == 9);
    CHECK(FinAbGroup({9}).order() == 9);
    CHECK(FinAbGroup({1}).order() == 1);
    CHECK(FinAbGroup({}).order() == 1);
    CHECK(FinAbGroup({1}).elements().size() == 1);
    CHECK_THROWS_AS(FinAbGroup({0}), InvalidInputError);
    CHECK_THROWS_AS(FinAbGroup({-2}), InvalidInputError);
    CHECK(FinAbGroup({4, 6}).exponent() == 12);
}

TEST_CASE("element arithmetic") {
    FinAbGroup g({4, 6});
    CHECK(g.add({3, 5}, {2, 2}) == GroupElt{1, 1});
    CHECK(g.neg({1, 0}) == GroupElt{3, 0});
    CHECK(g.neg({0, 0}) == GroupElt{0, 0});
    CHECK(g.scaled(7, {1, 1}) == GroupElt{3, 1});
    CHECK(g.scaled(-1, {1, 2}) == GroupElt{3, 4});
    CHECK(g.order_of({2, 3}) == 2);
    CHECK(g.order_of({1, 1}) == 12);
    CHECK(g.order_of(g.zero()) == 1);
    CHECK_FALSE(g.contains({4, 0}));
    CHECK_THROWS_AS(g.require({0, 6}), InvalidInputError);

    for (const auto& a : g.elements()) CHECK(g.element_at(g.index_of(a)) == a);
}

TEST_CASE("subgroup closure matches naive closure") {
    FinAbGroup z9({9});
    auto h = Subgroup::generated(z9, {{3}});
    CHECK(h.order() == 3);
    CHECK(h.elements() == std::vector<GroupElt>{{0}, {3}, {6}});

    auto all = Subgroup::generated(z9, {{2}});
    CHECK(all.order() == 9);

    FinAbGroup z33({3, 3});
    auto line = Subgroup::generated(z33, {{1, 0}});
    CHECK(line.elements() == std::vector<GroupElt>{{0, 0}, {1, 0}, {2, 0}});

    FinAbGroup g({4, 6});
    std::vector<GroupElt> gens{{2, 3}, {0, 2}};
    auto sub = Subgroup::generated(g, gens);
    auto naive = naive_closure(g, gens);
    CHECK(std::set<GroupElt>(sub.elements().begin(), sub.elements().end()) == naive);

    CHECK_THROWS_AS(Subgroup::generated(z9, {{9}}), InvalidInputError);
}

TEST_CASE("all_subgroups_of_order counts") {
    FinAbGroup z33({3, 3});
    CHECK(all_subgroups_of_order(z33, 3).size() == 4);

    FinAbGroup z9({9});
    auto subs = all_subgroups_of_order(z9, 3);
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].elements() == std::vector<GroupElt>{{0}, {3}, {6}});

    FinAbGroup z2({2});
    auto triv = all_subgroups_of_order(z2, 1);
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].order() == 1);

    CHECK(all_subgroups_of_order(z9, 2).empty());
    CHECK_THROWS_AS(all_subgroups_of_order(FinAbGroup({300, 300}), 300, 20000),
                    ResourceLimitError);
}

TEST_CASE("Lagrange and quotient counting, exhaustive on small groups") {
    for (const auto& factors : std::vector<std::vector<std::int64_t>>{
             {12}, {2, 2, 3}, {8, 2}, {5, 5}, {2, 2, 2, 2}, {9, 3}, {6, 6}}) {
        FinAbGroup g(factors);
        REQUIRE(g.order() <= 200);
        for (const auto& h : all_subgroups(g)) {
            CHECK(g.order() % h.order() == 0);
            auto q = quotient(g, h);
            CHECK(q.group().order() * h.order() == g.order());
        }
    }
}

TEST_CASE("quotient structure and projection") {
    FinAbGroup z9({9});
    auto q = quotient(z9, Subgroup::generated(z9, {{3}}));
    CHECK(q.group().factors() == std::vector<std::int64_t>{3});
    // projection is a homomorphism with kernel exactly H
    for (const auto& a : z9.elements())
        for (const auto& b : z9.elements())
            CHECK(q.project(z9.add(a, b)) ==
                  q.group().add(q.project(a), q.project(b)));
    int kernel = 0;
    for (const auto& a : z9.elements())
        if (q.project(a) == q.group().zero()) ++kernel;
    CHECK(kernel == 3);

    FinAbGroup g91({9, 1});
    auto q2 = quotient(g91, Subgroup::generated(g91, {{6, 0}}));
    CHECK(q2.group().factors() == std::vector<std::int64_t>{3});

    auto q3 = quotient(z9, Subgroup::generated(z9, {{1}}));
    CHECK(q3.group().order() == 1);
    CHECK(q3.group().factors().empty());
}

TEST_CASE("quotient of a non-cyclic pattern") {
    // (Z4 x Z4) / <(2,2)> has order 8; invariant factors 2 | 4
    FinAbGroup g({4, 4});
    auto q = quotient(g, Subgroup::generated(g, {{2, 2}}));
    CHECK(q.group().factors() == std::vector<std::int64_t>{2, 4});
    // lift is a section: project(lift(x)) == x
    for (const auto& x : q.group().elements()) CHECK(q.project(q.lift(x)) == x);
}

TEST_CASE("canonicalize is idempotent and preserves element orders") {
    for (const auto& factors : std::vector<std::vector<std::int64_t>>{
             {6, 4}, {2, 2, 9}, {9, 1}, {1, 1}, {12, 18}, {2, 3, 5}}) {
        FinAbGroup g(factors);
        auto can = canonicalize(g);
        CHECK(order_multiset(g) == order_multiset(can.group()));
        auto again = canonicalize(can.group());
        CHECK(again.group().factors() == can.group().factors());
        // invariant-factor chain, no 1s
        const auto& fs = can.group().factors();
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) CHECK(fs[i + 1] % fs[i] == 0);
        for (const auto f : fs) CHECK(f > 1);
        // the projection is an isomorphism
        std::set<GroupElt> images;
        for (const auto& a : g.elements()) images.insert(can.project(a));
        CHECK(static_cast<std::int64_t>(images.size()) == g.order());
    }
    CHECK(canonicalize(FinAbGroup({12, 18})).group().factors() ==
          std::vector<std::int64_t>{6, 36});
}

TEST_CASE("dual pairing") {
    FinAbGroup z3({3});
    CHECK(dual_character(z3, {1}, {1}) == QmodZ(1, 3));
    CHECK(dual_character(z3, {0}, {2}) == QmodZ::zero());
    FinAbGroup z9({9});
    CHECK(dual_character(z9, {3}, {3}) == QmodZ::zero());
    CHECK_THROWS_AS(dual_character(z9, {9}, {0}), InvalidInputError);

    // bilinearity and nondegeneracy, exhaustive for |G| <= 200
    for (const auto& factors :
         std::vector<std::vector<std::int64_t>>{{8, 2}, {3, 3, 3}, {5, 5}, {12}}) {
        FinAbGroup g(factors);
        const auto elems = g.elements();
        for (const auto& chi : elems) {
            bool hits = false;
            for (const auto& x : elems) {
                if (!dual_character(g, chi, x).is_zero()) hits = true;
                for (const auto& y : elems)
                    CHECK(dual_character(g, chi, g.add(x, y)) ==
                          dual_character(g, chi, x) + dual_character(g, chi, y));
            }
            if (chi != g.zero()) CHECK(hits);
        }
    }
}
