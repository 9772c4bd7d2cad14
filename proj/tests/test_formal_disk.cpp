#include "katz/error.hpp"
#include "katz/oracle.hpp"
#include "support/commutant.hpp"
#include "support/random.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace katz;

namespace {

Scalar q(long n, long d = 1) { return Scalar(frac(n, d)); }
PhasePart mono(long n, long d, const Scalar& c = Scalar(1L)) { return PhasePart::monomial(frac(n, d), c); }
Block airy_block() { return Block::make(2, mono(-3, 2), q(0)); }

}  // namespace

TEST_CASE("local invariants") {
    LocalInvariants t = FormalType::trivial(3).invariants();
    CHECK(t.rank == 3);
    CHECK(t.irreg == 0);
    CHECK(t.hor == 3);
    CHECK(t.delta == 0);

    LocalInvariants h = FormalType({Block::regular(q(1, 2))}).invariants();
    CHECK(h.rank == 1);
    CHECK(h.hor == 0);
    CHECK(h.delta == 1);

    LocalInvariants e = FormalType({Block::make(1, mono(-1, 1), q(0))}).invariants();
    CHECK(e.irreg == 1);
    CHECK(e.hor == 0);
    CHECK(e.delta == 2);

    LocalInvariants a = FormalType({airy_block()}).invariants();
    CHECK(a.rank == 2);
    CHECK(a.irreg == 3);
    CHECK(a.slopes == std::vector<Rational>{frac(3, 2), frac(3, 2)});
    CHECK(a.delta == 5);
}

TEST_CASE("declared ramification must match the phase") {
    CHECK_THROWS_AS(Block::make(1, mono(-1, 2), q(0)), Error);
}

TEST_CASE("hom examples") {
    FormalType h = hom(FormalType({Block::regular(q(1, 3))}), FormalType({Block::regular(q(1, 2))}));
    CHECK(h == FormalType({Block::regular(q(1, 6))}));

    FormalType b({airy_block()});
    FormalType end = hom(b, b);
    CHECK(end == FormalType({Block::regular(q(0)), Block::regular(q(1, 2)), Block::make(2, mono(-3, 2, q(2)), q(0))}));
    CHECK(end.rank() == 4);
    CHECK(end.irreg() == 3);
    CHECK(end.hor() == 1);
    CHECK(end.delta() == 6);

    FormalType j({Block::regular(q(0), 2)});
    FormalType jj = hom(j, j);
    CHECK(jj == FormalType({Block::regular(q(0), 3), Block::regular(q(0), 1)}));
    CHECK(jj.hor() == 2);
    CHECK(jj.delta() == 2);
    CHECK(katz::testing::commutant_dimension(j, j) == 2);
}

TEST_CASE("hor of regular hom matches the commutant dimension") {
    katz::testing::Gen g(31);
    katz::testing::Gen::Shape s;
    s.irregular = 0;
    s.conductors = {1};
    for (int i = 0; i < 200; ++i) {
        FormalType v = g.formal_type(g.uniform(1, 4), s, 1), w = g.formal_type(g.uniform(1, 4), s, 1);
        CHECK(hom(v, w).hor() == katz::testing::commutant_dimension(v, w));
    }
}

TEST_CASE("hom against the conjugate-pair oracle") {
    katz::testing::Gen g(32);
    katz::testing::Gen::Shape s;
    s.max_ram = 4;
    s.max_pole = 3;
    for (int i = 0; i < 300; ++i) {
        unsigned long n = g.pick(s.conductors);
        FormalType v = g.formal_type(g.uniform(1, 5), s, n), w = g.formal_type(g.uniform(1, 5), s, n);
        FormalType h = hom(v, w);
        CHECK(h.rank() == v.rank() * w.rank());
        CHECK(h.irreg() == oracle_irreg_hom(v, w));
        CHECK(h.hor() == oracle_hor_hom(v, w));
        CHECK(h.delta() == oracle_delta_hom(v, w));
    }
}

TEST_CASE("hom, dual and tensor identities") {
    katz::testing::Gen g(33);
    katz::testing::Gen::Shape s;
    for (int i = 0; i < 200; ++i) {
        unsigned long n = g.pick(s.conductors);
        FormalType v = g.formal_type(g.uniform(1, 4), s, n), w = g.formal_type(g.uniform(1, 4), s, n);
        CHECK(dual(dual(v)) == v);
        CHECK(hom(v, w) == hom(dual(w), dual(v)));
        CHECK(hom(v, w) == dual(hom(w, v)));
        CHECK(hom(v, w).hor() == hom(w, v).hor());
        CHECK(direct_sum(v, w).delta() == v.delta() + w.delta());
        CHECK(direct_sum(v, w).irreg() == v.irreg() + w.irreg());
        CHECK(hom(v, direct_sum(w, w)) == direct_sum(hom(v, w), hom(v, w)));
        Block ell = Block::make(1, g.phase(1, 2, n, false), g.residue(n, false));
        Block ell_dual = Block::make(1, -ell.phase, -ell.residue);
        CHECK(tensor_rank_one(tensor_rank_one(v, ell), ell_dual) == v);
        CHECK(hom(tensor_rank_one(v, ell), tensor_rank_one(w, ell)) == hom(v, w));
    }
}

TEST_CASE("tensor with a rank-one block") {
    CHECK(tensor_rank_one(FormalType::trivial(2), Block::regular(q(1, 2))) ==
          FormalType({Block::regular(q(1, 2), 1, 2)}));
    FormalType t = tensor_rank_one(FormalType({Block::make(1, mono(-1, 1), q(0))}), Block::make(1, mono(-1, 1, q(-1)), q(0)));
    CHECK(t.is_trivial());
    FormalType a = tensor_rank_one(FormalType({airy_block()}), Block::make(1, mono(-2, 1), q(0)));
    CHECK(a == FormalType({Block::make(2, mono(-2, 1) + mono(-3, 2), q(0))}));
}

TEST_CASE("minimizing components") {
    FormalType v({Block::regular(q(0), 1, 2), Block::regular(q(1, 2))});
    CHECK(component_score(Component{1, PhasePart(), q(0)}, v) == 1);
    CHECK(component_score(Component{1, PhasePart(), q(1, 2)}, v) == 2);
    auto mins = min_delta_components(v);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].residue.is_integer());

    auto airy = min_delta_components(FormalType({airy_block()}));
    REQUIRE(airy.size() == 1);
    CHECK(airy[0].ram == 2);

    auto tie = min_delta_components(FormalType({Block::regular(q(1, 3)), Block::regular(q(1, 2))}));
    CHECK(tie.size() == 2);
}

TEST_CASE("best rank-one approximation") {
    CHECK(best_rank_one_approx(Component{2, mono(-3, 2), q(0)}).phase.is_zero());
    Block b = best_rank_one_approx(Component{2, mono(-2, 1) + mono(-3, 2), q(0)});
    CHECK(b.phase == mono(-2, 1));
    CHECK((mono(-2, 1) + mono(-3, 2) - b.phase).slope() == frac(3, 2));
    Block r = best_rank_one_approx(Component{1, PhasePart(), q(1, 3)});
    CHECK(r.phase.is_zero());
    CHECK(r.residue.is_zero());
}

TEST_CASE("minimizers attain the least score") {
    katz::testing::Gen g(34);
    katz::testing::Gen::Shape s;
    for (int i = 0; i < 100; ++i) {
        unsigned long n = g.pick(s.conductors);
        FormalType v = g.formal_type(g.uniform(1, 4), s, n);
        for (const auto& c : min_delta_components(v))
            for (const auto& other : components(v)) CHECK(component_score(c, v) <= component_score(other, v));
    }
}
