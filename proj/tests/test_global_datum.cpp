#include "katz/corpus.hpp"
#include "katz/error.hpp"
#include "katz/oracle.hpp"
#include "support/commutant.hpp"
#include "support/random.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace katz;

namespace {

Scalar q(long n, long d = 1) { return Scalar(frac(n, d)); }
FormalType reg(std::initializer_list<Scalar> rs) {
    std::vector<Block> b;
    for (const auto& r : rs) b.push_back(Block::regular(r));
    return FormalType(b);
}
const PointP1 kInf = PointP1::infinity();

bool has(const std::vector<Violation>& vs, Violation::Kind k) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("points of P1") {
    CHECK(PointP1::parse("inf").is_infinity());
    CHECK(PointP1::parse("-1/2").value() == frac(-1, 2));
    CHECK(PointP1(0L) < PointP1(1L));
    CHECK(PointP1(5L) < kInf);
    CHECK_THROWS_AS(PointP1::parse("oo"), Error);
}

TEST_CASE("validate") {
    FormalTypeDatum ok(1, {{0L, reg({q(1, 3)})}, {1L, reg({q(2, 3)})}});
    CHECK(ok.validate().empty());
    FormalTypeDatum det(1, {{0L, reg({q(1, 3)})}, {1L, reg({q(1, 3)})}});
    CHECK(has(det.validate(), Violation::Kind::Determinant));
    FormalTypeDatum mixed(2, {{0L, reg({q(1, 3), q(2, 3)})}, {1L, reg({q(1, 2), q(1, 2), q(0)})}});
    auto vs = mixed.validate();
    REQUIRE(has(vs, Violation::Kind::ConstantRank));
    CHECK(vs.front().message.find("constant-rank violated") != std::string::npos);
    FormalTypeDatum triv(1, {{0L, FormalType::trivial(1)}});
    CHECK(has(triv.validate(), Violation::Kind::TrivialEntry));
    CHECK(triv.normalized().validate().empty());
}

TEST_CASE("euler characteristic") {
    CHECK(FormalTypeDatum::trivial(1).euler_char() == 2);
    CHECK(FormalTypeDatum(1, {{0L, reg({q(1, 2)})}, {kInf, reg({q(1, 2)})}}).euler_char() == 0);
    FormalTypeDatum e(1, {{kInf, FormalType({Block::make(1, PhasePart::monomial(-1, q(1)), q(0))})}});
    CHECK(e.euler_char() == 0);
}

TEST_CASE("rigidity index of the corpus") {
    for (const auto& name : corpus_names()) {
        CorpusEntry e = corpus_entry(name);
        INFO(name);
        CHECK(e.datum.is_valid());
        CHECK(e.datum.rigidity_index() == e.rig);
        check_with_oracle(e.datum);
    }
    FormalTypeDatum kl = corpus_entry("kloosterman").datum;
    CHECK(hom(kl.at(0L), kl.at(0L)).delta() == 2);
    CHECK(hom(kl.at(kInf), kl.at(kInf)).delta() == 4);
}

TEST_CASE("rigidity index of regular data matches commutant dimensions") {
    // rig = 2 r^2 - sum (r^2 - dim commutant) for regular data
    FormalTypeDatum h = corpus_entry("hypergeometric3").datum;
    long rig = 2 * h.rank() * h.rank();
    for (const auto& [x, v] : h.entries()) rig -= h.rank() * h.rank() - katz::testing::commutant_dimension(v, v);
    CHECK(rig == h.rigidity_index());
    CHECK(rig == 2);
}

TEST_CASE("rig is even and bounded by two for rank one") {
    katz::testing::Gen g(41);
    katz::testing::Gen::Shape s;
    for (int i = 0; i < 200; ++i) {
        FormalTypeDatum d = g.datum(s);
        CHECK(d.rigidity_index() % 2 == 0);
        CHECK(d.end().rank() == d.rank() * d.rank());
        if (d.rank() == 1) CHECK(d.rigidity_index() == 2);
        CHECK(d.normalized().rigidity_index() == d.rigidity_index());
    }
}

TEST_CASE("classification and moduli dimension") {
    CHECK(classify_rig(2) == RigClass::RigidCandidate);
    CHECK(classify_rig(0) == RigClass::RigidityZero);
    CHECK(classify_rig(4) == RigClass::Overdetermined);
    CHECK(classify_rig(-2) == RigClass::Underdetermined);
    CHECK(corpus_entry("hypergeometric2").datum.moduli_dimension() == 0);
    CHECK(corpus_entry("rig0").datum.moduli_dimension() == 2);
    try {
        (void)corpus_entry("rig4").datum.moduli_dimension();
        FAIL("expected RigTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RigTooLarge);
    }
}

TEST_CASE("twist residue gap") {
    FormalTypeDatum d(1, {{0L, reg({q(1, 3)})}, {1L, reg({q(2, 3)})}});
    auto pick = [](const Scalar& r) { return Component{1, PhasePart(), r}; };
    CHECK(d.twist_residue_gap({{0L, pick(q(1, 3))}, {1L, pick(q(2, 3))}, {kInf, pick(q(0))}}).is_zero());
    ResidueClass gap = d.twist_residue_gap({{0L, pick(q(1, 3))}, {1L, pick(q(1, 3))}, {kInf, pick(q(0))}});
    CHECK(gap == ResidueClass(q(2, 3)));
    CHECK(d.twist_residue_gap({{0L, pick(q(1, 2))}}) == ResidueClass(q(1, 2)));
    CHECK_THROWS_AS(d.twist_residue_gap({{0L, Component{2, PhasePart::monomial(frac(-1, 2), q(1)), q(0)}}}), Error);
}

TEST_CASE("determinant residue") {
    CHECK(detres(Block::regular(q(1, 3), 2, 3)) == q(2));
    // ram-2 block: 2 lambda + 1/2
    CHECK(detres(Block::make(2, PhasePart::monomial(frac(-1, 2), q(1)), q(1, 4))) == q(1));
    CHECK(corpus_entry("airy").datum.determinant_residue().is_integer());
}
