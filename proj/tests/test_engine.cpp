#include "katz/corpus.hpp"
#include "katz/engine.hpp"
#include "katz/error.hpp"
#include "katz/io.hpp"
#include "support/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>

using namespace katz;

namespace {

FormalTypeDatum corpus(const std::string& name) { return corpus_entry(name).datum.normalized(); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("step selection") {
    CHECK(std::holds_alternative<RankOne>(select_step(corpus("kummer"))));
    CHECK(std::holds_alternative<RankOne>(select_step(corpus("trivial"))));

    auto hyp = select_step(corpus("hypergeometric2"));
    REQUIRE(std::holds_alternative<ReductionStep>(hyp));
    CHECK(std::get<ReductionStep>(hyp).kind == ReductionStep::Kind::TwistMC);
    CHECK(!std::get<ReductionStep>(hyp).lambda.is_integer());

    auto kl = select_step(corpus("kloosterman"));
    REQUIRE(std::holds_alternative<ReductionStep>(kl));
    CHECK(std::get<ReductionStep>(kl).kind == ReductionStep::Kind::TwistMoebiusFT);
    CHECK(std::get<ReductionStep>(kl).phi.is_identity());
}

TEST_CASE("select_step rejects non-rigid data") {
    CHECK(code_of([] { select_step(corpus("rig4")); }) == ErrorCode::NotRigidInput);
}

TEST_CASE("corpus verdicts") {
    for (const auto& name : corpus_names()) {
        CorpusEntry e = corpus_entry(name);
        INFO(name);
        CHECK(e.datum.is_valid());
        CHECK(e.datum.rigidity_index() == e.rig);
        Verdict v = solve_ds(e.datum);
        CHECK(v.kind == e.verdict);
        if (e.reason) CHECK(v.reason == *e.reason);
        if (v.kind == Verdict::Kind::Solvable) {
            std::vector<long> ranks{v.trace.initial.rank()};
            for (const auto& s : v.trace.steps) ranks.push_back(s.rank_after);
            CHECK(ranks == e.ranks);
            CHECK(v.trace.terminal.rank() == 1);
            CHECK(replay(v.trace, ReplayDirection::Forward) == v.trace.terminal);
            CHECK(replay(v.trace, ReplayDirection::Backward) == v.trace.initial);
            CHECK(!certificate(v).empty());
        }
        if (v.kind == Verdict::Kind::NotRigid) CHECK(v.rig == e.rig);
    }
}

TEST_CASE("steps are invertible") {
    for (const auto& name : {"hypergeometric2", "hypergeometric3", "kloosterman", "airy", "gaussian", "confluent"}) {
        INFO(name);
        Verdict v = reduce(corpus(name));
        REQUIRE(v.kind == Verdict::Kind::Solvable);
        FormalTypeDatum cur = v.trace.initial;
        for (const auto& s : v.trace.steps) {
            auto next = apply_step(cur, s);
            REQUIRE(std::holds_alternative<FormalTypeDatum>(next));
            FormalTypeDatum n = std::get<FormalTypeDatum>(next).normalized();
            CHECK(n.rank() == s.rank_after);
            CHECK(n.rigidity_index() == s.rig_after);
            auto back = undo_step(n, s);
            REQUIRE(std::holds_alternative<FormalTypeDatum>(back));
            CHECK(std::get<FormalTypeDatum>(back).normalized() == cur);
            cur = n;
        }
        CHECK(cur == v.trace.terminal);
    }
}

TEST_CASE("ranks strictly decrease and rig stays 2") {
    katz::testing::Gen g(71);
    int solved = 0;
    for (int i = 0; i < 60; ++i) {
        katz::testing::Gen::Shape s;
        s.max_rank = 3;
        s.max_ram = 2;
        s.conductors = {1};
        s.in_field = true;
        FormalTypeDatum d = g.datum(s);
        if (d.rigidity_index() != 2) continue;
        Verdict v = reduce(d);
        if (v.kind != Verdict::Kind::Solvable) continue;
        long prev = d.rank();
        for (const auto& st : v.trace.steps) {
            CHECK(st.rank_after < prev);
            CHECK(st.rig_after == 2);
            prev = st.rank_after;
        }
        ++solved;
    }
    CHECK(solved > 0);
}

TEST_CASE("replay") {
    OperationTrace empty{corpus("kummer"), {}, corpus("kummer")};
    CHECK(replay(empty, ReplayDirection::Forward) == empty.terminal);
    CHECK(replay(empty, ReplayDirection::Backward) == empty.initial);

    Verdict v = reduce(corpus("hypergeometric2"));
    REQUIRE(!v.trace.steps.empty());
    OperationTrace bad = v.trace;
    bad.steps.front().lambda += Scalar(frac(1, 7));
    CHECK(code_of([&] { replay(bad, ReplayDirection::Forward); }) == ErrorCode::ReplayMismatch);

    OperationTrace wrong_end = v.trace;
    wrong_end.terminal = corpus("kummer");
    CHECK(code_of([&] { replay(wrong_end, ReplayDirection::Forward); }) == ErrorCode::ReplayMismatch);
}

TEST_CASE("solve_ds input checks") {
    FormalTypeDatum bad(1, {{0L, FormalType({Block::regular(Scalar(frac(1, 3)))})}});
    CHECK(code_of([&] { solve_ds(bad); }) == ErrorCode::InvalidDatum);

    Verdict r4 = solve_ds(corpus("rig4"));
    CHECK(r4.kind == Verdict::Kind::NoSolution);
    CHECK(r4.reason == NoSolutionReason::RigExceedsTwo);

    Verdict r0 = solve_ds(corpus("rig0"));
    CHECK(r0.kind == Verdict::Kind::NotRigid);
    CHECK(r0.rig == 0);
}

TEST_CASE("certificate lists every step") {
    Verdict v = reduce(corpus("hypergeometric3"));
    REQUIRE(v.kind == Verdict::Kind::Solvable);
    std::string c = certificate(v);
    std::size_t lines = std::count(c.begin(), c.end(), '\n');
    CHECK(lines >= v.trace.steps.size());
}
