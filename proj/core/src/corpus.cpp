#include "katz/corpus.hpp"

#include "katz/error.hpp"

namespace katz {

namespace {

Scalar q(long n, long d = 1) { return Scalar(frac(n, d)); }

FormalType regular(std::initializer_list<Scalar> residues) {
    std::vector<Block> blocks;
    for (const auto& r : residues) blocks.push_back(Block::regular(r));
    return FormalType(std::move(blocks));
}

Block ramified(long num, long den, const Scalar& coeff, const Scalar& residue) {
    PhasePart f = PhasePart::monomial(frac(num, den), coeff);
    return Block::make(f.ram(), f, residue);
}

const PointP1 kInf = PointP1::infinity();

CorpusEntry solvable(std::string name, std::string summary, FormalTypeDatum d, std::vector<long> ranks) {
    return {std::move(name), std::move(summary), std::move(d), 2, Verdict::Kind::Solvable, std::nullopt,
            std::move(ranks)};
}

}  // namespace

std::vector<std::string> corpus_names() {
    return {"trivial",     "kummer", "hypergeometric2", "hypergeometric3", "kloosterman", "airy",
            "gaussian",    "confluent", "rig4",         "rig0",            "unipotent-triple"};
}

CorpusEntry corpus_entry(const std::string& name, const std::optional<Rational>& lambda) {
    if (name == "trivial") return solvable(name, "trivial rank-one connection", FormalTypeDatum::trivial(1), {1});
    if (name == "kummer") {
        Rational l = lambda.value_or(frac(1, 3));
        if (l.get_den() == 1) fail(ErrorCode::InvalidArgument, "kummer needs a non-integer lambda");
        return solvable(name, "Kummer system d + lambda dz/z", kummer(Scalar(l)).normalized(), {1});
    }
    if (name == "hypergeometric2") {
        // generic exponents; the residue at infinity closes the determinant condition
        Scalar last = -(q(1, 5) + q(2, 5) + q(1, 7) + q(1, 11));
        FormalTypeDatum d(2, {{0L, regular({q(1, 5), q(2, 5)})},
                              {1L, regular({q(0), q(1, 7)})},
                              {kInf, regular({q(1, 11), last})}});
        return solvable(name, "rank-2 hypergeometric, three regular points", d.normalized(), {2, 1});
    }
    if (name == "hypergeometric3") {
        FormalTypeDatum d(3, {{0L, regular({q(1, 7), q(2, 7), q(4, 7)})},
                              {1L, FormalType({Block::regular(q(0), 1, 2), Block::regular(q(5, 11))})},
                              {kInf, regular({q(1, 11), q(2, 11), q(3, 11)})}});
        return solvable(name, "rank-3 hypergeometric, pseudo-reflection at 1", d.normalized(), {3, 2, 1});
    }
    if (name == "kloosterman") {
        FormalTypeDatum d(2, {{0L, FormalType({Block::regular(q(0), 2)})},
                              {kInf, FormalType({ramified(-1, 2, q(1), q(1, 4))})}});
        return solvable(name, "Kloosterman: unipotent at 0, slope 1/2 at infinity", d, {2, 1});
    }
    if (name == "airy") {
        FormalTypeDatum d(2, {{kInf, FormalType({ramified(-3, 2, q(1), q(1, 4))})}});
        return solvable(name, "Airy: single point at infinity of slope 3/2", d, {2, 1});
    }
    if (name == "gaussian") {
        FormalTypeDatum d(1, {{kInf, FormalType({Block::make(1, PhasePart::monomial(-2, q(1, 2)), q(0))})}});
        return solvable(name, "e^(z^2/2): slope 2 at infinity", d, {1});
    }
    if (name == "confluent") {
        FormalTypeDatum d(2, {{0L, regular({q(0), q(7, 15)})},
                              {kInf, FormalType({Block::regular(q(1, 3)),
                                                 Block::make(1, PhasePart::monomial(-1, q(1)), q(1, 5))})}});
        return solvable(name, "confluent hypergeometric: regular at 0, slopes 0 and 1 at infinity", d, {2, 1});
    }
    if (name == "rig4") {
        FormalTypeDatum d(2, {{0L, FormalType({Block::regular(q(1, 2), 1, 2)})},
                              {1L, regular({q(1, 3), q(2, 3)})},
                              {kInf, regular({q(1, 5), q(4, 5)})}});
        return {name, "scalar type at 0 forces rig 4", d, 4, Verdict::Kind::NoSolution,
                NoSolutionReason::RigExceedsTwo, {}};
    }
    if (name == "rig0") {
        FormalTypeDatum d(2, {{0L, regular({q(0), q(1, 3)})},
                              {1L, regular({q(0), q(1, 5)})},
                              {2L, regular({q(0), q(1, 7)})},
                              {kInf, regular({q(0), q(34, 105)})}});
        return {name, "four pseudo-reflections, rig 0 (Painleve VI type)", d, 0, Verdict::Kind::NotRigid,
                std::nullopt, {}};
    }
    if (name == "unipotent-triple") {
        FormalType j2({Block::regular(q(0), 2)});
        FormalTypeDatum d(2, {{0L, j2}, {1L, j2}, {kInf, j2}});
        return {name, "J(0,2) at three points: every twist has integer residue sum", d, 2,
                Verdict::Kind::NoSolution, NoSolutionReason::CaseIa, {}};
    }
    fail(ErrorCode::UnknownName, "no corpus entry named '" + name + "'");
}

}  // namespace katz
