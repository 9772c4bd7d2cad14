#include "katz/oracle.hpp"

#include "katz/error.hpp"

namespace katz {

namespace {

struct Line {
    PhasePart phase;
    long weight;
};

std::vector<Line> lines(const FormalType& v) {
    std::vector<Line> out;
    for (const auto& b : v.blocks())
        for (const auto& f : b.phase.conjugates()) out.push_back({f, static_cast<long>(b.unipotent * b.mult)});
    return out;
}

}  // namespace

Rational oracle_irreg_hom(const FormalType& v, const FormalType& w) {
    Rational total = 0;
    for (const auto& a : lines(v))
        for (const auto& b : lines(w)) total += (b.phase - a.phase).slope() * (a.weight * b.weight);
    return total;
}

long oracle_hor_hom(const FormalType& v, const FormalType& w) {
    long total = 0;
    for (const auto& bv : v.blocks())
        for (const auto& bw : w.blocks()) {
            if (bv.ram != bw.ram || !(bv.phase == bw.phase)) continue;
            if (!((bw.residue - bv.residue) * Scalar(static_cast<long>(bv.ram))).is_integer()) continue;
            total += static_cast<long>(std::min(bv.unipotent, bw.unipotent) * bv.mult * bw.mult);
        }
    return total;
}

long oracle_delta_hom(const FormalType& v, const FormalType& w) {
    Rational irreg = oracle_irreg_hom(v, w);
    if (irreg.get_den() != 1) fail(ErrorCode::OracleMismatch, "oracle irregularity " + irreg.get_str() + " is fractional");
    return irreg.get_num().get_si() + v.rank() * w.rank() - oracle_hor_hom(v, w);
}

void check_with_oracle(const FormalTypeDatum& d) {
    long rig = 2 * d.rank() * d.rank();
    for (const auto& [x, v] : d.entries()) {
        const FormalType end = hom(v, v);
        auto mismatch = [&](const std::string& what, const std::string& a, const std::string& b) {
            fail(ErrorCode::OracleMismatch, what + " at " + x.to_string() + ": block calculus " + a + ", oracle " + b);
        };
        Rational irreg_v = 0;
        for (const auto& l : lines(v)) irreg_v += l.phase.slope() * l.weight;
        if (irreg_v != v.irreg()) mismatch("irreg", v.irreg().get_str(), irreg_v.get_str());
        Rational irreg_end = oracle_irreg_hom(v, v);
        if (irreg_end != end.irreg()) mismatch("irreg(END)", end.irreg().get_str(), irreg_end.get_str());
        long delta_end = oracle_delta_hom(v, v);
        if (delta_end != end.delta()) mismatch("delta(END)", std::to_string(end.delta()), std::to_string(delta_end));
        rig -= delta_end;
    }
    if (rig != d.rigidity_index())
        fail(ErrorCode::OracleMismatch, "rig: block calculus " + std::to_string(d.rigidity_index()) + ", oracle " +
                                            std::to_string(rig));
}

}  // namespace katz
