#include "katz/engine.hpp"

#include "katz/error.hpp"

#include <algorithm>
#include <sstream>

namespace katz {

namespace {

std::vector<Component> rank_one_only(std::vector<Component> cs) {
    std::erase_if(cs, [](const Component& c) { return c.ram != 1; });
    return cs;
}

/// Minimizers at every singular point, plus infinity (trivial or not).
std::map<PointP1, std::vector<Component>> minimizers(const FormalTypeDatum& d) {
    std::map<PointP1, std::vector<Component>> out;
    for (const auto& [x, v] : d.entries()) out.emplace(x, min_delta_components(v));
    const PointP1 inf = PointP1::infinity();
    if (!out.contains(inf)) out.emplace(inf, min_delta_components(d.at(inf)));
    return out;
}

MoebiusMap swap_to_infinity(const PointP1& x) {
    if (x.is_infinity()) return MoebiusMap::identity();
    if (x.value() == 0) return MoebiusMap::inversion();
    // z -> x + 1/z
    return MoebiusMap::make(x.value(), 1, 1, 0);
}

Block component_block(const Component& c, const Scalar& residue) {
    return Block::make(1, c.phase, residue);
}

ReductionStep case_two(const FormalTypeDatum& d, const PointP1& big) {
    ReductionStep step;
    step.kind = ReductionStep::Kind::TwistMoebiusFT;
    step.phi = swap_to_infinity(big);
    step.rank_before = d.rank();
    const FormalTypeDatum moved = moebius(d, step.phi).normalized();
    std::map<PointP1, Block> ell;
    Scalar finite_sum;
    for (const auto& [x, cs] : minimizers(moved)) {
        if (x.is_infinity()) {
            step.choices.emplace(x, cs.front());
            continue;
        }
        auto ones = rank_one_only(cs);
        if (ones.empty())
            fail(ErrorCode::InternalInconsistency, "second big point at " + x.to_string() + " after Moebius move");
        const Component& c = ones.front();
        step.choices.emplace(x, c);
        ell.emplace(x, component_block(c, c.residue));
        finite_sum += c.residue;
    }
    // Residue at infinity is free; pick the representative in [0, 1) making the sum integral.
    const Component& at_inf = step.choices.at(PointP1::infinity());
    Block approx = best_rank_one_approx(at_inf);
    approx.residue = (-finite_sum).reduced_mod(1);
    ell.emplace(PointP1::infinity(), approx);
    step.ell = rank_one_datum(ell).normalized();
    return step;
}

}  // namespace

std::string to_string(ReductionStep::Kind kind) {
    return kind == ReductionStep::Kind::TwistMC ? "twist+mc" : "twist+moebius+fourier";
}

std::string to_string(NoSolutionReason r) {
    switch (r) {
        case NoSolutionReason::RigExceedsTwo: return "RigExceedsTwo";
        case NoSolutionReason::TwoBigPoints: return "TwoBigPoints";
        case NoSolutionReason::CaseIa: return "CaseIa";
        case NoSolutionReason::UndefinedStep: return "UndefinedStep";
    }
    return "Unknown";
}

std::string to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Solvable: return "Solvable";
        case Verdict::Kind::NoSolution: return "NoSolution";
        case Verdict::Kind::NotRigid: return "NotRigid";
    }
    return "Unknown";
}

std::vector<PointP1> big_points(const FormalTypeDatum& d) {
    std::vector<PointP1> out;
    for (const auto& [x, cs] : minimizers(d))
        if (rank_one_only(cs).empty()) out.push_back(x);
    return out;
}

StepChoice select_step(const FormalTypeDatum& d) {
    const long rig = d.rigidity_index();
    if (rig != 2) fail(ErrorCode::NotRigidInput, "rigidity index is " + std::to_string(rig) + ", not 2");
    if (d.rank() == 1) return RankOne{};

    const auto big = big_points(d);
    if (big.size() >= 2) return NoSolutionReason::TwoBigPoints;
    if (big.size() == 1) return case_two(d, big.front());

    // Case I: walk minimizer combinations in lexicographic order.
    std::vector<std::pair<PointP1, std::vector<Component>>> lists;
    for (auto& [x, cs] : minimizers(d)) lists.emplace_back(x, rank_one_only(cs));
    std::vector<std::size_t> index(lists.size(), 0);
    while (true) {
        Scalar lambda;
        for (std::size_t i = 0; i < lists.size(); ++i) lambda += lists[i].second[index[i]].residue;
        if (!lambda.is_integer()) {
            ReductionStep step;
            step.kind = ReductionStep::Kind::TwistMC;
            step.lambda = lambda;
            step.rank_before = d.rank();
            std::map<PointP1, Block> ell;
            for (std::size_t i = 0; i < lists.size(); ++i) {
                const auto& [x, cs] = lists[i];
                const Component& c = cs[index[i]];
                step.choices.emplace(x, c);
                ell.emplace(x, component_block(c, x.is_infinity() ? c.residue - lambda : c.residue));
            }
            step.ell = rank_one_datum(ell).normalized();
            return step;
        }
        std::size_t i = lists.size();
        while (i > 0) {
            --i;
            if (++index[i] < lists[i].second.size()) break;
            index[i] = 0;
            if (i == 0) return NoSolutionReason::CaseIa;
        }
        if (lists.empty()) return NoSolutionReason::CaseIa;
    }
}

TransformResult apply_step(const FormalTypeDatum& d, const ReductionStep& step) {
    if (step.kind == ReductionStep::Kind::TwistMC)
        return middle_convolution(twist(d, dual(step.ell)).normalized(), step.lambda);
    return fourier(twist(moebius(d, step.phi), dual(step.ell)).normalized());
}

TransformResult undo_step(const FormalTypeDatum& d, const ReductionStep& step) {
    if (step.kind == ReductionStep::Kind::TwistMC) {
        TransformResult r = middle_convolution(d, -step.lambda);
        if (auto* datum = std::get_if<FormalTypeDatum>(&r)) return twist(*datum, step.ell).normalized();
        return r;
    }
    TransformResult r = inverse_fourier(d);
    if (auto* datum = std::get_if<FormalTypeDatum>(&r))
        return moebius(twist(*datum, step.ell), step.phi.inverse()).normalized();
    return r;
}

Verdict reduce(const FormalTypeDatum& input) {
    Verdict v;
    FormalTypeDatum d = input.normalized();
    v.trace.initial = d;
    v.rig = d.rigidity_index();
    if (v.rig > 2) {
        v.kind = Verdict::Kind::NoSolution;
        v.reason = NoSolutionReason::RigExceedsTwo;
        v.detail = "rigidity index " + std::to_string(v.rig);
        return v;
    }
    if (v.rig < 2) {
        v.kind = Verdict::Kind::NotRigid;
        v.detail = "rigidity index " + std::to_string(v.rig);
        return v;
    }
    const long max_steps = d.rank() - 1;
    while (true) {
        StepChoice choice = select_step(d);
        if (std::holds_alternative<RankOne>(choice)) break;
        if (auto* reason = std::get_if<NoSolutionReason>(&choice)) {
            v.kind = Verdict::Kind::NoSolution;
            v.reason = *reason;
            v.detail = "at rank " + std::to_string(d.rank());
            return v;
        }
        ReductionStep step = std::get<ReductionStep>(choice);
        TransformResult r = apply_step(d, step);
        if (auto* u = std::get_if<Undefined>(&r)) {
            v.kind = Verdict::Kind::NoSolution;
            v.reason = NoSolutionReason::UndefinedStep;
            v.detail = u->to_string();
            return v;
        }
        if (std::holds_alternative<Skyscraper>(r))
            fail(ErrorCode::InternalInconsistency, "reduction step produced a skyscraper");
        FormalTypeDatum next = std::get<FormalTypeDatum>(r);
        step.rank_after = next.rank();
        step.rig_after = next.rigidity_index();
        if (step.rank_after >= step.rank_before)
            fail(ErrorCode::InternalInconsistency, "step did not decrease the rank (" +
                                                       std::to_string(step.rank_before) + " -> " +
                                                       std::to_string(step.rank_after) + ")");
        if (step.rig_after != 2)
            fail(ErrorCode::InternalInconsistency, "step changed the rigidity index to " +
                                                       std::to_string(step.rig_after));
        v.trace.steps.push_back(std::move(step));
        if (static_cast<long>(v.trace.steps.size()) > max_steps)
            fail(ErrorCode::InternalInconsistency, "reduction exceeded rank - 1 steps");
        d = std::move(next);
    }
    v.kind = Verdict::Kind::Solvable;
    v.trace.terminal = d;
    return v;
}

namespace {

void expect_equal(const FormalTypeDatum& got, const FormalTypeDatum& want, const std::string& what) {
    const FormalTypeDatum a = got.normalized(), b = want.normalized();
    if (a == b) return;
    if (a.rank() != b.rank())
        fail(ErrorCode::ReplayMismatch, what + ": rank " + std::to_string(a.rank()) + " != " + std::to_string(b.rank()));
    std::vector<PointP1> points;
    for (const auto& [x, v] : a.entries()) points.push_back(x);
    for (const auto& [x, v] : b.entries()) points.push_back(x);
    std::sort(points.begin(), points.end());
    for (const auto& x : points)
        if (!(a.at(x) == b.at(x)))
            fail(ErrorCode::ReplayMismatch, what + " diverges at " + x.to_string() + ": got " + a.at(x).to_string() +
                                                ", recorded " + b.at(x).to_string());
    fail(ErrorCode::ReplayMismatch, what + " differs");
}

FormalTypeDatum unwrap(TransformResult r, std::size_t index) {
    if (auto* d = std::get_if<FormalTypeDatum>(&r)) return std::move(*d);
    std::string why = std::holds_alternative<Skyscraper>(r) ? "skyscraper" : std::get<Undefined>(r).to_string();
    fail(ErrorCode::ReplayMismatch, "step " + std::to_string(index + 1) + " is undefined on replay: " + why);
}

}  // namespace

FormalTypeDatum replay(const OperationTrace& trace, ReplayDirection direction) {
    try {
        if (direction == ReplayDirection::Forward) {
            FormalTypeDatum d = trace.initial.normalized();
            for (std::size_t i = 0; i < trace.steps.size(); ++i) d = unwrap(apply_step(d, trace.steps[i]), i);
            expect_equal(d, trace.terminal, "forward replay");
            return d;
        }
        FormalTypeDatum d = trace.terminal.normalized();
        for (std::size_t i = trace.steps.size(); i-- > 0;) d = unwrap(undo_step(d, trace.steps[i]), i);
        expect_equal(d, trace.initial, "backward replay");
        return d;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ReplayMismatch) throw;
        fail(ErrorCode::ReplayMismatch, std::string("replay failed: ") + e.what());
    }
}

Verdict solve_ds(const FormalTypeDatum& d) {
    auto violations = d.validate();
    if (!violations.empty()) {
        std::string msg;
        for (const auto& v : violations) msg += (msg.empty() ? "" : "; ") + v.message;
        fail(ErrorCode::InvalidDatum, msg);
    }
    return reduce(d);
}

std::string certificate(const Verdict& v) {
    std::ostringstream out;
    out << to_string(v.kind);
    if (v.kind == Verdict::Kind::NoSolution) out << " (" << to_string(v.reason) << ": " << v.detail << ")";
    if (v.kind == Verdict::Kind::NotRigid) out << " (rig " << v.rig << ")";
    out << "\n";
    if (v.kind != Verdict::Kind::Solvable) return out.str();
    out << "start from the rank-one datum: " << v.trace.terminal.to_string() << "\n";
    for (std::size_t i = v.trace.steps.size(); i-- > 0;) {
        const auto& s = v.trace.steps[i];
        out << "step " << (v.trace.steps.size() - i) << " (rank " << s.rank_after << " -> " << s.rank_before << "): ";
        if (s.kind == ReductionStep::Kind::TwistMC)
            out << "middle convolution with lambda = " << (-s.lambda).to_string() << ", then twist by ell";
        else
            out << "inverse Fourier transform, twist by ell, pull back by (" << s.phi.inverse().to_string() << ")";
        out << "; ell = " << s.ell.to_string() << "\n";
    }
    return out.str();
}

}  // namespace katz
