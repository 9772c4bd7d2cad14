#pragma once

#include "katz/transforms.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace katz {

/// One rank-decreasing step. TwistMC maps L to MC_lambda(L (x) ell^dual);
/// TwistMoebiusFT maps L to ft(phi^*L (x) ell^dual), with ell living on the
/// pulled-back line.
struct ReductionStep {
    enum class Kind { TwistMC, TwistMoebiusFT };
    Kind kind = Kind::TwistMC;
    FormalTypeDatum ell;
    Scalar lambda;
    MoebiusMap phi;
    /// Minimizer used at each point (in the coordinates ell lives in).
    std::map<PointP1, Component> choices;
    long rank_before = 0;
    long rank_after = 0;
    long rig_after = 0;
};

std::string to_string(ReductionStep::Kind kind);

struct OperationTrace {
    FormalTypeDatum initial;
    std::vector<ReductionStep> steps;
    FormalTypeDatum terminal;
};

enum class NoSolutionReason { RigExceedsTwo, TwoBigPoints, CaseIa, UndefinedStep };
std::string to_string(NoSolutionReason r);

struct RankOne {};
using StepChoice = std::variant<RankOne, ReductionStep, NoSolutionReason>;

struct Verdict {
    enum class Kind { Solvable, NoSolution, NotRigid };
    Kind kind = Kind::Solvable;
    OperationTrace trace;
    NoSolutionReason reason = NoSolutionReason::RigExceedsTwo;
    long rig = 2;
    std::string detail;
};
std::string to_string(Verdict::Kind k);

/// Points whose minimizing components are all ramified.
std::vector<PointP1> big_points(const FormalTypeDatum& d);

/// Chooses the next step for a normalized datum (parameters only; the
/// rank_after and rig_after fields are left for the caller). Throws
/// NotRigidInput unless rig == 2.
StepChoice select_step(const FormalTypeDatum& d);

/// Forward application; Undefined and Skyscraper are passed through.
TransformResult apply_step(const FormalTypeDatum& d, const ReductionStep& step);
/// Inverse of apply_step on its image.
TransformResult undo_step(const FormalTypeDatum& d, const ReductionStep& step);

/// Expects a valid datum; rig != 2 is reported in the verdict.
Verdict reduce(const FormalTypeDatum& d);

enum class ReplayDirection { Forward, Backward };
/// Forward re-derives the terminal datum, backward the initial one; both
/// throw ReplayMismatch when the result differs from the recorded datum.
FormalTypeDatum replay(const OperationTrace& trace, ReplayDirection direction);

/// Validates (InvalidDatum on failure) and reduces.
Verdict solve_ds(const FormalTypeDatum& d);

/// Construction recipe for a verdict, one line per operation.
std::string certificate(const Verdict& v);

}  // namespace katz
