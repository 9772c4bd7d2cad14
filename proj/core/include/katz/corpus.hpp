#pragma once

#include "katz/engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace katz {

struct CorpusEntry {
    std::string name;
    std::string summary;
    FormalTypeDatum datum;
    long rig = 2;
    Verdict::Kind verdict = Verdict::Kind::Solvable;
    std::optional<NoSolutionReason> reason;
    /// Ranks along the reduction (solvable entries only).
    std::vector<long> ranks;
};

std::vector<std::string> corpus_names();
/// Throws UnknownName. `lambda` applies to the kummer entry only (default 1/3).
CorpusEntry corpus_entry(const std::string& name, const std::optional<Rational>& lambda = std::nullopt);

}  // namespace katz
