#include "katz/datum.hpp"

#include "katz/error.hpp"

#include <numeric>
#include <sstream>

namespace katz {

PointP1 PointP1::parse(const std::string& text) {
    if (text == "inf") return infinity();
    return PointP1(parse_rational(text));
}

std::strong_ordering operator<=>(const PointP1& a, const PointP1& b) {
    if (a.is_infinity() || b.is_infinity()) return a.is_infinity() <=> b.is_infinity();
    int c = cmp(a.value(), b.value());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string PointP1::to_string() const { return is_infinity() ? "inf" : katz::to_string(*x_); }

std::string to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::ConstantRank: return "constant-rank";
        case Violation::Kind::TrivialEntry: return "trivial-entry";
        case Violation::Kind::Determinant: return "determinant";
    }
    return "unknown";
}

std::string to_string(RigClass c) {
    switch (c) {
        case RigClass::RigidCandidate: return "rigid-candidate";
        case RigClass::RigidityZero: return "rigidity-zero";
        case RigClass::Overdetermined: return "overdetermined";
        case RigClass::Underdetermined: return "underdetermined";
    }
    return "unknown";
}

RigClass classify_rig(long rig) {
    if (rig == 2) return RigClass::RigidCandidate;
    if (rig == 0) return RigClass::RigidityZero;
    if (rig > 2) return RigClass::Overdetermined;
    return RigClass::Underdetermined;
}

Scalar detres(const Block& b) {
    const long r = static_cast<long>(b.ram);
    const long mu = static_cast<long>(b.mult * b.unipotent);
    return (b.residue * Scalar(r) + Scalar(frac(r - 1, 2))) * Scalar(mu);
}

Scalar detres(const FormalType& v) {
    Scalar s;
    for (const auto& b : v.blocks()) s += detres(b);
    return s;
}

FormalType FormalTypeDatum::at(const PointP1& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? FormalType::trivial(static_cast<unsigned long>(rank_)) : it->second;
}

FormalTypeDatum FormalTypeDatum::normalized() const {
    Entries out;
    for (const auto& [x, v] : entries_) {
        FormalType n = v.normalized();
        if (!n.is_trivial()) out.emplace(x, std::move(n));
    }
    return FormalTypeDatum(rank_, std::move(out));
}

std::vector<Violation> FormalTypeDatum::validate() const {
    std::vector<Violation> out;
    if (rank_ < 1) out.push_back({Violation::Kind::ConstantRank, std::nullopt, "rank must be positive"});
    for (const auto& [x, v] : entries_) {
        if (v.rank() != rank_)
            out.push_back({Violation::Kind::ConstantRank, x,
                           "constant-rank violated at " + x.to_string() + ": rank " + std::to_string(v.rank()) +
                               " != " + std::to_string(rank_)});
        else if (v.is_trivial())
            out.push_back({Violation::Kind::TrivialEntry, x, "listed type at " + x.to_string() + " is trivial"});
    }
    Scalar total = determinant_residue();
    if (!total.is_integer())
        out.push_back({Violation::Kind::Determinant, std::nullopt,
                       "determinant residue sum " + total.to_string() + " is not an integer"});
    return out;
}

Scalar FormalTypeDatum::determinant_residue() const {
    Scalar s;
    for (const auto& [x, v] : entries_) s += detres(v);
    return s;
}

long FormalTypeDatum::euler_char() const {
    long chi = 2 * rank_;
    for (const auto& [x, v] : entries_) chi -= v.delta();
    return chi;
}

long FormalTypeDatum::rigidity_index() const {
    long rig = 2 * rank_ * rank_;
    for (const auto& [x, v] : entries_) rig -= hom(v, v).delta();
    return rig;
}

RigClass FormalTypeDatum::classify() const { return classify_rig(rigidity_index()); }

long FormalTypeDatum::moduli_dimension() const {
    long rig = rigidity_index();
    if (rig > 2) fail(ErrorCode::RigTooLarge, "rigidity index " + std::to_string(rig) + " exceeds 2");
    return 2 - rig;
}

ResidueClass FormalTypeDatum::twist_residue_gap(const std::map<PointP1, Component>& choices) const {
    Scalar s;
    for (const auto& [x, c] : choices) {
        if (c.ram != 1) fail(ErrorCode::RamifiedChoice, "component chosen at " + x.to_string() + " is ramified");
        s += c.residue;
    }
    return ResidueClass(s);
}

FormalTypeDatum FormalTypeDatum::end() const {
    Entries out;
    for (const auto& [x, v] : entries_) out.emplace(x, hom(v, v));
    return FormalTypeDatum(rank_ * rank_, std::move(out));
}

unsigned long FormalTypeDatum::conductor() const {
    unsigned long n = 1;
    for (const auto& [x, v] : entries_)
        for (const auto& b : v.blocks()) {
            n = std::lcm(n, b.residue.minimal().conductor());
            for (const auto& [e, c] : b.phase.terms()) n = std::lcm(n, c.minimal().conductor());
        }
    return n;
}

std::string FormalTypeDatum::to_string() const {
    std::ostringstream out;
    out << "rank " << rank_;
    for (const auto& [x, v] : entries_) out << "\n  " << x.to_string() << ": " << v.to_string();
    return out.str();
}

}  // namespace katz
