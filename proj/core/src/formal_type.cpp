#include "katz/formal_type.hpp"

#include "katz/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace katz {

namespace {

std::strong_ordering order_of(int c) {
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool same_class(const Block& a, const Block& b) {
    return a.ram == b.ram && a.unipotent == b.unipotent && a.phase == b.phase && a.residue == b.residue;
}

}  // namespace

Block Block::make(unsigned long ram, PhasePart phase, Scalar residue, unsigned long unipotent, unsigned long mult) {
    if (ram == 0 || unipotent == 0 || mult == 0)
        fail(ErrorCode::InvalidArgument, "block ram, unipotent and mult must be positive");
    if (phase.ram() != ram)
        fail(ErrorCode::InvalidArgument, "block of ram " + std::to_string(ram) + " has phase of ramification " +
                                             std::to_string(phase.ram()) + " (not primitive)");
    Block b;
    b.ram = ram;
    b.phase = ram > 1 ? phase.orbit_representative() : std::move(phase);
    b.residue = std::move(residue);
    b.unipotent = unipotent;
    b.mult = mult;
    return b;
}

Block Block::regular(Scalar residue, unsigned long unipotent, unsigned long mult) {
    return make(1, PhasePart(), std::move(residue), unipotent, mult);
}

Block Block::normalized() const {
    Block b = *this;
    b.residue = residue.reduced_mod(frac(1, static_cast<long>(ram)));
    return b;
}

std::strong_ordering operator<=>(const Block& a, const Block& b) {
    if (a.ram != b.ram) return a.ram <=> b.ram;
    if (int c = cmp(a.slope(), b.slope()); c != 0) return order_of(c);
    if (auto c = a.phase <=> b.phase; c != 0) return c;
    if (auto c = a.residue <=> b.residue; c != 0) return c;
    if (a.unipotent != b.unipotent) return a.unipotent <=> b.unipotent;
    return a.mult <=> b.mult;
}

std::string Block::to_string() const {
    std::ostringstream out;
    out << "[ram " << ram << ", phase " << phase.to_string() << ", residue " << residue.to_string();
    if (unipotent != 1) out << ", unipotent " << unipotent;
    if (mult != 1) out << ", mult " << mult;
    out << "]";
    return out.str();
}

std::vector<Block> induced_blocks(unsigned long degree, const PhasePart& phase, const Scalar& residue,
                                  unsigned long unipotent, unsigned long mult) {
    const unsigned long r = phase.ram();
    if (degree % r != 0)
        fail(ErrorCode::InvalidArgument, "phase ramification " + std::to_string(r) + " does not divide " +
                                             std::to_string(degree));
    std::vector<Block> out;
    for (unsigned long j = 0; j < degree / r; ++j)
        out.push_back(Block::make(r, phase, residue + Scalar(frac(static_cast<long>(j), static_cast<long>(degree))),
                                  unipotent, mult));
    return out;
}

FormalType::FormalType(std::vector<Block> blocks) {
    for (auto& b : blocks) b = Block::make(b.ram, std::move(b.phase), std::move(b.residue), b.unipotent, b.mult);
    std::sort(blocks.begin(), blocks.end());
    for (auto& b : blocks) {
        if (!blocks_.empty() && same_class(blocks_.back(), b))
            blocks_.back().mult += b.mult;
        else
            blocks_.push_back(std::move(b));
    }
}

FormalType FormalType::trivial(unsigned long rank) {
    if (rank == 0) return FormalType();
    return FormalType({Block::regular(Scalar(), 1, rank)});
}

long FormalType::rank() const {
    long r = 0;
    for (const auto& b : blocks_) r += static_cast<long>(b.rank());
    return r;
}

Rational FormalType::irreg() const {
    Rational s = 0;
    for (const auto& b : blocks_) s += b.irreg();
    return s;
}

long FormalType::hor() const {
    long h = 0;
    for (const auto& b : blocks_)
        if (b.is_horizontal_type()) h += static_cast<long>(b.mult);
    return h;
}

long FormalType::delta() const { return invariants().delta; }

LocalInvariants FormalType::invariants() const {
    LocalInvariants inv;
    inv.rank = rank();
    inv.irreg = irreg();
    if (inv.irreg.get_den() != 1)
        fail(ErrorCode::NonIntegralIrregularity, "irregularity " + inv.irreg.get_str() + " is not an integer");
    for (const auto& b : blocks_)
        for (unsigned long i = 0; i < b.rank(); ++i) inv.slopes.push_back(b.slope());
    std::sort(inv.slopes.begin(), inv.slopes.end());
    inv.hor = hor();
    inv.delta = inv.irreg.get_num().get_si() + inv.rank - inv.hor;
    return inv;
}

bool FormalType::is_trivial() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.is_trivial(); });
}

FormalType FormalType::normalized() const {
    std::vector<Block> out;
    for (const auto& b : blocks_) out.push_back(b.normalized());
    return FormalType(std::move(out));
}

FormalType FormalType::part_above_one() const {
    std::vector<Block> out;
    for (const auto& b : blocks_)
        if (b.slope() > 1) out.push_back(b);
    return FormalType(std::move(out));
}

std::string FormalType::to_string() const {
    if (blocks_.empty()) return "{}";
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) out << (i ? ", " : "") << blocks_[i].to_string();
    out << "}";
    return out.str();
}

FormalType direct_sum(const FormalType& a, const FormalType& b) {
    std::vector<Block> all = a.blocks();
    all.insert(all.end(), b.blocks().begin(), b.blocks().end());
    return FormalType(std::move(all));
}

FormalType hom(const FormalType& v, const FormalType& w) {
    std::vector<Block> out;
    for (const auto& bv : v.blocks()) {
        for (const auto& bw : w.blocks()) {
            const unsigned long p = bv.ram, q = bw.ram;
            const unsigned long l = std::lcm(p, q), g = std::gcd(p, q);
            const Scalar residue = bw.residue - bv.residue;
            const unsigned long mult = bv.mult * bw.mult;
            // Mackey: g double cosets, each the degree-l induction of a rank-one pair.
            for (unsigned long j = 0; j < g; ++j) {
                PhasePart diff = bw.phase.conjugate(static_cast<long>(j)) - bv.phase;
                const unsigned long smin = std::min(bv.unipotent, bw.unipotent);
                for (unsigned long s = 1; s <= smin; ++s) {
                    auto blocks = induced_blocks(l, diff, residue, bv.unipotent + bw.unipotent + 1 - 2 * s, mult);
                    out.insert(out.end(), blocks.begin(), blocks.end());
                }
            }
        }
    }
    return FormalType(std::move(out));
}

FormalType dual(const FormalType& v) {
    std::vector<Block> out;
    for (const auto& b : v.blocks()) out.push_back(Block::make(b.ram, -b.phase, -b.residue, b.unipotent, b.mult));
    return FormalType(std::move(out));
}

FormalType tensor_rank_one(const FormalType& v, const Block& ell) {
    if (ell.rank() != 1) fail(ErrorCode::InvalidArgument, "tensor_rank_one needs a rank-one block");
    std::vector<Block> out;
    for (const auto& b : v.blocks())
        out.push_back(Block::make(b.ram, b.phase + ell.phase, b.residue + ell.residue, b.unipotent, b.mult));
    return FormalType(std::move(out));
}

std::strong_ordering operator<=>(const Component& a, const Component& b) {
    if (a.ram != b.ram) return a.ram <=> b.ram;
    if (int c = cmp(a.phase.slope(), b.phase.slope()); c != 0) return order_of(c);
    if (auto c = a.phase <=> b.phase; c != 0) return c;
    return a.residue <=> b.residue;
}

std::string Component::to_string() const { return block().to_string(); }

std::vector<Component> components(const FormalType& v) {
    std::vector<Component> out;
    for (const auto& b : v.blocks()) {
        Component c{b.ram, b.phase, b.residue};
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational component_score(const Component& c, const FormalType& v) {
    return frac(hom(FormalType({c.block()}), v).delta(), c.rank());
}

std::vector<Component> min_delta_components(const FormalType& v) {
    std::vector<Component> best;
    Rational best_score;
    for (auto& c : components(v)) {
        Rational s = component_score(c, v);
        if (best.empty() || s < best_score) {
            best.clear();
            best_score = s;
        }
        if (s == best_score) best.push_back(std::move(c));
    }
    return best;
}

Block best_rank_one_approx(const Component& c) { return Block::make(1, c.phase.integer_part(), Scalar()); }

}  // namespace katz
