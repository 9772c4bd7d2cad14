#include "katz/transforms.hpp"

#include "katz/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace katz {

namespace {

long to_long(const Rational& q) { return q.get_num().get_si(); }

/// Stationary phase for the kernel e^{z zhat} applied to e^f, where f is a
/// phase in the local coordinate at the source point: z = t^p at a finite
/// point (source_finite) or z = t^(-p) at infinity. With t = z^(1/p) and
/// sigma^K = -df/dz, returns g = f(t(sigma)) + z(sigma) sigma^K as a phase in
/// the target coordinate sigma^|K|.
struct StationaryPhase {
    PhasePart phase;
    unsigned long degree = 1;
};

StationaryPhase stationary_phase(const PhasePart& f, bool source_finite) {
    const long p = static_cast<long>(f.ram());
    const long q = f.pole_order();
    LaurentPoly h;
    std::vector<std::pair<long, Scalar>> terms;
    for (const auto& [e, c] : f.terms()) {
        const long k = to_long(e * p);
        terms.emplace_back(k, c);
        // df/dz = f'(t) dt/dz, dt/dz = t^(1-p)/p or -t^(1+p)/p
        Scalar coeff = c * Scalar(frac(k, p));
        if (source_finite)
            h.emplace(k - p, -coeff);
        else
            h.emplace(k + p, coeff);
    }
    const std::size_t precision = static_cast<std::size_t>(q);
    DominantInverse inv = invert_dominant(h, precision);
    const long big_k = inv.order;
    const unsigned long degree = static_cast<unsigned long>(big_k < 0 ? -big_k : big_k);

    std::map<long, Scalar> g;
    auto add = [&](long k, const Scalar& c, long shift) {
        // c t^k sigma^shift with t = lead sigma unit(sigma)
        PowerSeries s = inv.unit.pow_unit(Rational(k)).scaled(c * inv.lead.pow(k));
        for (std::size_t i = 0; i < precision; ++i) {
            long j = k + shift + static_cast<long>(i);
            if (j >= 0) break;
            if (!s[i].is_zero()) g[j] += s[i];
        }
    };
    for (const auto& [k, c] : terms) add(k, c, 0);
    add(source_finite ? p : -p, Scalar(1L), big_k);

    PuiseuxTerms out;
    for (const auto& [j, c] : g)
        if (!c.is_zero()) out.emplace(frac(j, static_cast<long>(degree)), c);
    return {PhasePart(std::move(out)), degree};
}

Scalar q_scalar(const Rational& q) { return Scalar(q); }

void append(std::vector<Block>& to, const std::vector<Block>& from) { to.insert(to.end(), from.begin(), from.end()); }

}  // namespace

MoebiusMap MoebiusMap::make(Rational a, Rational b, Rational c, Rational d) {
    MoebiusMap m{std::move(a), std::move(b), std::move(c), std::move(d)};
    if (m.det() == 0) fail(ErrorCode::InvalidArgument, "degenerate Moebius map");
    return m;
}

PointP1 MoebiusMap::apply(const PointP1& p) const {
    if (p.is_infinity()) {
        if (c == 0) return PointP1::infinity();
        return PointP1(Rational(a / c));
    }
    Rational den = c * p.value() + d;
    if (den == 0) return PointP1::infinity();
    return PointP1(Rational((a * p.value() + b) / den));
}

MoebiusMap MoebiusMap::inverse() const { return make(d, -b, -c, a); }

MoebiusMap MoebiusMap::compose(const MoebiusMap& o) const {
    return make(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

bool MoebiusMap::is_identity() const { return b == 0 && c == 0 && a == d; }

std::string MoebiusMap::to_string() const {
    std::ostringstream out;
    out << "z -> (" << katz::to_string(a) << "*z + " << katz::to_string(b) << ") / (" << katz::to_string(c)
        << "*z + " << katz::to_string(d) << ")";
    return out.str();
}

CoordinateChange local_change(const MoebiusMap& phi, const PointP1& y, std::size_t terms) {
    // In every case the target coordinate is e*u / (1 + kappa*u).
    Rational e, kappa;
    const Rational det = phi.det();
    if (!y.is_infinity()) {
        Rational big_c = phi.c * y.value() + phi.d;
        Rational big_a = phi.a * y.value() + phi.b;
        if (big_c != 0) {
            e = det / (big_c * big_c);
            kappa = phi.c / big_c;
        } else {
            e = phi.c / big_a;
            kappa = phi.a / big_a;
        }
    } else if (phi.c != 0) {
        e = -det / (phi.c * phi.c);
        kappa = phi.d / phi.c;
    } else {
        e = phi.d / phi.a;
        kappa = phi.b / phi.a;
    }
    CoordinateChange change;
    change.exact = kappa == 0;
    const std::size_t n = change.exact ? 1 : std::max<std::size_t>(terms, 1);
    Rational coeff = e;
    for (std::size_t k = 0; k < n; ++k) {
        change.coeffs.push_back(Scalar(coeff));
        coeff *= -kappa;
    }
    return change;
}

FormalTypeDatum moebius(const FormalTypeDatum& d, const MoebiusMap& phi) {
    const MoebiusMap inv = phi.inverse();
    FormalTypeDatum::Entries out;
    for (const auto& [x, v] : d.entries()) {
        const PointP1 y = inv.apply(x);
        long needed = 1;
        for (const auto& b : v.blocks()) needed = std::max(needed, to_long(floor(b.slope())) + 1);
        const CoordinateChange change = local_change(phi, y, static_cast<std::size_t>(needed));
        std::vector<Block> blocks;
        for (const auto& b : v.blocks())
            append(blocks, induced_blocks(b.ram, substitute(b.phase, change).principal, b.residue, b.unipotent, b.mult));
        out.emplace(y, FormalType(std::move(blocks)));
    }
    return FormalTypeDatum(d.rank(), std::move(out));
}

FormalTypeDatum twist(const FormalTypeDatum& d, const FormalTypeDatum& ell) {
    if (ell.rank() != 1) fail(ErrorCode::InvalidArgument, "twist needs a rank-one datum");
    FormalTypeDatum::Entries out = d.entries();
    for (const auto& [x, lv] : ell.entries()) {
        if (lv.blocks().size() != 1) fail(ErrorCode::InvalidArgument, "rank-one entry must be a single block");
        out[x] = tensor_rank_one(d.at(x), lv.blocks().front());
    }
    return FormalTypeDatum(d.rank(), std::move(out));
}

FormalTypeDatum dual(const FormalTypeDatum& d) {
    FormalTypeDatum::Entries out;
    for (const auto& [x, v] : d.entries()) out.emplace(x, dual(v));
    return FormalTypeDatum(d.rank(), std::move(out));
}

FormalTypeDatum kummer(const Scalar& lambda) {
    return rank_one_datum({{PointP1(0L), Block::regular(lambda)}, {PointP1::infinity(), Block::regular(-lambda)}});
}

FormalTypeDatum rank_one_datum(const std::map<PointP1, Block>& blocks) {
    FormalTypeDatum::Entries out;
    for (const auto& [x, b] : blocks) {
        if (b.rank() != 1) fail(ErrorCode::InvalidArgument, "rank-one datum needs rank-one blocks");
        out.emplace(x, FormalType({b}));
    }
    return FormalTypeDatum(1, std::move(out));
}

std::vector<Block> local_fourier_finite(const Rational& x, const Block& b) {
    if (b.is_trivial()) fail(ErrorCode::TrivialBlock, "trivial block has no local Fourier transform");
    const PhasePart shift = x == 0 ? PhasePart() : PhasePart::monomial(-1, Scalar(x));
    if (b.phase.is_zero()) {
        // J(lambda, u) -> J(lambda - 1, u); for integer lambda the top drops: u -> u - 1.
        unsigned long u = b.residue.is_integer() ? b.unipotent - 1 : b.unipotent;
        return {Block::make(1, shift, b.residue - Scalar(1L), u, b.mult)};
    }
    const Rational s = b.slope();
    StationaryPhase sp = stationary_phase(b.phase, true);
    Scalar res = (b.residue - q_scalar(1 + s / 2)) / q_scalar(1 + s);
    return induced_blocks(sp.degree, sp.phase + shift, res, b.unipotent, b.mult);
}

std::vector<Block> local_fourier_infty(const Block& b) {
    const Rational s = b.slope();
    if (s <= 1) fail(ErrorCode::SlopeNotGreaterThanOne, "slope " + s.get_str() + " is not greater than one");
    StationaryPhase sp = stationary_phase(b.phase, false);
    Scalar res = (b.residue + q_scalar(1 - s / 2)) / q_scalar(s - 1);
    return induced_blocks(sp.degree, sp.phase, res, b.unipotent, b.mult);
}

std::vector<FinitePart> local_fourier_to_finite(const FormalType& v_inf) {
    std::map<Rational, std::vector<Block>> parts;
    for (const auto& b : v_inf.blocks()) {
        if (b.slope() > 1) continue;
        const Scalar a = b.phase.coefficient(-1);
        if (!a.is_rational())
            fail(ErrorCode::IrrationalPoint, "linear phase coefficient " + a.to_string() + " is not rational");
        const Rational y = -a.constant();
        const PhasePart rest = b.phase - PhasePart::monomial(-1, a);
        auto& out = parts[y];
        if (rest.is_zero()) {
            unsigned long u = b.residue.is_integer() ? b.unipotent + 1 : b.unipotent;
            out.push_back(Block::make(1, PhasePart(), b.residue + Scalar(1L), u, b.mult));
            continue;
        }
        const Rational s = rest.slope();
        StationaryPhase sp = stationary_phase(rest, false);
        Scalar res = (b.residue + q_scalar(1 - s / 2)) / q_scalar(1 - s);
        append(out, induced_blocks(sp.degree, sp.phase, res, b.unipotent, b.mult));
    }
    std::vector<FinitePart> out;
    for (auto& [y, blocks] : parts) out.push_back({y, std::move(blocks), 0});
    for (auto& part : out)
        for (const auto& b : part.blocks)
            if (b.is_horizontal_type()) part.extra_rank += static_cast<long>(b.mult);
    return out;
}

long fourier_rank(const FormalTypeDatum& d) {
    long r = 0;
    for (const auto& [x, v] : d.entries())
        if (!x.is_infinity()) r += v.delta();
    FormalType big = d.at(PointP1::infinity()).part_above_one();
    r += to_long(big.irreg()) - big.rank();
    return r;
}

long middle_convolution_rank(const FormalTypeDatum& d, const Scalar& lambda) {
    long r = -d.rank();
    for (const auto& [x, v] : d.entries())
        if (!x.is_infinity()) r += v.delta();
    r += tensor_rank_one(d.at(PointP1::infinity()), Block::regular(-lambda)).delta();
    return r;
}

std::string Undefined::to_string() const {
    return "compatibility fails at " + point.to_string() + " (short by " + std::to_string(deficit) + ")";
}

TransformResult fourier(const FormalTypeDatum& d) {
    const long rank = fourier_rank(d);
    if (rank == 0) return Skyscraper{};
    if (rank < 0) fail(ErrorCode::InternalInconsistency, "negative Fourier rank");

    std::vector<Block> at_inf;
    for (const auto& [x, v] : d.entries()) {
        if (x.is_infinity()) continue;
        for (const auto& b : v.blocks())
            if (!b.is_trivial()) append(at_inf, local_fourier_finite(x.value(), b));
    }
    const FormalType v_inf = d.at(PointP1::infinity());
    const FormalType big = v_inf.part_above_one();
    for (const auto& b : big.blocks()) append(at_inf, local_fourier_infty(b));
    FormalType t_inf(std::move(at_inf));
    if (t_inf.rank() != rank)
        fail(ErrorCode::InternalInconsistency, "local transforms give rank " + std::to_string(t_inf.rank()) +
                                                   " at infinity, rank formula gives " + std::to_string(rank));

    FormalTypeDatum::Entries out;
    out.emplace(PointP1::infinity(), std::move(t_inf));
    for (auto& part : local_fourier_to_finite(v_inf)) {
        FormalType quotient(part.blocks);
        const long padding = rank - quotient.rank();
        if (padding < 0) return Undefined{PointP1(part.point), -padding};
        std::vector<Block> blocks = part.blocks;
        if (padding > 0) blocks.push_back(Block::regular(Scalar(), 1, static_cast<unsigned long>(padding)));
        out.emplace(PointP1(part.point), FormalType(std::move(blocks)));
    }
    return FormalTypeDatum(rank, std::move(out)).normalized();
}

TransformResult inverse_fourier(const FormalTypeDatum& d) {
    TransformResult r = fourier(d);
    if (auto* datum = std::get_if<FormalTypeDatum>(&r)) return moebius(*datum, MoebiusMap::negation()).normalized();
    return r;
}

bool is_excluded_trivial_shape(const FormalTypeDatum& d) {
    if (d.rank() != 1) return false;
    FormalTypeDatum n = d.normalized();
    if (n.entries().empty()) return true;
    if (n.entries().size() != 2) return false;
    return std::all_of(n.entries().begin(), n.entries().end(),
                       [](const auto& kv) { return kv.second.blocks().front().phase.is_zero(); });
}

namespace {

// Part of a phase that stationary phase acts on inside the convolution: all
// of it at finite points and for slope > 1 at infinity, the part below the
// linear term otherwise.
PhasePart wild_part(const PointP1& x, const PhasePart& f) {
    if (!x.is_infinity() || f.slope() > 1) return f;
    return f - PhasePart::monomial(-1, f.coefficient(-1));
}

// The intermediate Fourier image of a wild phase can need roots outside every
// cyclotomic field even when the convolution does not. Each wild phase is
// swapped for a stand-in of the same slope and ramification whose
// stationary-phase equation has a root of unity as leading coefficient; the
// round trip returns every phase unchanged, so swapping back is exact.
struct StandIns {
    FormalTypeDatum datum;
    std::map<std::pair<PointP1, PhasePart>, PhasePart> original;
};

StandIns with_stand_ins(const FormalTypeDatum& d) {
    std::set<unsigned long> rams;
    std::map<PointP1, long> count;
    for (const auto& [x, v] : d.entries())
        for (const auto& b : v.blocks()) {
            rams.insert(b.ram);
            if (!wild_part(x, b.phase).is_zero()) ++count[x];
        }
    long most = 0;
    for (const auto& [x, n] : count) most = std::max(most, n);
    unsigned long prime = 5;
    for (unsigned long cand : {5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL}) {
        prime = cand;
        bool coprime = std::none_of(rams.begin(), rams.end(), [&](unsigned long r) { return r % cand == 0; });
        if (coprime && static_cast<long>(cand) > most) break;
    }

    StandIns out;
    FormalTypeDatum::Entries entries;
    for (const auto& [x, v] : d.entries()) {
        std::map<PhasePart, PhasePart> swapped;
        std::vector<Block> blocks;
        for (const auto& b : v.blocks()) {
            const PhasePart w = wild_part(x, b.phase);
            if (w.is_zero()) {
                blocks.push_back(b);
                continue;
            }
            auto it = swapped.find(b.phase);
            if (it == swapped.end()) {
                const Rational s = w.slope();
                const long r = static_cast<long>(w.ram());
                Scalar omega = Scalar::root_of_unity(prime, static_cast<long>(swapped.size()) + 1);
                PuiseuxTerms terms{{-s, omega / Scalar(s)}};
                if (s.get_den() != r) terms.emplace(frac(-1, r), Scalar(1L));
                PhasePart stand_in = (b.phase - w + PhasePart(terms)).orbit_representative();
                it = swapped.emplace(b.phase, stand_in).first;
                out.original[{x, stand_in}] = b.phase;
            }
            blocks.push_back(Block::make(b.ram, it->second, b.residue, b.unipotent, b.mult));
        }
        entries.emplace(x, FormalType(std::move(blocks)));
    }
    out.datum = FormalTypeDatum(d.rank(), std::move(entries));
    return out;
}

FormalTypeDatum restore(const FormalTypeDatum& d, const StandIns& s) {
    FormalTypeDatum::Entries entries;
    for (const auto& [x, v] : d.entries()) {
        std::vector<Block> blocks;
        for (const auto& b : v.blocks()) {
            if (wild_part(x, b.phase).is_zero()) {
                blocks.push_back(b);
                continue;
            }
            auto it = s.original.find({x, b.phase});
            if (it == s.original.end())
                fail(ErrorCode::InternalInconsistency,
                     "convolution produced an unexpected phase " + b.phase.to_string() + " at " + x.to_string());
            blocks.push_back(Block::make(b.ram, it->second, b.residue, b.unipotent, b.mult));
        }
        entries.emplace(x, FormalType(std::move(blocks)));
    }
    return FormalTypeDatum(d.rank(), std::move(entries)).normalized();
}

}  // namespace

TransformResult middle_convolution(const FormalTypeDatum& d, const Scalar& lambda) {
    if (lambda.is_integer()) fail(ErrorCode::IntegerLambda, "middle convolution needs a non-integer parameter");
    if (is_excluded_trivial_shape(d))
        fail(ErrorCode::ExcludedTrivialCase, "rank one datum is trivial or has two simple poles");
    const StandIns stand_ins = with_stand_ins(d.normalized());
    TransformResult first = fourier(stand_ins.datum);
    if (std::holds_alternative<Undefined>(first)) return first;
    if (std::holds_alternative<Skyscraper>(first))
        fail(ErrorCode::ExcludedTrivialCase, "Fourier transform is supported at a point");
    FormalTypeDatum twisted = twist(std::get<FormalTypeDatum>(first), kummer(-lambda));
    TransformResult second = inverse_fourier(twisted);
    if (std::holds_alternative<Undefined>(second)) return second;
    if (std::holds_alternative<Skyscraper>(second))
        fail(ErrorCode::ExcludedTrivialCase, "twisted Fourier transform is supported at a point");
    const FormalTypeDatum out = restore(std::get<FormalTypeDatum>(second), stand_ins);
    const long expected = middle_convolution_rank(d, lambda);
    if (out.rank() != expected)
        fail(ErrorCode::InternalInconsistency, "middle convolution has rank " + std::to_string(out.rank()) +
                                                   ", rank formula gives " + std::to_string(expected));
    return out;
}

}  // namespace katz
