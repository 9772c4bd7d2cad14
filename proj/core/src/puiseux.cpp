#include "katz/puiseux.hpp"

#include "katz/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace katz {

namespace {

unsigned long denominator_ul(const Rational& q) { return q.get_den().get_ui(); }

long to_long(const Rational& q) {
    if (q.get_den() != 1) fail(ErrorCode::InternalInconsistency, "expected an integer, got " + q.get_str());
    return q.get_num().get_si();
}

}  // namespace

PhasePart::PhasePart(PuiseuxTerms terms) {
    for (auto& [e, c] : terms) {
        if (c.is_zero()) continue;
        if (e >= 0) fail(ErrorCode::InvalidArgument, "phase exponent " + e.get_str() + " is not negative");
        ram_ = std::lcm(ram_, denominator_ul(e));
        terms_.emplace(e, c);
    }
}

PhasePart PhasePart::monomial(const Rational& exponent, const Scalar& coeff) {
    return PhasePart(PuiseuxTerms{{exponent, coeff}});
}

std::optional<Rational> PhasePart::ord() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

Rational PhasePart::slope() const {
    if (terms_.empty()) return 0;
    return -terms_.begin()->first;
}

long PhasePart::pole_order() const { return to_long(slope() * static_cast<long>(ram_)); }

PhasePart PhasePart::conjugate(long j) const {
    if (ram_ == 1 || j % static_cast<long>(ram_) == 0) return *this;
    PuiseuxTerms out;
    for (const auto& [e, c] : terms_) {
        long k = to_long(e * static_cast<long>(ram_));
        out.emplace(e, c * Scalar::root_of_unity(ram_, j * k));
    }
    return PhasePart(std::move(out));
}

std::vector<PhasePart> PhasePart::conjugates() const {
    std::vector<PhasePart> out;
    out.reserve(ram_);
    for (unsigned long j = 0; j < ram_; ++j) out.push_back(conjugate(static_cast<long>(j)));
    return out;
}

PhasePart PhasePart::orbit_representative() const {
    auto all = conjugates();
    return *std::min_element(all.begin(), all.end());
}

PhasePart PhasePart::integer_part() const {
    PuiseuxTerms out;
    for (const auto& [e, c] : terms_)
        if (e.get_den() == 1) out.emplace(e, c);
    return PhasePart(std::move(out));
}

Scalar PhasePart::coefficient(const Rational& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar() : it->second;
}

PhasePart PhasePart::operator-() const {
    PuiseuxTerms out;
    for (const auto& [e, c] : terms_) out.emplace(e, -c);
    return PhasePart(std::move(out));
}

PhasePart operator+(const PhasePart& a, const PhasePart& b) {
    PuiseuxTerms out = a.terms_;
    for (const auto& [e, c] : b.terms_) {
        auto [it, inserted] = out.emplace(e, c);
        if (!inserted) it->second += c;
    }
    return PhasePart(std::move(out));
}

PhasePart operator-(const PhasePart& a, const PhasePart& b) { return a + (-b); }

std::strong_ordering operator<=>(const PhasePart& a, const PhasePart& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        int ce = cmp(ia->first, ib->first);
        if (ce != 0) return ce < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto cc = ia->second <=> ib->second; cc != 0) return cc;
    }
    if (ia == a.terms_.end() && ib == b.terms_.end()) return std::strong_ordering::equal;
    return ia == a.terms_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const PuiseuxTerms& terms) {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.to_string() << ")*z^(" << e.get_str() << ")";
    }
    return out.str();
}

std::string PhasePart::to_string() const { return katz::to_string(terms_); }

Substitution substitute(const PhasePart& f, const CoordinateChange& change) {
    if (change.coeffs.empty() || change.coeffs.front().is_zero())
        fail(ErrorCode::NotInvertible, "coordinate change has zero linear coefficient");
    if (f.is_zero()) return {};
    // Terms u^(q+i) with q+i <= 0 need the relative series through order floor(slope).
    const long needed = to_long(floor(f.slope())) + 1;
    if (!change.exact && static_cast<long>(change.coeffs.size()) < needed)
        fail(ErrorCode::InsufficientPrecision, "coordinate change known through order " +
                                                   std::to_string(change.coeffs.size()) + ", need " +
                                                   std::to_string(needed));
    const std::size_t precision = static_cast<std::size_t>(needed);
    const Scalar& e1 = change.coeffs.front();
    PowerSeries rel(precision);
    rel[0] = Scalar(1L);
    for (std::size_t k = 1; k < precision && k < change.coeffs.size(); ++k) rel[k] = change.coeffs[k] / e1;

    const unsigned long r = f.ram();
    const Scalar e1_root = e1.root(r);
    PuiseuxTerms principal;
    Scalar constant;
    for (const auto& [q, c] : f.terms()) {
        const long n = to_long(q * static_cast<long>(r));
        PowerSeries factor = rel.pow_unit(q).scaled(c * e1_root.pow(n));
        for (std::size_t i = 0; i < precision; ++i) {
            Rational e = q + static_cast<long>(i);
            if (e > 0 || factor[i].is_zero()) continue;
            if (e == 0) {
                constant += factor[i];
            } else {
                auto [it, inserted] = principal.emplace(e, factor[i]);
                if (!inserted) it->second += factor[i];
            }
        }
    }
    return {PhasePart(std::move(principal)), constant};
}

DominantInverse invert_dominant(const LaurentPoly& h, std::size_t precision) {
    auto lead_it = std::find_if(h.begin(), h.end(), [](const auto& kv) { return !kv.second.is_zero(); });
    if (lead_it == h.end()) fail(ErrorCode::NoDominantTerm, "zero function has no dominant term");
    const long order = lead_it->first;
    if (order == 0) fail(ErrorCode::NoDominantTerm, "dominant term has exponent zero");
    const Scalar a = lead_it->second;

    // h = a t^K (1 + sum_j b_j t^j)
    PowerSeries tail(precision);
    for (const auto& [k, v] : h) {
        long j = k - order;
        if (j <= 0 || static_cast<std::size_t>(j) >= precision) continue;
        tail[static_cast<std::size_t>(j)] = v / a;
    }
    // a c^K = 1
    const Scalar c = order > 0 ? (Scalar(1L) / a).root(static_cast<unsigned long>(order))
                               : a.root(static_cast<unsigned long>(-order));
    const Rational exponent = frac(-1, order);

    PowerSeries unit = PowerSeries::one(precision);
    auto inner_of = [&](const PowerSeries& u) {
        PowerSeries inner(precision);
        for (std::size_t i = 1; i < precision; ++i) inner[i] = c * u[i - 1];
        return inner;
    };
    for (std::size_t iter = 0; iter < precision; ++iter) {
        PowerSeries next = (PowerSeries::one(precision) + tail.compose(inner_of(unit))).pow_unit(exponent);
        bool same = true;
        for (std::size_t i = 0; i < precision && same; ++i) same = next[i] == unit[i];
        unit = std::move(next);
        if (same) break;
    }
    // h(t(s)) s^(-K) = a c^K unit^K (1 + tail(t)) must be 1.
    PowerSeries check = unit.pow_unit(Rational(order)) * (PowerSeries::one(precision) + tail.compose(inner_of(unit)));
    check = check.scaled(a * c.pow(order));
    for (std::size_t i = 0; i < precision; ++i)
        if (check[i] != Scalar(i == 0 ? 1L : 0L))
            fail(ErrorCode::InternalInconsistency, "back-substitution failed in formal inversion");
    return {order, c, std::move(unit)};
}

PuiseuxTerms formal_inverse(const PuiseuxTerms& g, const Rational& target_order) {
    PuiseuxTerms nz;
    for (const auto& [e, c] : g)
        if (!c.is_zero()) nz.emplace(e, c);
    if (nz.empty() || nz.begin()->first >= 0)
        fail(ErrorCode::NoDominantTerm, "need a dominant term a u^(-k) with k > 0");
    // u = tau^D turns g into a Laurent polynomial in tau.
    unsigned long den = 1;
    for (const auto& [e, c] : nz) den = std::lcm(den, denominator_ul(e));
    const long d = static_cast<long>(den);
    LaurentPoly h;
    for (const auto& [e, c] : nz) h.emplace(to_long(e * d), c);
    const long kd = -h.begin()->first;  // g(tau) = s^(-kd), s = w^(-1/kd)
    // Terms s^j of u are w^(-j/kd); keep j with -j/kd >= target_order.
    const Rational first = frac(-d, kd);
    if (first < target_order) return {};
    const long span = to_long(floor((first - target_order) * kd));
    const std::size_t precision = static_cast<std::size_t>(span) + 2;
    DominantInverse inv = invert_dominant(h, precision);
    // u = tau^D = lead^D s^D unit^D
    PowerSeries u = inv.unit.pow_unit(Rational(d)).scaled(inv.lead.pow(d));
    PuiseuxTerms out;
    for (std::size_t i = 0; i < precision; ++i) {
        Rational e = frac(-(d + static_cast<long>(i)), kd);
        if (e < target_order || u[i].is_zero()) continue;
        out.emplace(e, u[i]);
    }
    return out;
}

}  // namespace katz
