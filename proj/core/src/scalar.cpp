#include "katz/scalar.hpp"

#include "katz/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace katz {

namespace {

using Poly = std::vector<Rational>;

// Integer polynomials, index = degree.
using IntPoly = std::vector<Integer>;

IntPoly compute_cyclotomic(unsigned long n);

const IntPoly& cyclotomic(unsigned long n) {
    static std::mutex mutex;
    static std::map<unsigned long, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly phi = compute_cyclotomic(n);
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(phi)).first->second;
}

// Exact division of x^n - 1 by Phi_d for every proper divisor d.
IntPoly compute_cyclotomic(unsigned long n) {
    IntPoly num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const IntPoly& den = cyclotomic(d);
        const std::size_t dd = den.size() - 1;
        IntPoly quot(num.size() - dd, 0);
        for (std::size_t i = num.size(); i-- > dd;) {
            Integer c = num[i];  // den is monic
            quot[i - dd] = c;
            if (c == 0) continue;
            for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
        }
        num = std::move(quot);
    }
    return num;
}

Poly reduce_poly(Poly p, unsigned long n) {
    const IntPoly& phi = cyclotomic(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
        if (p[i] == 0) continue;
        Rational c = p[i];
        for (std::size_t k = 0; k <= deg; ++k) p[i - deg + k] -= c * Rational(phi[k]);
    }
    p.resize(deg, Rational(0));
    return p;
}

Poly embed_coords(const Poly& coords, unsigned long from, unsigned long to) {
    const unsigned long step = to / from;
    Poly raw((coords.size() - 1) * step + 1, Rational(0));
    for (std::size_t i = 0; i < coords.size(); ++i) raw[i * step] = coords[i];
    return reduce_poly(std::move(raw), to);
}

bool all_zero_from(const Poly& p, std::size_t start) {
    for (std::size_t i = start; i < p.size(); ++i)
        if (p[i] != 0) return false;
    return true;
}

// Solves sum_j x_j * columns[j] = target over Q; nullopt if inconsistent.
std::optional<Poly> solve_columns(const std::vector<Poly>& columns, const Poly& target) {
    const std::size_t rows = target.size();
    const std::size_t cols = columns.size();
    std::vector<Poly> m(rows, Poly(cols + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = columns[c][r];
        m[r][cols] = target[r];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < rows; ++c) {
        std::size_t p = row;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][c];
        for (std::size_t k = c; k <= cols; ++k) m[row][k] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = c; k <= cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivot_col.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < rows; ++r)
        if (m[r][cols] != 0) return std::nullopt;
    Poly x(cols, Rational(0));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = m[r][cols];
    return x;
}

Poly monomial(std::size_t degree, unsigned long n) {
    Poly p(degree + 1, Rational(0));
    p[degree] = 1;
    return reduce_poly(std::move(p), n);
}

std::optional<Integer> exact_root(const Integer& v, unsigned long k) {
    if (v < 0) return std::nullopt;
    Integer r;
    if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) != 0) return r;
    return std::nullopt;
}

std::optional<Rational> rational_root(const Rational& q, unsigned long k) {
    auto n = exact_root(q.get_num(), k);
    auto d = exact_root(q.get_den(), k);
    if (!n || !d) return std::nullopt;
    Rational r(*n, *d);
    r.canonicalize();
    return r;
}

long legendre(long a, long p) {
    Integer r;
    Integer base = a % p;
    mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), (p - 1) / 2, Integer(p).get_mpz_t());
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

std::optional<Scalar> sqrt_prime(unsigned long p) {
    if (p == 2) return Scalar::root_of_unity(8, 1) + Scalar::root_of_unity(8, 7);
    if (4 * p > max_conductor()) return std::nullopt;
    Scalar gauss;
    for (unsigned long a = 1; a < p; ++a)
        gauss += Scalar(legendre(static_cast<long>(a), static_cast<long>(p))) * Scalar::root_of_unity(p, a);
    if (p % 4 == 1) return gauss;
    return -Scalar::root_of_unity(4, 1) * gauss;
}

// Square root of a positive rational inside a cyclotomic field.
std::optional<Scalar> sqrt_rational(const Rational& s) {
    if (s == 0) return Scalar();
    Integer n = s.get_num() * s.get_den();
    Scalar result(Rational(1, 1) / Rational(s.get_den()));
    for (unsigned long p = 2; n > 1; ++p) {
        if (p * p > n) {
            if (!n.fits_ulong_p()) return std::nullopt;
            auto root = sqrt_prime(n.get_ui());
            if (!root) return std::nullopt;
            result *= *root;
            break;
        }
        unsigned count = 0;
        while (n % p == 0) {
            n /= p;
            ++count;
        }
        for (unsigned i = 0; i + 1 < count; i += 2) result *= Scalar(static_cast<long>(p));
        if (count % 2 == 1) {
            auto root = sqrt_prime(p);
            if (!root) return std::nullopt;
            result *= *root;
        }
    }
    return result;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> Rational { fail(ErrorCode::ParseError, "malformed rational '" + text + "'"); };
    auto slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view all(text);
    if (slash == std::string::npos) {
        if (!digits_ok(all, true)) return bad();
        return Rational(Integer(text));
    }
    std::string_view num = all.substr(0, slash), den = all.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) return bad();
    Integer d{std::string(den)};
    if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    Rational q(Integer(std::string(num)), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational floor(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

unsigned long max_conductor() {
    static const unsigned long value = [] {
        const char* env = std::getenv("KATZ_MAX_CONDUCTOR");
        if (env != nullptr) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end != env && v > 0) return v;
        }
        return 1024UL;
    }();
    return value;
}

Scalar::Scalar() : coords_{Rational(0)} {}
Scalar::Scalar(long value) : coords_{Rational(value)} {}
Scalar::Scalar(const Rational& value) : coords_{value} {}

Scalar::Scalar(unsigned long conductor, std::vector<Rational> coords, bool shrink)
    : conductor_(conductor), coords_(std::move(coords)) {
    if (shrink) *this = minimal();
}

Scalar Scalar::root_of_unity(unsigned long n, long k) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "root of unity of order 0");
    if (n > max_conductor()) fail(ErrorCode::ConductorTooSmall, "conductor " + std::to_string(n) + " exceeds cap");
    long e = k % static_cast<long>(n);
    if (e < 0) e += static_cast<long>(n);
    return Scalar(n, monomial(static_cast<std::size_t>(e), n), true);
}

Scalar Scalar::from_coords(unsigned long conductor, std::vector<Rational> coords) {
    if (conductor == 0) fail(ErrorCode::InvalidArgument, "conductor must be positive");
    if (coords.size() != euler_phi(conductor))
        fail(ErrorCode::InvalidArgument, "expected " + std::to_string(euler_phi(conductor)) + " coordinates for conductor " +
                                             std::to_string(conductor));
    return Scalar(conductor, std::move(coords), true);
}

bool Scalar::is_zero() const { return all_zero_from(coords_, 0); }
bool Scalar::is_rational() const { return all_zero_from(coords_, 1); }
bool Scalar::is_integer() const { return is_rational() && coords_[0].get_den() == 1; }

Scalar Scalar::embed(unsigned long conductor) const {
    if (conductor == 0 || conductor % conductor_ != 0)
        fail(ErrorCode::IncompatibleConductor,
             std::to_string(conductor_) + " does not divide " + std::to_string(conductor));
    if (conductor == conductor_) return *this;
    return Scalar(conductor, embed_coords(coords_, conductor_, conductor), false);
}

Scalar Scalar::minimal() const {
    if (is_rational()) return Scalar(coords_[0]);
    for (unsigned long d = 2; d < conductor_; ++d) {
        if (conductor_ % d != 0 || d % 4 == 2) continue;
        std::vector<Poly> columns;
        const unsigned long step = conductor_ / d;
        for (std::size_t i = 0; i < euler_phi(d); ++i) columns.push_back(monomial(i * step, conductor_));
        if (auto x = solve_columns(columns, coords_)) return Scalar(d, std::move(*x), false);
    }
    return *this;
}

Scalar Scalar::operator-() const {
    Poly c = coords_;
    for (auto& v : c) v = -v;
    return Scalar(conductor_, std::move(c), false);
}

namespace {

unsigned long common_conductor(unsigned long a, unsigned long b) {
    unsigned long n = std::lcm(a, b);
    if (n > max_conductor()) fail(ErrorCode::ConductorTooSmall, "conductor " + std::to_string(n) + " exceeds cap");
    return n;
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.conductor_ == 1 && b.conductor_ == 1) return Scalar(a.coords_[0] + b.coords_[0]);
    unsigned long n = common_conductor(a.conductor_, b.conductor_);
    Poly x = embed_coords(a.coords_, a.conductor_, n);
    Poly y = embed_coords(b.coords_, b.conductor_, n);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return Scalar(n, std::move(x), true);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.conductor_ == 1 && b.conductor_ == 1) return Scalar(a.coords_[0] * b.coords_[0]);
    if (b.conductor_ == 1 || a.conductor_ == 1) {
        const Scalar& v = a.conductor_ == 1 ? b : a;
        const Rational& s = a.conductor_ == 1 ? a.coords_[0] : b.coords_[0];
        Poly c = v.coords_;
        for (auto& x : c) x *= s;
        return Scalar(v.conductor_, std::move(c), s == 0);
    }
    unsigned long n = common_conductor(a.conductor_, b.conductor_);
    Poly x = embed_coords(a.coords_, a.conductor_, n);
    Poly y = embed_coords(b.coords_, b.conductor_, n);
    Poly prod(x.size() + y.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] += x[i] * y[j];
    }
    return Scalar(n, reduce_poly(std::move(prod), n), true);
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (conductor_ == 1) return Scalar(1 / coords_[0]);
    // Columns of the multiplication-by-this matrix; solve for the preimage of 1.
    std::vector<Poly> columns;
    const std::size_t deg = coords_.size();
    for (std::size_t j = 0; j < deg; ++j) {
        Poly shifted(deg + j, Rational(0));
        for (std::size_t i = 0; i < deg; ++i) shifted[i + j] = coords_[i];
        columns.push_back(reduce_poly(std::move(shifted), conductor_));
    }
    Poly one(deg, Rational(0));
    one[0] = 1;
    auto x = solve_columns(columns, one);
    if (!x) fail(ErrorCode::InternalInconsistency, "singular multiplication matrix");
    return Scalar(conductor_, std::move(*x), true);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
    return a * b.inverse();
}

Scalar Scalar::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Scalar result(1L), base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

std::optional<Scalar> Scalar::nth_root(unsigned long k) const {
    if (k == 0) fail(ErrorCode::InvalidArgument, "zeroth root");
    if (k == 1 || is_zero()) return *this;
    const unsigned long m = conductor_ % 2 == 0 ? conductor_ : 2 * conductor_;
    // this = zeta_m^j * q with q a positive rational, if possible.
    std::optional<unsigned long> unit_exp;
    Rational q;
    for (unsigned long j = 0; j < m; ++j) {
        Scalar v = j == 0 ? *this : *this * root_of_unity(m, -static_cast<long>(j));
        if (v.is_rational()) {
            q = v.constant();
            unit_exp = j;
            break;
        }
    }
    if (!unit_exp) return std::nullopt;
    unsigned long j = *unit_exp;
    if (q < 0) {
        q = -q;
        j = (j + m / 2) % m;
    }
    std::optional<Scalar> magnitude;
    if (auto r = rational_root(q, k)) {
        magnitude = Scalar(*r);
    } else if (k % 2 == 0) {
        if (auto half = rational_root(q, k / 2)) magnitude = sqrt_rational(*half);
    }
    if (!magnitude) return std::nullopt;
    if (k * m > max_conductor() && j != 0) return std::nullopt;
    Scalar root = j == 0 ? *magnitude : *magnitude * root_of_unity(k * m, static_cast<long>(j));
    if (root.pow(static_cast<long>(k)) != *this)
        fail(ErrorCode::InternalInconsistency, "root check failed for " + to_string());
    return root;
}

Scalar Scalar::root(unsigned long k) const {
    auto r = nth_root(k);
    if (!r)
        fail(ErrorCode::OutsideCoefficientField,
             "no " + std::to_string(k) + "-th root of " + to_string() + " in a cyclotomic field up to conductor " +
                 std::to_string(max_conductor()));
    return *r;
}

Scalar Scalar::reduced_mod(const Rational& modulus) const {
    Rational c0 = coords_[0];
    Rational shift = floor(c0 / modulus) * modulus;
    if (shift == 0) return *this;
    Poly c = coords_;
    c[0] -= shift;
    return Scalar(conductor_, std::move(c), false);
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.conductor_ == b.conductor_) return a.coords_ == b.coords_;
    unsigned long n = std::lcm(a.conductor_, b.conductor_);
    return embed_coords(a.coords_, a.conductor_, n) == embed_coords(b.coords_, b.conductor_, n);
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    Scalar x = a.minimal(), y = b.minimal();
    if (auto c = x.conductor_ <=> y.conductor_; c != 0) return c;
    for (std::size_t i = 0; i < x.coords_.size(); ++i) {
        int c = cmp(x.coords_[i], y.coords_[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
    if (is_rational()) return coords_[0].get_str();
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0) continue;
        if (!first) out << " + ";
        first = false;
        if (i == 0) {
            out << coords_[i].get_str();
            continue;
        }
        if (coords_[i] != 1) out << coords_[i].get_str() << "*";
        out << "zeta" << conductor_;
        if (i > 1) out << "^" << i;
    }
    return out.str();
}

}  // namespace katz
