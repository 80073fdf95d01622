#include "arithdyn/finite_field.hpp"

#include "arithdyn/errors.hpp"

#include <map>
#include <mutex>
#include <string>

namespace arithdyn {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (n) {
        if (n & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        n >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    trim(out);
    return out;
}

// Remainder of a modulo a nonzero polynomial m.
Poly poly_rem(Poly a, const Poly& m, std::uint64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = inv_mod(m.back(), p);
    while (!a.empty() && a.size() - 1 >= dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t c = mulmod(a.back(), lead_inv, p);
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_powmod(Poly base, std::uint64_t n, const Poly& m, std::uint64_t p) {
    Poly result{1};
    base = poly_rem(std::move(base), m, p);
    while (n) {
        if (n & 1) result = poly_rem(poly_mul(result, base, p), m, p);
        base = poly_rem(poly_mul(base, base, p), m, p);
        n >>= 1;
    }
    return result;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool FiniteField::is_irreducible(std::span<const std::uint64_t> monic, std::uint64_t p) {
    Poly f(monic.begin(), monic.end());
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t r = f.size() - 1;
    if (r == 1) return true;
    Poly power{0, 1};  // X^{p^s} mod f, starting from s = 0
    for (std::size_t s = 1; s <= r / 2; ++s) {
        power = poly_powmod(power, p, f, p);
        Poly diff = power;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty()) return false;
        if (poly_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> FiniteField::first_irreducible(std::uint64_t p, unsigned r) {
    if (r == 0) throw InvalidInput("extension degree must be at least 1");
    Poly f(r + 1, 0);
    f[r] = 1;
    for (;;) {
        if (is_irreducible(f, p)) return f;
        // Next candidate: increment (c_{r-1} ... c_0) as a base-p counter.
        std::size_t i = 0;
        while (i < r && ++f[i] == p) f[i++] = 0;
        if (i == r) throw InvalidInput("no irreducible polynomial found");  // unreachable
    }
}

FiniteField::FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), modulus_(std::move(modulus)) {
    if (p < 2 || p >= (std::uint64_t{1} << 32) || !is_prime(p))
        throw InvalidInput("characteristic must be a prime below 2^32, got " + std::to_string(p));
    trim(modulus_);
    if (modulus_.size() < 2 || modulus_.back() != 1)
        throw InvalidInput("field modulus must be monic of degree >= 1");
    for (auto c : modulus_)
        if (c >= p) throw InvalidInput("field modulus coefficients must lie in [0, p)");
    if (!is_irreducible(modulus_, p)) throw InvalidInput("field modulus is not irreducible");
    r_ = static_cast<unsigned>(modulus_.size() - 1);
    q_ = 1;
    for (unsigned i = 0; i < r_; ++i) {
        if (q_ > (~std::uint64_t{0}) / p) throw InvalidInput("field order exceeds 64 bits");
        q_ *= p;
    }
    if (r_ > 1 && q_ <= kTableLimit) build_tables();
}

std::shared_ptr<const FiniteField> FiniteField::get(std::uint64_t p, unsigned r) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({p, r}); it != cache.end()) return it->second;
    }
    if (p < 2 || !is_prime(p)) throw InvalidInput("not a prime: " + std::to_string(p));
    auto field = std::make_shared<const FiniteField>(p, first_irreducible(p, r));
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(p, r), std::move(field)).first->second;
}

FieldElement FiniteField::from_int(std::int64_t v) const {
    const auto sp = static_cast<std::int64_t>(p_);
    std::int64_t m = v % sp;
    if (m < 0) m += sp;
    return {static_cast<std::uint64_t>(m)};
}

FieldElement FiniteField::from_coeffs(std::span<const std::uint64_t> coeffs) const {
    Poly c(coeffs.begin(), coeffs.end());
    for (auto& x : c) x %= p_;
    c = poly_rem(std::move(c), modulus_, p_);
    std::uint64_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p_ + c[i];
    return {code};
}

std::vector<std::uint64_t> FiniteField::coeffs(FieldElement e) const {
    std::vector<std::uint64_t> out(r_, 0);
    std::uint64_t c = e.code;
    for (unsigned i = 0; i < r_; ++i) {
        out[i] = c % p_;
        c /= p_;
    }
    return out;
}

FieldElement FiniteField::generator_t() const {
    const std::uint64_t t[2] = {0, 1};
    return from_coeffs(t);
}

FieldElement FiniteField::neg(FieldElement a) const {
    if (r_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
    auto c = coeffs(a);
    for (auto& x : c) x = x == 0 ? 0 : p_ - x;
    return from_coeffs(c);
}

FieldElement FiniteField::add_slow(FieldElement a, FieldElement b) const {
    std::uint64_t x = a.code, y = b.code, out = 0, scale = 1;
    for (unsigned i = 0; i < r_; ++i) {
        std::uint64_t s = x % p_ + y % p_;
        if (s >= p_) s -= p_;
        out += s * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return {out};
}

FieldElement FiniteField::mul_slow(FieldElement a, FieldElement b) const {
    auto prod = poly_mul(coeffs(a), coeffs(b), p_);
    return from_coeffs(poly_rem(std::move(prod), modulus_, p_));
}

FieldElement FiniteField::pow_slow(FieldElement a, std::uint64_t n) const {
    FieldElement result = one();
    while (n) {
        if (n & 1) result = mul(result, a);
        a = mul(a, a);
        n >>= 1;
    }
    return result;
}

FieldElement FiniteField::pow(FieldElement a, std::uint64_t n) const {
    if (n == 0) return one();
    if (a.code == 0) return zero();
    // a^{q-1} = 1 for a != 0.
    const std::uint64_t e = n % (q_ - 1);
    if (has_tables()) return {exp_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a.code]) * e) % (q_ - 1))]};
    if (r_ == 1) return {powmod(a.code, e, p_)};
    return pow_slow(a, e);
}

FieldElement FiniteField::pow(FieldElement a, const Integer& n) const {
    if (sgn(n) < 0) return pow(inv(a), Integer(-n));
    if (sgn(n) == 0) return one();
    if (a.code == 0) return zero();
    return pow(a, mod_u64(n, q_ - 1));
}

FieldElement FiniteField::inv(FieldElement a) const {
    if (a.code == 0) throw InvalidInput("inverse of zero in finite field");
    if (has_tables()) {
        const std::uint32_t l = log_[a.code];
        return {exp_[l == 0 ? 0 : (q_ - 1) - l]};
    }
    return pow(a, q_ - 2);
}

void FiniteField::build_tables() {
    const std::uint64_t n = q_ - 1;
    const auto primes = distinct_prime_factors(n);
    FieldElement g{0};
    for (std::uint64_t code = 2; code < q_; ++code) {
        bool primitive = true;
        for (auto l : primes) {
            if (pow_slow({code}, n / l) == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = {code};
            break;
        }
    }
    // r > 1 here so q >= 4 and a primitive element always exists among codes >= 2.
    exp_.assign(n, 0);
    log_.assign(q_, kNoLog);
    const auto gc = coeffs(g);
    Poly cur{1};
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t code = 0;
        for (std::size_t k = cur.size(); k-- > 0;) code = code * p_ + cur[k];
        exp_[i] = static_cast<std::uint32_t>(code);
        log_[code] = static_cast<std::uint32_t>(i);
        cur = poly_rem(poly_mul(cur, gc, p_), modulus_, p_);
    }
    zech_.assign(n, kNoLog);
    for (std::uint64_t i = 0; i < n; ++i) {
        const FieldElement s = add_slow({exp_[i]}, one());
        if (s.code != 0) zech_[i] = log_[s.code];
    }
}

}  // namespace arithdyn
