#include "arithdyn/bigint.hpp"

#include "arithdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace arithdyn {

double log_abs(const Integer& x) {
    if (sgn(x) == 0) throw InvalidInput("log of zero");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

std::size_t bit_length(const Integer& x) {
    if (sgn(x) == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

namespace {

bool valid_integer_text(std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view trim(std::string_view t) {
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
    return t;
}

}  // namespace

Integer parse_integer(std::string_view text) {
    text = trim(text);
    if (!valid_integer_text(text)) throw InvalidInput("not an integer: '" + std::string(text) + "'");
    std::string s(text);
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (sgn(den) == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer floor_root(const Integer& x, unsigned long k) {
    if (sgn(x) < 0) throw InvalidInput("floor_root of negative value");
    Integer r;
    mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    return r;
}

Integer gcd_of(std::span<const Integer> values) {
    Integer g = 0;
    for (const auto& v : values) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    Integer z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return out;
}

namespace {

Integer pollard_brent(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, g = 1, q = 1, x, ys;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto step = [&](Integer& v) {
            v = v * v + c;
            v %= n;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) step(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    step(y);
                    Integer diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                step(ys);
                Integer diff = x - ys;
                diff = abs(diff);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(const Integer& n, std::vector<Integer>& primes) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
        primes.push_back(n);
        return;
    }
    Integer d = pollard_brent(n);
    factor_into(d, primes);
    factor_into(Integer(n / d), primes);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factor(const Integer& n) {
    if (sgn(n) == 0) throw InvalidInput("cannot factor zero");
    Integer m = abs(n);
    std::vector<Integer> primes;
    for (unsigned long p = 2; p < 1000 && m > 1; ++p) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            primes.emplace_back(p);
            m /= p;
        }
    }
    factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Integer, unsigned>> out;
    for (const auto& p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1u);
    }
    return out;
}

std::vector<Integer> positive_divisors(const Integer& n) {
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : factor(n)) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    return mpz_fdiv_ui(x.get_mpz_t(), m);
}

}  // namespace arithdyn
