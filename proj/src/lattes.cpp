#include "arithdyn/lattes.hpp"

#include "arithdyn/dynamics_finite.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/parallel.hpp"

#include <stdexcept>

namespace arithdyn {

ProjMorphism lattes_map(const WeierstrassCurve& E) {
    const Integer& a = E.a();
    const Integer& b = E.b();
    // (x^2 - a z^2)^2 - 8b x z^3
    HomogeneousForm num(2, 4);
    num.add_term({4, 0}, 1);
    num.add_term({2, 2}, -2 * a);
    num.add_term({0, 4}, a * a);
    num.add_term({1, 3}, -8 * b);
    // 4z(x^3 + a x z^2 + b z^3)
    HomogeneousForm den(2, 4);
    den.add_term({3, 1}, 4);
    den.add_term({1, 3}, 4 * a);
    den.add_term({0, 4}, 4 * b);
    return ProjMorphism::validate({num, den});
}

namespace {

std::array<HomogeneousForm, 3> raw_quartics(const Integer& a, const Integer& b) {
    HomogeneousForm h0(3, 4), h1(3, 4), h2(3, 4);
    h0.add_term({1, 3, 0}, 2);
    h0.add_term({2, 1, 1}, -6 * a);
    h0.add_term({1, 1, 2}, -18 * b);
    h0.add_term({0, 1, 3}, 2 * a * a);

    h1.add_term({0, 4, 0}, 1);
    h1.add_term({1, 2, 1}, 3 * a);
    h1.add_term({0, 2, 2}, 18 * b);
    h1.add_term({2, 0, 2}, -9 * a * a);
    h1.add_term({1, 0, 3}, -27 * a * b);
    h1.add_term({0, 0, 4}, -(a * a * a + 27 * b * b));

    h2.add_term({0, 3, 1}, 8);
    return {h0, h1, h2};
}

std::optional<ProjPointF> evaluate_point(const std::array<HomogeneousForm, 3>& h, const ProjPointF& P) {
    std::vector<FieldElement> v;
    for (const auto& f : h) v.push_back(evaluate_form(f, P));
    if (!normalize_in_place(P.field(), v)) return std::nullopt;
    return ProjPointF(P.field_ptr(), std::move(v));
}

void check_against_group_law(const WeierstrassCurve& E, const std::array<HomogeneousForm, 3>& h) {
    std::size_t checked = 0, primes = 0;
    for (std::uint64_t p = 5; checked < 20 || primes < 3; ++p) {
        if (!E.is_good_prime(p)) continue;
        ++primes;
        const FieldPtr field = FiniteField::get(p, 1);
        for (const auto& P : curve_points(E, field)) {
            const auto image = evaluate_point(h, P);
            if (!image || !(*image == ec_double(E, P)))
                throw std::logic_error("duplication quartics disagree with the group law at " + P.to_string() +
                                       " mod " + std::to_string(p));
            ++checked;
        }
    }
}

int radial_value(unsigned k) {
    const int m = static_cast<int>((k + 1) / 2);
    return k % 2 ? m : -m;
}

std::array<HomogeneousForm, 3> correctors_from(const std::array<int, 9>& c) {
    std::array<HomogeneousForm, 3> l{HomogeneousForm(3, 1), HomogeneousForm(3, 1), HomogeneousForm(3, 1)};
    for (std::size_t i = 0; i < 3; ++i) {
        l[i].add_term({1, 0, 0}, c[3 * i]);
        l[i].add_term({0, 1, 0}, c[3 * i + 1]);
        l[i].add_term({0, 0, 1}, c[3 * i + 2]);
    }
    return l;
}

std::vector<HomogeneousForm> extended_forms(const std::array<HomogeneousForm, 3>& h, const HomogeneousForm& cubic,
                                            const std::array<HomogeneousForm, 3>& l) {
    std::vector<HomogeneousForm> F;
    for (std::size_t i = 0; i < 3; ++i) F.push_back(h[i] + l[i] * cubic);
    return F;
}

// Full rank mod p at a tested degree implies full rank over Q.
constexpr std::uint64_t kFilterPrime = 2305843009213693951ull;  // 2^61 - 1

bool passes_filter(const std::vector<HomogeneousForm>& F, unsigned base_degree, unsigned extra) {
    for (unsigned D = base_degree; D <= base_degree + extra; ++D) {
        const IntMatrix m = macaulay_matrix(F, D);
        if (rank_mod_p(m, kFilterPrime) == m.rows()) return true;
    }
    return false;
}

// Candidates of max-norm exactly s, in odometer order (last digit fastest).
class ShellCursor {
public:
    explicit ShellCursor(unsigned s) : s_(s) {}

    bool next(std::array<int, 9>& out) {
        for (;;) {
            if (done_) return false;
            if (!started_) {
                started_ = true;
            } else if (!advance()) {
                done_ = true;
                return false;
            }
            unsigned top = 0;
            for (unsigned d : digits_) top = std::max(top, (d + 1) / 2);
            if (top != s_) continue;
            for (std::size_t i = 0; i < 9; ++i) out[i] = radial_value(digits_[i]);
            return true;
        }
    }

private:
    bool advance() {
        for (std::size_t i = 9; i-- > 0;) {
            if (digits_[i] < 2 * s_) {
                ++digits_[i];
                return true;
            }
            digits_[i] = 0;
        }
        return false;
    }

    unsigned s_;
    std::array<unsigned, 9> digits_{};
    bool started_ = false;
    bool done_ = false;
};

}  // namespace

std::array<HomogeneousForm, 3> duplication_quartics(const WeierstrassCurve& E) {
    auto h = raw_quartics(E.a(), E.b());
    check_against_group_law(E, h);
    return h;
}

ExtensionResult extend_duplication(const WeierstrassCurve& E, const ExtendOptions& opts) {
    if (opts.budget < 0) throw InvalidInput("corrector budget must be nonnegative");
    const auto h = duplication_quartics(E);
    const HomogeneousForm cubic = E.cubic();
    const ValidateOptions vopts{};
    const unsigned base = 3 * (4 - 1) + 1;
    const std::size_t batch = 64 * std::max(1u, opts.threads);

    std::uint64_t tried = 0;
    for (unsigned s = 0; s <= static_cast<unsigned>(opts.budget); ++s) {
        ShellCursor cursor(s);
        for (;;) {
            std::vector<std::array<int, 9>> cands;
            std::array<int, 9> c{};
            while (cands.size() < batch && cursor.next(c)) cands.push_back(c);
            if (cands.empty()) break;
            std::vector<char> ok(cands.size(), 0);
            parallel_for(cands.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i)
                    ok[i] = passes_filter(extended_forms(h, cubic, correctors_from(cands[i])), base, vopts.extra_degrees);
            });
            for (std::size_t i = 0; i < cands.size(); ++i) {
                ++tried;
                if (!ok[i]) continue;
                const auto l = correctors_from(cands[i]);
                ProjMorphism F = ProjMorphism::validate(extended_forms(h, cubic, l), vopts);
                return {std::move(F), h, l, tried};
            }
        }
    }
    throw BudgetExceeded("no certified corrector triple with coefficients bounded by " +
                         std::to_string(opts.budget) + " (" + std::to_string(tried) + " candidates tried)");
}

GenusFeasibility genus_feasibility(unsigned N, unsigned d) {
    if (N < 1 || d < 1) throw InvalidInput("genus_feasibility needs N >= 1 and d >= 1");
    Integer dN1;
    mpz_ui_pow_ui(dN1.get_mpz_t(), d, N - 1);
    const Integer two_g_minus_2 = dN1 * (Integer((N + 1) * (d - 1)) - 2 * d);
    GenusFeasibility out;
    out.genus = Rational(two_g_minus_2 + 2, 2);
    out.genus.canonicalize();
    out.feasible = out.genus >= 2;
    return out;
}

bool genus_inequality(unsigned N, unsigned d) {
    Integer dN1, dN;
    mpz_ui_pow_ui(dN1.get_mpz_t(), d, N - 1);
    mpz_ui_pow_ui(dN.get_mpz_t(), d, N);
    return dN1 * (N + 1) * (d - 1) >= 2 * dN + 2;
}

}  // namespace arithdyn
