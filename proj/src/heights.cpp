#include "arithdyn/heights.hpp"

#include "arithdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace arithdyn {

double weil_height(const ProjPointQ& x) { return log_abs(x.naive_height()); }

// ---------------------------------------------------------------------------
// Bounded enumeration

BoundedPointStream::BoundedPointStream(std::size_t dim, std::int64_t bound)
    : dim_(dim), bound_(bound), cur_(dim + 1, 0) {
    if (bound < 1) throw InvalidInput("height bound must be at least 1");
    if (bound > (std::int64_t{1} << 31)) throw BudgetExceeded("height bound too large to enumerate");
}

bool BoundedPointStream::advance() {
    if (!started_) {
        started_ = true;
        pivot_ = 0;
        std::fill(cur_.begin(), cur_.end(), -bound_);
        cur_[0] = 1;
        return true;
    }
    // odometer on the trailing coordinates, then the pivot value, then the pivot position
    for (std::size_t j = dim_; j > pivot_; --j) {
        if (cur_[j] < bound_) {
            ++cur_[j];
            return true;
        }
        cur_[j] = -bound_;
    }
    if (cur_[pivot_] < bound_) {
        ++cur_[pivot_];
        return true;
    }
    if (pivot_ == dim_) return false;
    ++pivot_;
    for (std::size_t j = 0; j < pivot_; ++j) cur_[j] = 0;
    cur_[pivot_] = 1;
    for (std::size_t j = pivot_ + 1; j <= dim_; ++j) cur_[j] = -bound_;
    return true;
}

std::optional<std::span<const std::int64_t>> BoundedPointStream::next_raw() {
    while (!done_) {
        if (!advance()) {
            done_ = true;
            break;
        }
        std::int64_t g = 0;
        for (std::size_t j = pivot_; j <= dim_ && g != 1; ++j) g = std::gcd(g, cur_[j]);
        if (g == 1) return std::span<const std::int64_t>(cur_);
    }
    return std::nullopt;
}

std::optional<ProjPointQ> BoundedPointStream::next() {
    auto raw = next_raw();
    if (!raw) return std::nullopt;
    std::vector<Integer> c;
    c.reserve(raw->size());
    for (auto v : *raw) c.emplace_back(static_cast<long>(v));
    return ProjPointQ(std::move(c));
}

std::vector<ProjPointQ> enumerate_points(std::size_t dim, std::int64_t bound) {
    std::vector<ProjPointQ> out;
    BoundedPointStream s(dim, bound);
    while (auto x = s.next()) out.push_back(std::move(*x));
    return out;
}

std::uint64_t count_points(std::size_t dim, std::int64_t bound) {
    std::uint64_t n = 0;
    BoundedPointStream s(dim, bound);
    while (s.next_raw()) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Comparison constants

NullstellensatzIdentities nullstellensatz_identities(const ProjMorphism& f) {
    const auto& forms = f.forms();
    const std::size_t n = forms.size();
    const unsigned d = f.degree();
    NullstellensatzIdentities out;
    out.degree = f.certificate().kind == ValidityCertificate::Kind::resultant
                     ? 2 * d - 1
                     : f.certificate().witness_degree;
    const unsigned D = out.degree;
    const IntMatrix m = macaulay_matrix(forms, D);
    const RankProfile prof = bareiss_rank(m);
    if (prof.rank != m.rows()) throw InvalidInput("Macaulay matrix not of full rank at the witness degree");

    std::vector<std::size_t> all_rows(m.rows());
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    const IntMatrix sub = m.submatrix(all_rows, prof.pivot_cols);

    const auto rows = monomials(n, D);
    std::vector<std::vector<Integer>> rhs;
    for (std::size_t k = 0; k < n; ++k) {
        Exponents pure(n, 0);
        pure[k] = D;
        const auto it = std::find(rows.begin(), rows.end(), pure);
        std::vector<Integer> e(m.rows(), 0);
        e[static_cast<std::size_t>(it - rows.begin())] = 1;
        rhs.push_back(std::move(e));
    }
    const auto sol = solve_exact(sub, rhs);

    Integer R = 1;
    for (const auto& col : sol)
        for (const auto& q : col) mpz_lcm(R.get_mpz_t(), R.get_mpz_t(), q.get_den_mpz_t());
    out.denominator = R;

    const auto mults = monomials(n, D - d);
    out.cofactors.assign(n, std::vector<HomogeneousForm>(n, HomogeneousForm(n, D - d)));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t t = 0; t < prof.pivot_cols.size(); ++t) {
            const Rational& q = sol[k][t];
            if (sgn(q) == 0) continue;
            const std::size_t col = prof.pivot_cols[t];
            const std::size_t j = col / mults.size();
            const std::size_t mi = col % mults.size();
            out.cofactors[k][j].add_term(mults[mi], Integer(q.get_num() * (R / q.get_den())));
        }
    }
    return out;
}

ComparisonConstant comparison_constant(const ProjMorphism& f) {
    ComparisonConstant cc;
    cc.k_up = 0;
    for (const auto& F : f.forms()) cc.k_up = std::max(cc.k_up, F.l1_norm());
    const auto ids = nullstellensatz_identities(f);
    cc.k_low = 0;
    for (const auto& row : ids.cofactors) {
        Integer s = 0;
        for (const auto& g : row) s += g.l1_norm();
        cc.k_low = std::max(cc.k_low, s);
    }
    cc.identity_denominator = ids.denominator;
    cc.c_up = log_abs(cc.k_up);
    cc.c_low = log_abs(cc.k_low);
    cc.C = std::max(cc.c_up, cc.c_low);
    return cc;
}

bool beyond_escape_height(const ProjPointQ& x, const ComparisonConstant& cc, unsigned degree) {
    Integer hp;
    const Integer H = x.naive_height();
    mpz_pow_ui(hp.get_mpz_t(), H.get_mpz_t(), degree - 1);
    return hp > cc.k();
}

Integer escape_height_bound(const ComparisonConstant& cc, unsigned degree) {
    return floor_root(cc.k(), degree - 1);
}

// ---------------------------------------------------------------------------
// Canonical height

namespace {

constexpr double kUlpSlack = 8 * std::numeric_limits<double>::epsilon();

// Conservative upper value of a positive double log.
double up(double v) { return v * (1 + kUlpSlack) + std::numeric_limits<double>::denorm_min(); }

double log_mpf(const mpf_class& v) {
    long exp = 0;
    const double mant = mpf_get_d_2exp(&exp, v.get_mpf_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

struct FloatForms {
    struct Term {
        mpf_class coeff;
        std::vector<unsigned> exps;
    };
    std::vector<std::vector<Term>> forms;
};

FloatForms to_float(const ProjMorphism& f, unsigned prec) {
    FloatForms out;
    for (const auto& F : f.forms()) {
        std::vector<FloatForms::Term> ts;
        for (const auto& [e, c] : F.terms()) ts.push_back({mpf_class(c, prec), e});
        out.forms.push_back(std::move(ts));
    }
    return out;
}

}  // namespace

HeightEstimate canonical_height(const ProjMorphism& f, const ProjPointQ& x, double tol,
                                const CanonicalHeightOptions& opts) {
    return canonical_height(f, comparison_constant(f), x, tol, opts);
}

HeightEstimate canonical_height(const ProjMorphism& f, const ComparisonConstant& cc, const ProjPointQ& x, double tol,
                                const CanonicalHeightOptions& opts) {
    const unsigned d = f.degree();
    if (d < 2) throw InvalidInput("canonical height needs degree >= 2");
    if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
    if (x.dim() != f.dim()) throw InvalidInput("point dimension does not match morphism");

    const double C = cc.C == 0 ? 0.0 : up(cc.C);
    const double dd = static_cast<double>(d);
    // Tate tail bound after n steps: C / ((d-1) d^n)
    auto tail = [&](unsigned n) { return C / ((dd - 1) * std::pow(dd, static_cast<double>(n))); };
    auto slack = [&](double value) { return kUlpSlack * (std::fabs(value) + C + 1); };

    HeightEstimate est;
    std::unordered_set<ProjPointQ, ProjPointQHash> seen;
    bool may_cycle = true;
    ProjPointQ cur = x;
    double scale = 1;  // d^{-n}
    unsigned n = 0;
    for (;;) {
        if (may_cycle) {
            if (beyond_escape_height(cur, cc, d)) {
                may_cycle = false;
                seen.clear();
            } else if (!seen.insert(cur).second) {
                est.value = 0;
                est.error_bound = 0;
                est.iterations = n;
                est.exact_iterations = n;
                est.preperiodic_detected = true;
                return est;
            }
        }
        const double value = weil_height(cur) * scale;
        if (tail(n) + slack(value) <= tol) {
            est.value = value;
            est.error_bound = tail(n) + slack(value);
            est.iterations = n;
            est.exact_iterations = n;
            return est;
        }
        if (n >= opts.max_iterations) throw BudgetExceeded("canonical height: iteration limit reached");
        std::size_t bits = 0;
        for (const auto& c : cur.coords()) bits = std::max(bits, bit_length(c));
        if (bits > opts.max_exact_bits) break;
        cur = apply(f, cur, cc.identity_denominator);
        ++n;
        scale /= dd;
    }

    // Float continuation. Track a unit-max-norm direction w of the orbit and sum
    // the telescoping terms (h(f^k x) - d h(f^{k-1} x)) / d^k.
    const unsigned prec = opts.float_precision;
    const FloatForms ff = to_float(f, prec);
    const std::size_t nv = f.forms().size();
    const double log_r = log_abs(cc.identity_denominator);
    const double norm1 = static_cast<double>(cc.k_up.get_d());
    const double m_low = std::exp(log_r - cc.c_low);  // max|F(v)| >= m_low on the unit sphere
    const double c_low_arch = cc.c_low - log_r;
    std::size_t max_terms = 0;
    for (const auto& F : f.forms()) max_terms = std::max(max_terms, F.terms().size());
    const double unit = std::ldexp(1.0, -static_cast<int>(prec) + 2);

    double value = weil_height(cur) * scale;
    double err = slack(value);
    std::vector<mpf_class> w(nv, mpf_class(0, prec));
    {
        const Integer H = cur.naive_height();
        const mpf_class Hf(H, prec);
        for (std::size_t i = 0; i < nv; ++i) {
            w[i] = mpf_class(cur[i], prec);
            w[i] /= Hf;
        }
    }
    double eps = unit;
    const unsigned exact_n = n;

    // The gcd removed at each step divides R and is determined by the orbit
    // mod R, so track the primitive orbit exactly modulo R^K, losing at most
    // one factor R per step.
    const Integer& R = cc.identity_denominator;
    const bool track_gcd = R > 1;
    Integer modulus = 1;
    std::vector<Integer> y;
    if (track_gcd) {
        unsigned needed = n;
        while (tail(needed) > tol / 4 && needed < opts.max_iterations) ++needed;
        mpz_pow_ui(modulus.get_mpz_t(), R.get_mpz_t(), needed - n + 8);
        for (const auto& c : cur.coords()) {
            y.emplace_back();
            mpz_mod(y.back().get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
        }
    }
    Integer g, rem;
    std::vector<std::vector<mpf_class>> powers(nv, std::vector<mpf_class>(d + 1, mpf_class(0, prec)));
    std::vector<mpf_class> Fw(nv, mpf_class(0, prec));
    mpf_class term(0, prec), M(0, prec), wmax(0, prec), a(0, prec);
    while (tail(n) + err > tol) {
        if (n >= opts.max_iterations) throw BudgetExceeded("canonical height: iteration limit reached");
        if (err > tol)
            throw BudgetExceeded("canonical height: float continuation error exceeds the tolerance; "
                                 "raise max_exact_bits or float_precision");
        wmax = 0;
        for (std::size_t i = 0; i < nv; ++i) {
            powers[i][0] = 1;
            for (unsigned k = 1; k <= d; ++k) powers[i][k] = powers[i][k - 1] * w[i];
            a = abs(w[i]);
            if (a > wmax) wmax = a;
        }
        M = 0;
        for (std::size_t j = 0; j < nv; ++j) {
            Fw[j] = 0;
            for (const auto& t : ff.forms[j]) {
                term = t.coeff;
                for (std::size_t i = 0; i < nv; ++i)
                    if (t.exps[i]) term *= powers[i][t.exps[i]];
                Fw[j] += term;
            }
            a = abs(Fw[j]);
            if (a > M) M = a;
        }
        if (M == 0) throw BudgetExceeded("canonical height: float continuation lost all precision");
        ++n;
        scale /= dd;
        const double phi = log_mpf(M) - dd * log_mpf(wmax);
        double log_g = log_r / 2, g_err = log_r / 2;
        if (track_gcd) {
            mpz_mod(rem.get_mpz_t(), modulus.get_mpz_t(), R.get_mpz_t());
            if (sgn(rem) == 0) {
                std::vector<Integer> fy;
                g = R;
                for (const auto& F : f.forms()) {
                    fy.push_back(F.evaluate(y));
                    mpz_mod(fy.back().get_mpz_t(), fy.back().get_mpz_t(), modulus.get_mpz_t());
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), fy.back().get_mpz_t());
                }
                for (std::size_t i = 0; i < nv; ++i) mpz_divexact(y[i].get_mpz_t(), fy[i].get_mpz_t(), g.get_mpz_t());
                mpz_divexact(modulus.get_mpz_t(), modulus.get_mpz_t(), g.get_mpz_t());
                log_g = log_abs(g);
                g_err = 0;
            }
        }
        value += (phi - log_g) * scale;

        // Error of this term: perturbation of the direction, gcd uncertainty, rounding.
        const double growth = std::pow(1 + eps, dd);
        const double dF = norm1 * (growth - 1);
        const double gamma = norm1 * static_cast<double>(d + max_terms + 2) * unit * growth;
        double term_err;
        if (eps < 0.5 && dF + gamma < m_low / 2)
            term_err = -std::log1p(-(dF + gamma) / m_low) - dd * std::log1p(-eps);
        else
            term_err = cc.c_up + c_low_arch;
        term_err += g_err + kUlpSlack * (std::fabs(phi) + 1);
        err += term_err * scale + slack(value) * scale;

        if (eps < 1) eps = std::min(2.0, 2 * (dF + gamma) / std::max(m_low - dF - gamma, 1e-300) + unit);
        for (std::size_t i = 0; i < nv; ++i) {
            w[i] = Fw[i];
            w[i] /= M;
        }
    }
    est.value = value;
    est.error_bound = tail(n) + err;
    est.iterations = n;
    est.exact_iterations = exact_n;
    return est;
}

}  // namespace arithdyn
