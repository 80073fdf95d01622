#include "arithdyn/form.hpp"

#include "arithdyn/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace arithdyn {

namespace {

void monomials_rec(std::size_t n_vars, unsigned remaining, Exponents& cur, std::size_t i,
                   std::vector<Exponents>& out) {
    if (i + 1 == n_vars) {
        cur[i] = remaining;
        out.push_back(cur);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        cur[i] = e;
        monomials_rec(n_vars, remaining - e, cur, i + 1, out);
    }
}

}  // namespace

std::vector<Exponents> monomials(std::size_t n_vars, unsigned degree) {
    std::vector<Exponents> out;
    if (n_vars == 0) return out;
    Exponents cur(n_vars, 0);
    monomials_rec(n_vars, degree, cur, 0, out);
    return out;
}

std::size_t monomial_count(std::size_t n_vars, unsigned degree) {
    // C(n_vars - 1 + degree, degree), computed incrementally (exact at each step)
    std::size_t c = 1;
    for (unsigned k = 1; k <= degree; ++k) c = c * (n_vars - 1 + k) / k;
    return c;
}

HomogeneousForm::HomogeneousForm(std::size_t n_vars, unsigned degree, const Terms& terms)
    : n_vars_(n_vars), degree_(degree) {
    for (const auto& [e, c] : terms) add_term(e, c);
}

HomogeneousForm HomogeneousForm::monomial(const Exponents& e, const Integer& c) {
    const unsigned d = std::accumulate(e.begin(), e.end(), 0u);
    HomogeneousForm f(e.size(), d);
    f.add_term(e, c);
    return f;
}

HomogeneousForm HomogeneousForm::variable(std::size_t n_vars, std::size_t i) {
    Exponents e(n_vars, 0);
    e[i] = 1;
    return monomial(e);
}

Integer HomogeneousForm::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
}

void HomogeneousForm::add_term(const Exponents& e, const Integer& c) {
    if (e.size() != n_vars_) throw InvalidInput("exponent vector has wrong length");
    if (std::accumulate(e.begin(), e.end(), 0u) != degree_)
        throw InvalidInput("exponent vector does not sum to the form's degree");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && degree_ != o.degree_) degree_ = o.degree_;
    if (o.n_vars_ != n_vars_ || o.degree_ != degree_) throw InvalidInput("adding forms of different shape");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& o) {
    HomogeneousForm neg = o;
    neg *= Integer(-1);
    return *this += neg;
}

HomogeneousForm& HomogeneousForm::operator*=(const Integer& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
    if (a.n_vars_ != b.n_vars_) throw InvalidInput("multiplying forms in different variables");
    HomogeneousForm out(a.n_vars_, a.degree_ + b.degree_);
    Exponents e(a.n_vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

HomogeneousForm HomogeneousForm::pow(unsigned k) const {
    HomogeneousForm out = monomial(Exponents(n_vars_, 0), 1);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
}

HomogeneousForm HomogeneousForm::divide_exact(const HomogeneousForm& b) const {
    if (b.is_zero()) throw InvalidInput("division by the zero form");
    if (b.n_vars_ != n_vars_ || b.degree_ > degree_ ) throw InvalidInput("form does not divide");
    HomogeneousForm rem = *this;
    HomogeneousForm quot(n_vars_, degree_ - b.degree_);
    const auto& [lead_e, lead_c] = *b.terms_.begin();
    while (!rem.is_zero()) {
        const auto& [re, rc] = *rem.terms_.begin();
        Exponents qe(n_vars_);
        for (std::size_t i = 0; i < n_vars_; ++i) {
            if (re[i] < lead_e[i]) throw InvalidInput("form does not divide");
            qe[i] = re[i] - lead_e[i];
        }
        if (!mpz_divisible_p(rc.get_mpz_t(), lead_c.get_mpz_t())) throw InvalidInput("form does not divide");
        const Integer qc = rc / lead_c;
        const HomogeneousForm t = monomial(qe, qc);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

Integer HomogeneousForm::content() const {
    Integer g = 0;
    for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

Integer HomogeneousForm::max_abs_coeff() const {
    Integer m = 0;
    for (const auto& [e, c] : terms_)
        if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
    return m;
}

Integer HomogeneousForm::l1_norm() const {
    Integer s = 0;
    for (const auto& [e, c] : terms_) s += abs(c);
    return s;
}

Integer HomogeneousForm::evaluate(std::span<const Integer> x) const {
    if (x.size() != n_vars_) throw InvalidInput("point dimension does not match form");
    return evaluate_as<Integer>(x, Integer(0), Integer(1), [](const Integer& c) { return c; });
}

std::string HomogeneousForm::to_string() const {
    if (is_zero()) return "0";
    static const char* const kNames3[] = {"X", "Y", "Z"};
    auto var_name = [&](std::size_t i) -> std::string {
        if (n_vars_ == 2) return i == 0 ? "X" : "Z";
        if (n_vars_ == 3) return kNames3[i];
        return "x" + std::to_string(i);
    };
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool neg = sgn(c) < 0;
        const Integer mag = abs(c);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const bool constant = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
        bool need_star = false;
        if (mag != 1 || constant) {
            os << mag.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (need_star) os << '*';
            os << var_name(i);
            if (e[i] > 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace arithdyn
