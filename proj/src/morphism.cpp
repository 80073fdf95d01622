#include "arithdyn/morphism.hpp"

#include "arithdyn/errors.hpp"

#include <map>
#include <string>

namespace arithdyn {

const char* to_string(ValidityCertificate::Kind k) {
    return k == ValidityCertificate::Kind::resultant ? "resultant" : "macaulay-rank";
}

IntMatrix sylvester_matrix(const HomogeneousForm& f, const HomogeneousForm& g) {
    if (f.n_vars() != 2 || g.n_vars() != 2 || f.degree() != g.degree())
        throw InvalidInput("sylvester_matrix expects two binary forms of equal degree");
    const unsigned d = f.degree();
    IntMatrix s(2 * d, 2 * d);
    for (unsigned row = 0; row < d; ++row) {
        for (unsigned i = 0; i <= d; ++i) {
            const Exponents e{d - i, i};
            s(row, row + i) = f.coeff(e);
            s(d + row, row + i) = g.coeff(e);
        }
    }
    return s;
}

IntMatrix macaulay_matrix(std::span<const HomogeneousForm> forms, unsigned target_degree) {
    const std::size_t n = forms.front().n_vars();
    const unsigned d = forms.front().degree();
    const auto rows = monomials(n, target_degree);
    std::map<Exponents, std::size_t, std::greater<>> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], i);
    const auto mults = monomials(n, target_degree - d);
    IntMatrix m(rows.size(), forms.size() * mults.size());
    Exponents e(n);
    for (std::size_t fi = 0; fi < forms.size(); ++fi) {
        for (std::size_t mi = 0; mi < mults.size(); ++mi) {
            const std::size_t col = fi * mults.size() + mi;
            for (const auto& [fe, c] : forms[fi].terms()) {
                for (std::size_t k = 0; k < n; ++k) e[k] = fe[k] + mults[mi][k];
                m(row_of.at(e), col) = c;
            }
        }
    }
    return m;
}

ProjMorphism ProjMorphism::validate(std::vector<HomogeneousForm> forms, const ValidateOptions& opts) {
    if (forms.size() < 2) throw InvalidInput("a self-map of P^N needs N+1 >= 2 forms");
    const std::size_t n_vars = forms.size();
    const unsigned d = forms.front().degree();
    if (d < 1) throw InvalidInput("degree must be at least 1");
    for (const auto& f : forms) {
        if (f.n_vars() != n_vars) throw InvalidInput("each form must have N+1 variables");
        if (f.degree() != d) throw InvalidInput("degree mismatch between forms");
    }
    Integer g = 0;
    for (const auto& f : forms) {
        const Integer c = f.content();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (sgn(g) == 0) throw InvalidMorphism("all forms are zero");
    if (g != 1)
        for (auto& f : forms) {
            HomogeneousForm::Terms t;
            for (const auto& [e, c] : f.terms()) t.emplace(e, Integer(c / g));
            f = HomogeneousForm(n_vars, d, t);
        }

    ValidityCertificate cert;
    if (n_vars == 2) {
        cert.kind = ValidityCertificate::Kind::resultant;
        cert.value = determinant(sylvester_matrix(forms[0], forms[1]));
        cert.witness_degree = 2 * d - 1;
        cert.rank = 2 * d;
        if (sgn(cert.value) == 0)
            throw InvalidMorphism("resultant vanishes: the forms have a common zero");
        return ProjMorphism(std::move(forms), std::move(cert));
    }

    const unsigned base = static_cast<unsigned>(n_vars) * (d - 1) + 1;
    for (unsigned D = base; D <= base + opts.extra_degrees; ++D) {
        const IntMatrix m = macaulay_matrix(forms, D);
        RankProfile prof = bareiss_rank(m);
        if (prof.rank == m.rows()) {
            cert.kind = ValidityCertificate::Kind::macaulay_rank;
            cert.value = std::move(prof.minor);
            cert.witness_degree = D;
            cert.rank = prof.rank;
            return ProjMorphism(std::move(forms), std::move(cert));
        }
    }
    throw NoCertificate("no certificate found: Macaulay matrix rank-deficient at degrees " +
                        std::to_string(base) + ".." + std::to_string(base + opts.extra_degrees));
}

ProjPointQ apply(const ProjMorphism& f, const ProjPointQ& x) {
    if (x.dim() != f.dim()) throw InvalidInput("point dimension does not match morphism");
    std::vector<Integer> out;
    out.reserve(f.forms().size());
    for (const auto& form : f.forms()) out.push_back(form.evaluate(x.coords()));
    return ProjPointQ(std::move(out));
}

ProjPointQ apply(const ProjMorphism& f, const ProjPointQ& x, const Integer& gcd_multiple) {
    if (x.dim() != f.dim()) throw InvalidInput("point dimension does not match morphism");
    std::vector<Integer> out;
    out.reserve(f.forms().size());
    for (const auto& form : f.forms()) out.push_back(form.evaluate(x.coords()));
    return ProjPointQ(std::move(out), gcd_multiple);
}

ProjPointQ iterate(const ProjMorphism& f, const ProjPointQ& x, unsigned long n) {
    ProjPointQ cur = x;
    for (unsigned long i = 0; i < n; ++i) cur = apply(f, cur);
    return cur;
}

ProjMorphism compose(const ProjMorphism& f, const ProjMorphism& g) {
    if (f.dim() != g.dim()) throw InvalidInput("composing maps of different dimension");
    const std::size_t n = f.forms().size();
    const unsigned dd = f.degree() * g.degree();
    std::vector<HomogeneousForm> out;
    for (const auto& F : f.forms()) {
        HomogeneousForm acc(n, dd);
        for (const auto& [e, c] : F.terms()) {
            HomogeneousForm term = HomogeneousForm::monomial(Exponents(n, 0), c);
            for (std::size_t i = 0; i < n; ++i)
                if (e[i]) term = term * g.forms()[i].pow(e[i]);
            acc += term;
        }
        out.push_back(std::move(acc));
    }
    return ProjMorphism::validate(std::move(out));
}

bool is_good_prime(const ProjMorphism& f, std::uint64_t p) {
    return is_prime(p) && mod_u64(f.certificate().value, p) != 0;
}

std::vector<std::uint64_t> good_primes(const ProjMorphism& f, std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (auto p : primes_up_to(bound))
        if (is_good_prime(f, p)) out.push_back(p);
    return out;
}

ReducedMorphism::ReducedMorphism(const ProjMorphism& f, FieldPtr field)
    : field_(std::move(field)), dim_(f.dim()), degree_(f.degree()) {
    if (!is_good_prime(f, field_->characteristic())) throw BadReduction(field_->characteristic());
    for (const auto& form : f.forms()) {
        std::vector<Term> terms;
        for (const auto& [e, c] : form.terms()) {
            const FieldElement fc = field_->from_integer(c);
            if (fc.code != 0) terms.push_back({fc, e});
        }
        forms_.push_back(std::move(terms));
    }
}

bool ReducedMorphism::evaluate(std::span<const FieldElement> x, std::span<FieldElement> out) const {
    const FiniteField& F = *field_;
    for (std::size_t j = 0; j < forms_.size(); ++j) {
        FieldElement acc{0};
        for (const auto& t : forms_[j]) {
            FieldElement m = t.coeff;
            for (std::size_t i = 0; i <= dim_ && m.code; ++i) {
                const unsigned e = t.exps[i];
                if (e == 0) continue;
                m = F.mul(m, e == 1 ? x[i] : F.pow(x[i], std::uint64_t{e}));
            }
            acc = F.add(acc, m);
        }
        out[j] = acc;
    }
    return normalize_in_place(F, out);
}

ProjPointF ReducedMorphism::apply(const ProjPointF& u) const {
    if (u.dim() != dim_ || !(u.field() == *field_)) throw InvalidInput("point does not match reduced morphism");
    std::vector<FieldElement> out(dim_ + 1);
    if (!evaluate(u.coords(), out)) throw BadReduction(field_->characteristic());
    return ProjPointF(field_, std::move(out));
}

ProjPointF apply_f(const ProjMorphism& f, const ProjPointF& u) { return ReducedMorphism(f, u.field_ptr()).apply(u); }

ProjPointF iterate_f(const ProjMorphism& f, const ProjPointF& u, unsigned long n) {
    const ReducedMorphism rf(f, u.field_ptr());
    ProjPointF cur = u;
    for (unsigned long i = 0; i < n; ++i) cur = rf.apply(cur);
    return cur;
}

ProjMorphism polynomial_map(std::span<const Rational> coeffs) {
    if (coeffs.size() < 2 || sgn(coeffs.back()) == 0)
        throw InvalidInput("polynomial_map needs degree >= 1 with nonzero leading coefficient");
    const unsigned d = static_cast<unsigned>(coeffs.size() - 1);
    Integer l = 1;
    for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    HomogeneousForm num(2, d), den(2, d);
    for (unsigned i = 0; i <= d; ++i) num.add_term({i, d - i}, Integer(coeffs[i].get_num() * (l / coeffs[i].get_den())));
    den.add_term({0, d}, l);
    return ProjMorphism::validate({num, den});
}

}  // namespace arithdyn
