#pragma once

#include "arithdyn/bigint.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace arithdyn {

using Exponents = std::vector<unsigned>;

/// All exponent vectors of total degree `degree` in `n_vars` variables, in
/// descending lexicographic order (x0^d first).
std::vector<Exponents> monomials(std::size_t n_vars, unsigned degree);

/// Binomial(n_vars + degree - 1, degree).
std::size_t monomial_count(std::size_t n_vars, unsigned degree);

/// A homogeneous polynomial with integer coefficients. Zero coefficients are
/// never stored; the zero form is allowed (no terms).
class HomogeneousForm {
public:
    using Terms = std::map<Exponents, Integer, std::greater<>>;

    HomogeneousForm(std::size_t n_vars, unsigned degree) : n_vars_(n_vars), degree_(degree) {}
    /// Throws InvalidInput if an exponent vector has the wrong length or sum.
    HomogeneousForm(std::size_t n_vars, unsigned degree, const Terms& terms);

    static HomogeneousForm monomial(const Exponents& e, const Integer& c = 1);
    static HomogeneousForm variable(std::size_t n_vars, std::size_t i);

    std::size_t n_vars() const { return n_vars_; }
    unsigned degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Integer coeff(const Exponents& e) const;
    /// Adds c to the coefficient of e.
    void add_term(const Exponents& e, const Integer& c);

    HomogeneousForm& operator+=(const HomogeneousForm& o);
    HomogeneousForm& operator-=(const HomogeneousForm& o);
    HomogeneousForm& operator*=(const Integer& c);
    friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { return a += b; }
    friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { return a -= b; }
    friend HomogeneousForm operator*(HomogeneousForm a, const Integer& c) { return a *= c; }
    friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);
    HomogeneousForm pow(unsigned k) const;

    /// Exact quotient by b, or throws InvalidInput if b does not divide.
    /// b's leading coefficient (descending lex) must divide every
    /// coefficient that arises, which holds whenever it is +-1.
    HomogeneousForm divide_exact(const HomogeneousForm& b) const;

    Integer content() const;
    Integer max_abs_coeff() const;
    /// Sum of absolute values of the coefficients.
    Integer l1_norm() const;

    Integer evaluate(std::span<const Integer> x) const;

    /// Evaluation in any commutative ring T given a coefficient map.
    template <class T, class CoeffFn>
    T evaluate_as(std::span<const T> x, const T& zero, const T& one, CoeffFn coeff_fn) const {
        std::vector<std::vector<T>> powers(n_vars_);
        for (std::size_t i = 0; i < n_vars_; ++i) {
            powers[i].reserve(degree_ + 1);
            powers[i].push_back(one);
            for (unsigned k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * x[i]);
        }
        T acc = zero;
        for (const auto& [e, c] : terms_) {
            T term = coeff_fn(c);
            for (std::size_t i = 0; i < n_vars_; ++i)
                if (e[i]) term = term * powers[i][e[i]];
            acc = acc + term;
        }
        return acc;
    }

    std::string to_string() const;

    friend bool operator==(const HomogeneousForm&, const HomogeneousForm&) = default;

private:
    std::size_t n_vars_;
    unsigned degree_;
    Terms terms_;
};

}  // namespace arithdyn
