#pragma once

#include "arithdyn/form.hpp"
#include "arithdyn/linalg.hpp"
#include "arithdyn/projective.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace arithdyn {

/// Witness that the defining forms have no common zero over Q-bar.
struct ValidityCertificate {
    enum class Kind { resultant, macaulay_rank };

    Kind kind = Kind::resultant;
    /// resultant: the Sylvester resultant. macaulay_rank: a nonzero maximal
    /// minor of the Macaulay matrix at degree `witness_degree`; any prime not
    /// dividing it is a prime of good reduction.
    Integer value;
    unsigned witness_degree = 0;
    std::size_t rank = 0;
};

const char* to_string(ValidityCertificate::Kind k);

struct ValidateOptions {
    /// Macaulay degrees tried: base .. base + extra_degrees, base = (N+1)(d-1)+1.
    unsigned extra_degrees = 2;
};

/// Sylvester matrix of two binary forms of degree d (2d x 2d).
IntMatrix sylvester_matrix(const HomogeneousForm& f, const HomogeneousForm& g);

/// Columns are (form i, multiplier monomial m of degree D - d) in form-major
/// order; rows are the monomials of degree D in descending lex order.
IntMatrix macaulay_matrix(std::span<const HomogeneousForm> forms, unsigned target_degree);

/// A self-map of P^N given by N+1 coprime-content integer forms of degree d.
class ProjMorphism {
public:
    /// Checks shapes, divides out the overall content and certifies that the
    /// base locus is empty. Throws InvalidMorphism when provably invalid and
    /// NoCertificate when the Macaulay test is inconclusive at every degree.
    static ProjMorphism validate(std::vector<HomogeneousForm> forms, const ValidateOptions& opts = {});

    std::size_t dim() const { return forms_.size() - 1; }
    unsigned degree() const { return forms_.front().degree(); }
    const std::vector<HomogeneousForm>& forms() const { return forms_; }
    const ValidityCertificate& certificate() const { return certificate_; }

    friend bool operator==(const ProjMorphism& a, const ProjMorphism& b) { return a.forms_ == b.forms_; }

private:
    ProjMorphism(std::vector<HomogeneousForm> forms, ValidityCertificate cert)
        : forms_(std::move(forms)), certificate_(std::move(cert)) {}

    std::vector<HomogeneousForm> forms_;
    ValidityCertificate certificate_;
};

ProjPointQ apply(const ProjMorphism& f, const ProjPointQ& x);
/// apply() when the gcd of F(x) is known to divide `gcd_multiple` for every
/// coprime x (e.g. the Nullstellensatz denominator).
ProjPointQ apply(const ProjMorphism& f, const ProjPointQ& x, const Integer& gcd_multiple);
ProjPointQ iterate(const ProjMorphism& f, const ProjPointQ& x, unsigned long n);

/// f o g
ProjMorphism compose(const ProjMorphism& f, const ProjMorphism& g);

/// The forms of f reduced into a finite field, ready for repeated evaluation.
class ReducedMorphism {
public:
    /// Throws BadReduction if the characteristic divides the certificate value.
    ReducedMorphism(const ProjMorphism& f, FieldPtr field);

    std::size_t dim() const { return dim_; }
    const FieldPtr& field() const { return field_; }

    /// Evaluates the forms at x (size dim+1) into out and normalizes. Returns
    /// false if every form vanishes.
    bool evaluate(std::span<const FieldElement> x, std::span<FieldElement> out) const;

    ProjPointF apply(const ProjPointF& u) const;

private:
    struct Term {
        FieldElement coeff;
        std::vector<unsigned> exps;
    };
    FieldPtr field_;
    std::size_t dim_;
    unsigned degree_;
    std::vector<std::vector<Term>> forms_;
};

/// Evaluates f at a point over a finite field; throws BadReduction if the
/// image is the zero vector.
ProjPointF apply_f(const ProjMorphism& f, const ProjPointF& u);
ProjPointF iterate_f(const ProjMorphism& f, const ProjPointF& u, unsigned long n);

bool is_good_prime(const ProjMorphism& f, std::uint64_t p);
std::vector<std::uint64_t> good_primes(const ProjMorphism& f, std::uint64_t bound);

/// Convenience constructor for the P^1 map x -> sum coeffs[i] x^i (degree =
/// coeffs.size() - 1, leading coefficient nonzero), homogenized as
/// (Z^d * p(X/Z) : Z^d) after clearing denominators.
ProjMorphism polynomial_map(std::span<const Rational> coeffs);

}  // namespace arithdyn
