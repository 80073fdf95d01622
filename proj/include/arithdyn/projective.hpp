#pragma once

#include "arithdyn/bigint.hpp"
#include "arithdyn/finite_field.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace arithdyn {

/// A point of P^N(Q) in canonical form: coprime integers whose first nonzero
/// entry is positive. Equality of classes is equality of coordinate vectors.
class ProjPointQ {
public:
    /// Canonicalizes; throws InvalidInput ("not a projective point") if all zero.
    explicit ProjPointQ(std::vector<Integer> raw);
    explicit ProjPointQ(std::span<const Rational> raw);
    ProjPointQ(std::initializer_list<long> raw);
    /// As above, for raw coordinates whose gcd is known to divide `multiple`
    /// (nonzero). Avoids a gcd of the full coordinates.
    ProjPointQ(std::vector<Integer> raw, const Integer& multiple);

    std::size_t dim() const { return coords_.size() - 1; }
    const std::vector<Integer>& coords() const { return coords_; }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }

    /// max |coordinate|
    Integer naive_height() const;

    std::string to_string() const;

    friend bool operator==(const ProjPointQ&, const ProjPointQ&) = default;
    friend bool operator<(const ProjPointQ& a, const ProjPointQ& b);

private:
    std::vector<Integer> coords_;
};

ProjPointQ normalize_q(std::vector<Integer> raw);
ProjPointQ normalize_q(std::span<const Rational> raw);

struct ProjPointQHash {
    std::size_t operator()(const ProjPointQ& x) const noexcept;
};

/// A point of P^N(F_{p^r}) normalized so its first nonzero coordinate is 1.
class ProjPointF {
public:
    ProjPointF(FieldPtr field, std::vector<FieldElement> raw);

    const FiniteField& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::size_t dim() const { return coords_.size() - 1; }
    const std::vector<FieldElement>& coords() const { return coords_; }
    const FieldElement& operator[](std::size_t i) const { return coords_[i]; }

    std::string to_string() const;

    friend bool operator==(const ProjPointF& a, const ProjPointF& b) {
        return *a.field_ == *b.field_ && a.coords_ == b.coords_;
    }

private:
    FieldPtr field_;
    std::vector<FieldElement> coords_;
};

/// Raises every coordinate to the (q_base^m)-th power. q_base is the order of
/// the field over which the dynamical system is declared.
ProjPointF frobenius(const ProjPointF& u, unsigned long m, std::uint64_t q_base);

ProjPointF reduce_mod_p(const ProjPointQ& x, std::uint64_t p);
ProjPointF reduce_mod_p(const ProjPointQ& x, const FieldPtr& field);

/// Bijection between P^N(F_q) and [0, (q^{N+1}-1)/(q-1)). Points whose
/// leading 1 sits at position k come in block k; inside a block the trailing
/// coordinates are read as a base-q number, last coordinate least significant.
class PointIndexer {
public:
    PointIndexer(FieldPtr field, std::size_t dim);

    std::uint64_t size() const { return total_; }
    ProjPointF point(std::uint64_t index) const;
    std::uint64_t index(const ProjPointF& u) const;
    /// Writes the coordinates of point `index` into out (size dim+1).
    void coords_into(std::uint64_t index, std::span<FieldElement> out) const;
    std::uint64_t index_of(std::span<const FieldElement> normalized) const;

    const FieldPtr& field() const { return field_; }
    std::size_t dim() const { return dim_; }

private:
    FieldPtr field_;
    std::size_t dim_;
    std::uint64_t q_;
    std::vector<std::uint64_t> block_start_;
    std::uint64_t total_;
};

/// Normalizes a raw coordinate vector in place (first nonzero -> 1). Returns
/// false if all coordinates are zero.
bool normalize_in_place(const FiniteField& field, std::span<FieldElement> v);

}  // namespace arithdyn
