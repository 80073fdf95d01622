#pragma once

#include "arithdyn/bigint.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace arithdyn {

/// An element of F_{p^r}, stored as the base-p integer whose digits are the
/// residue polynomial's coefficients (low degree = least significant digit).
/// Codes 0..p-1 are the prime-field constants.
struct FieldElement {
    std::uint64_t code = 0;
    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// F_p[t] / (modulus) with modulus monic irreducible of degree r.
///
/// Fields of order at most kTableLimit carry discrete log, antilog and Zech
/// tables so every operation is O(1); larger fields fall back to residue
/// polynomial arithmetic. Instances are immutable and shareable across threads.
class FiniteField {
public:
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 23;

    /// Builds F_{p^r} over the given monic modulus (coefficients low to high,
    /// length r + 1). Throws InvalidInput unless p is prime below 2^32 and the
    /// modulus is monic irreducible.
    FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus);

    /// Cached field whose modulus is the first monic irreducible of degree r
    /// in lexicographic order of (c_{r-1}, ..., c_0).
    static std::shared_ptr<const FiniteField> get(std::uint64_t p, unsigned r);

    static std::vector<std::uint64_t> first_irreducible(std::uint64_t p, unsigned r);

    /// Ben-Or test: no irreducible factor of degree s <= r/2, via
    /// gcd(f, X^{p^s} - X) for each such s.
    static bool is_irreducible(std::span<const std::uint64_t> monic, std::uint64_t p);

    std::uint64_t characteristic() const { return p_; }
    unsigned degree() const { return r_; }
    std::uint64_t order() const { return q_; }
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    bool has_tables() const { return !exp_.empty(); }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_integer(const Integer& v) const { return {mod_u64(v, p_)}; }
    FieldElement from_coeffs(std::span<const std::uint64_t> coeffs) const;
    std::vector<std::uint64_t> coeffs(FieldElement e) const;
    /// The generator t of the residue ring (the class of X).
    FieldElement generator_t() const;

    FieldElement add(FieldElement a, FieldElement b) const {
        if (r_ == 1) {
            const std::uint64_t s = a.code + b.code;
            return {s >= p_ ? s - p_ : s};
        }
        if (has_tables()) {
            if (a.code == 0) return b;
            if (b.code == 0) return a;
            const std::uint32_t i = log_[a.code];
            const std::uint32_t j = log_[b.code];
            const std::uint32_t k = j >= i ? j - i : j + static_cast<std::uint32_t>(q_ - 1) - i;
            const std::uint32_t z = zech_[k];
            if (z == kNoLog) return {0};
            return {exp_[reduce_exp(std::uint64_t{i} + z)]};
        }
        return add_slow(a, b);
    }
    FieldElement neg(FieldElement a) const;
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.code == 0 || b.code == 0) return {0};
        if (r_ == 1) return {(a.code * b.code) % p_};
        if (has_tables()) return {exp_[reduce_exp(std::uint64_t{log_[a.code]} + log_[b.code])]};
        return mul_slow(a, b);
    }
    FieldElement pow(FieldElement a, std::uint64_t n) const;
    FieldElement pow(FieldElement a, const Integer& n) const;
    /// Throws InvalidInput on zero.
    FieldElement inv(FieldElement a) const;

    bool operator==(const FiniteField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

private:
    static constexpr std::uint32_t kNoLog = 0xffffffffu;

    std::uint64_t reduce_exp(std::uint64_t e) const { return e >= q_ - 1 ? e - (q_ - 1) : e; }
    FieldElement add_slow(FieldElement a, FieldElement b) const;
    FieldElement mul_slow(FieldElement a, FieldElement b) const;
    FieldElement pow_slow(FieldElement a, std::uint64_t n) const;
    void build_tables();

    std::uint64_t p_;
    unsigned r_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

}  // namespace arithdyn
