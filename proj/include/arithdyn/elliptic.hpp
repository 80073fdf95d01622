#pragma once

#include "arithdyn/form.hpp"
#include "arithdyn/projective.hpp"

#include <vector>

namespace arithdyn {

/// y^2 z = x^3 + a x z^2 + b z^3 with 4a^3 + 27b^2 != 0.
class WeierstrassCurve {
public:
    /// Throws InvalidInput on a singular curve.
    WeierstrassCurve(Integer a, Integer b);

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    Integer discriminant() const;  // 4a^3 + 27b^2

    /// The cubic form y^2 z - x^3 - a x z^2 - b z^3 in (X, Y, Z).
    HomogeneousForm cubic() const;

    bool contains(const ProjPointQ& P) const;
    bool contains(const ProjPointF& P) const;

    /// The curve has good reduction at p and p > 3.
    bool is_good_prime(std::uint64_t p) const;

private:
    Integer a_, b_;
};

/// The identity (0:1:0).
ProjPointQ ec_identity();
ProjPointF ec_identity(const FieldPtr& field);

/// Chord-tangent addition. Throws NotOnCurve if an argument is not on E.
/// Over finite fields the characteristic must exceed 3 and E must have good
/// reduction (InvalidInput otherwise).
ProjPointQ ec_add(const WeierstrassCurve& E, const ProjPointQ& P, const ProjPointQ& Q);
ProjPointF ec_add(const WeierstrassCurve& E, const ProjPointF& P, const ProjPointF& Q);
ProjPointQ ec_double(const WeierstrassCurve& E, const ProjPointQ& P);
ProjPointF ec_double(const WeierstrassCurve& E, const ProjPointF& P);
ProjPointQ ec_neg(const ProjPointQ& P);
ProjPointQ ec_multiply(const WeierstrassCurve& E, const ProjPointQ& P, unsigned long n);

/// Every point of E(F_q), identity first, then affine points by index.
std::vector<ProjPointF> curve_points(const WeierstrassCurve& E, const FieldPtr& field);

}  // namespace arithdyn
