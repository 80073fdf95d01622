#include "arithdyn/elliptic.hpp"

#include "arithdyn/errors.hpp"

#include <array>

namespace arithdyn {

WeierstrassCurve::WeierstrassCurve(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {
    if (sgn(discriminant()) == 0)
        throw InvalidInput("singular curve: 4a^3 + 27b^2 = 0 for a = " + a_.get_str() + ", b = " + b_.get_str());
}

Integer WeierstrassCurve::discriminant() const { return 4 * a_ * a_ * a_ + 27 * b_ * b_; }

HomogeneousForm WeierstrassCurve::cubic() const {
    HomogeneousForm c(3, 3);
    c.add_term({0, 2, 1}, 1);
    c.add_term({3, 0, 0}, -1);
    c.add_term({1, 0, 2}, -a_);
    c.add_term({0, 0, 3}, -b_);
    return c;
}

bool WeierstrassCurve::contains(const ProjPointQ& P) const {
    if (P.dim() != 2) return false;
    return sgn(cubic().evaluate(P.coords())) == 0;
}

bool WeierstrassCurve::contains(const ProjPointF& P) const {
    if (P.dim() != 2) return false;
    const FiniteField& F = P.field();
    const auto& c = P.coords();
    const FieldElement lhs = F.mul(F.mul(c[1], c[1]), c[2]);
    const FieldElement z2 = F.mul(c[2], c[2]);
    FieldElement rhs = F.mul(F.mul(c[0], c[0]), c[0]);
    rhs = F.add(rhs, F.mul(F.from_integer(a_), F.mul(c[0], z2)));
    rhs = F.add(rhs, F.mul(F.from_integer(b_), F.mul(z2, c[2])));
    return lhs == rhs;
}

bool WeierstrassCurve::is_good_prime(std::uint64_t p) const {
    return p > 3 && is_prime(p) && mod_u64(discriminant(), p) != 0;
}

ProjPointQ ec_identity() { return ProjPointQ{0, 1, 0}; }

ProjPointF ec_identity(const FieldPtr& field) { return ProjPointF(field, {field->zero(), field->one(), field->zero()}); }

ProjPointQ ec_add(const WeierstrassCurve& E, const ProjPointQ& P, const ProjPointQ& Q) {
    if (!E.contains(P)) throw NotOnCurve(P.to_string() + " is not on the curve");
    if (!E.contains(Q)) throw NotOnCurve(Q.to_string() + " is not on the curve");
    if (sgn(P[2]) == 0) return Q;
    if (sgn(Q[2]) == 0) return P;
    auto ratio = [](const Integer& n, const Integer& d) {
        Rational r(n, d);
        r.canonicalize();
        return r;
    };
    const Rational x1 = ratio(P[0], P[2]), y1 = ratio(P[1], P[2]);
    const Rational x2 = ratio(Q[0], Q[2]), y2 = ratio(Q[1], Q[2]);
    Rational lambda;
    if (x1 == x2) {
        if (y1 == -y2) return ec_identity();
        lambda = (3 * x1 * x1 + Rational(E.a())) / (2 * y1);
    } else {
        lambda = (y2 - y1) / (x2 - x1);
    }
    lambda.canonicalize();
    const Rational x3 = lambda * lambda - x1 - x2;
    const Rational y3 = lambda * (x1 - x3) - y1;
    const std::array<Rational, 3> r{x3, y3, Rational(1)};
    return ProjPointQ(std::span<const Rational>(r));
}

ProjPointF ec_add(const WeierstrassCurve& E, const ProjPointF& P, const ProjPointF& Q) {
    const FiniteField& F = P.field();
    if (!(F == Q.field())) throw InvalidInput("points over different fields");
    if (!E.is_good_prime(F.characteristic()))
        throw InvalidInput("the group law needs characteristic > 3 and good reduction, got p = " +
                           std::to_string(F.characteristic()));
    if (!E.contains(P)) throw NotOnCurve(P.to_string() + " is not on the curve");
    if (!E.contains(Q)) throw NotOnCurve(Q.to_string() + " is not on the curve");
    if (P[2].code == 0) return Q;
    if (Q[2].code == 0) return P;
    const FieldElement iz1 = F.inv(P[2]), iz2 = F.inv(Q[2]);
    const FieldElement x1 = F.mul(P[0], iz1), y1 = F.mul(P[1], iz1);
    const FieldElement x2 = F.mul(Q[0], iz2), y2 = F.mul(Q[1], iz2);
    FieldElement lambda;
    if (x1 == x2) {
        if (F.add(y1, y2).code == 0) return ec_identity(P.field_ptr());
        const FieldElement num = F.add(F.mul(F.from_int(3), F.mul(x1, x1)), F.from_integer(E.a()));
        lambda = F.mul(num, F.inv(F.add(y1, y1)));
    } else {
        lambda = F.mul(F.sub(y2, y1), F.inv(F.sub(x2, x1)));
    }
    const FieldElement x3 = F.sub(F.sub(F.mul(lambda, lambda), x1), x2);
    const FieldElement y3 = F.sub(F.mul(lambda, F.sub(x1, x3)), y1);
    return ProjPointF(P.field_ptr(), {x3, y3, F.one()});
}

ProjPointQ ec_double(const WeierstrassCurve& E, const ProjPointQ& P) { return ec_add(E, P, P); }
ProjPointF ec_double(const WeierstrassCurve& E, const ProjPointF& P) { return ec_add(E, P, P); }

ProjPointQ ec_neg(const ProjPointQ& P) {
    return ProjPointQ(std::vector<Integer>{P[0], -P[1], P[2]});
}

ProjPointQ ec_multiply(const WeierstrassCurve& E, const ProjPointQ& P, unsigned long n) {
    ProjPointQ acc = ec_identity();
    ProjPointQ base = P;
    while (n) {
        if (n & 1) acc = ec_add(E, acc, base);
        n >>= 1;
        if (n) base = ec_double(E, base);
    }
    return acc;
}

std::vector<ProjPointF> curve_points(const WeierstrassCurve& E, const FieldPtr& field) {
    const FiniteField& F = *field;
    const FieldElement a = F.from_integer(E.a()), b = F.from_integer(E.b());
    std::vector<ProjPointF> out{ec_identity(field)};
    // square roots by table: for each y record y^2
    std::vector<std::vector<FieldElement>> roots(F.order());
    for (std::uint64_t y = 0; y < F.order(); ++y) roots[F.mul({y}, {y}).code].push_back({y});
    for (std::uint64_t x = 0; x < F.order(); ++x) {
        const FieldElement X{x};
        const FieldElement rhs = F.add(F.add(F.mul(F.mul(X, X), X), F.mul(a, X)), b);
        for (FieldElement y : roots[rhs.code]) out.emplace_back(field, std::vector<FieldElement>{X, y, F.one()});
    }
    return out;
}

}  // namespace arithdyn
