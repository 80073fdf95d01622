#pragma once

#include "arithdyn/morphism.hpp"
#include "arithdyn/projective.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace arithdyn {

/// Logarithmic Weil height of a canonical point: log max |x_i|.
double weil_height(const ProjPointQ& x);

/// Streams every canonical point of P^N(Q) with max |x_i| <= H exactly once.
/// Order: by position k of the first nonzero coordinate, then x_k = 1..H,
/// then the trailing coordinates as an odometer over [-H, H] (last fastest).
class BoundedPointStream {
public:
    BoundedPointStream(std::size_t dim, std::int64_t bound);

    /// Next coordinate vector, or nullopt when exhausted. The span is valid
    /// until the following call.
    std::optional<std::span<const std::int64_t>> next_raw();
    std::optional<ProjPointQ> next();

private:
    bool advance();

    std::size_t dim_;
    std::int64_t bound_;
    std::size_t pivot_ = 0;
    std::vector<std::int64_t> cur_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<ProjPointQ> enumerate_points(std::size_t dim, std::int64_t bound);

/// Number of canonical points with max |x_i| <= bound. Counts without
/// materializing points.
std::uint64_t count_points(std::size_t dim, std::int64_t bound);

/// |h(f(x)) - d h(x)| <= C for all x in P^N(Q). Both one-sided constants are
/// logs of integers, so height comparisons against them can be made exactly.
struct ComparisonConstant {
    Integer k_up;   // c_up = log k_up: h(f(x)) <= d h(x) + c_up
    Integer k_low;  // c_low = log k_low: d h(x) <= h(f(x)) + c_low
    double c_up = 0;
    double c_low = 0;
    double C = 0;
    /// Common denominator R of the identities sum_j G_kj F_j = R x_k^D; the
    /// gcd of the coordinates of F(x) divides R for coprime x.
    Integer identity_denominator;

    const Integer& k() const { return cmp(k_up, k_low) >= 0 ? k_up : k_low; }
};

/// Explicit polynomial identities sum_j G_kj F_j = R * x_k^D, one per variable.
struct NullstellensatzIdentities {
    unsigned degree = 0;  // D
    Integer denominator;  // R, common to all k, positive
    std::vector<std::vector<HomogeneousForm>> cofactors;  // [k][j]
};

NullstellensatzIdentities nullstellensatz_identities(const ProjMorphism& f);

ComparisonConstant comparison_constant(const ProjMorphism& f);

/// h(x) > C/(d-1), decided exactly as H(x)^{d-1} > k.
bool beyond_escape_height(const ProjPointQ& x, const ComparisonConstant& cc, unsigned degree);

/// floor(exp(C/(d-1))): every preperiodic point has max |x_i| at most this.
Integer escape_height_bound(const ComparisonConstant& cc, unsigned degree);

struct HeightEstimate {
    double value = 0;
    double error_bound = 0;
    unsigned iterations = 0;
    /// Iterations carried out in exact integer arithmetic; the remainder used
    /// the multiprecision float continuation.
    unsigned exact_iterations = 0;
    bool preperiodic_detected = false;
};

struct CanonicalHeightOptions {
    /// Exact orbit points are kept while their coordinates fit in this many bits.
    std::size_t max_exact_bits = 8192;
    /// Working precision of the float continuation, in bits.
    unsigned float_precision = 512;
    unsigned max_iterations = 4096;
};

/// Tate limit h(f^n(x))/d^n with n large enough that the certified error
/// bound is at most tol. Exact cycles short-circuit to 0 with zero error.
/// Throws BudgetExceeded if tol cannot be reached within the options' limits.
HeightEstimate canonical_height(const ProjMorphism& f, const ProjPointQ& x, double tol,
                                const CanonicalHeightOptions& opts = {});
HeightEstimate canonical_height(const ProjMorphism& f, const ComparisonConstant& cc, const ProjPointQ& x, double tol,
                                const CanonicalHeightOptions& opts = {});

}  // namespace arithdyn
