#pragma once

#include "arithdyn/heights.hpp"
#include "arithdyn/morphism.hpp"

#include <cstdint>
#include <vector>

namespace arithdyn {

/// Exact forward orbit of a rational point.
struct OrbitRecord {
    enum class Kind { periodic, preperiodic, wandering };

    ProjPointQ start;
    /// Distinct orbit points x, f(x), ... up to the repeat or the escape point.
    std::vector<ProjPointQ> points;
    Kind kind = Kind::wandering;
    /// periodic/preperiodic: f(points.back()) == points[tail]; tail = 0 iff periodic.
    std::size_t tail = 0;
    std::size_t period = 0;
    /// wandering: index of the first point whose height exceeds C/(d-1).
    std::size_t escape_index = 0;

    bool is_preperiodic() const { return kind != Kind::wandering; }
};

const char* to_string(OrbitRecord::Kind k);

/// Iterates until a repeat or until the height exceeds C/(d-1), after which
/// heights increase strictly forever. Always terminates.
OrbitRecord classify_orbit(const ProjMorphism& f, const ProjPointQ& x);
OrbitRecord classify_orbit(const ProjMorphism& f, const ComparisonConstant& cc, const ProjPointQ& x);

struct PreperiodicOptions {
    /// Maximum number of candidate points (2B+1)^{N+1} the enumeration may visit.
    std::uint64_t budget = 50'000'000;
    unsigned threads = 1;
};

/// All preperiodic points in P^N(Q), sorted. Exhaustive: candidates are every
/// point of height at most C/(d-1). Throws BudgetExceeded (reporting the
/// required bound) if the candidate box exceeds the budget.
std::vector<ProjPointQ> preperiodic_points(const ProjMorphism& f, const PreperiodicOptions& opts = {});

/// All x in P^1(Q) with f(x) = y, ordered by (denominator, numerator).
std::vector<ProjPointQ> rational_preimages(const ProjMorphism& f, const ProjPointQ& y);

bool image_contains(const ProjMorphism& f, const ProjPointQ& y);

/// Rational roots (X:Z) of a nonzero binary form, ordered by (Z, X) with the
/// point at infinity first.
std::vector<ProjPointQ> binary_form_roots(const HomogeneousForm& g);

struct LiftNode {
    ProjPointQ point;
    std::size_t depth = 0;
    std::vector<LiftNode> children;
};

/// Tree of rational lifts: children of the root are solutions of f_1(x_1) = y,
/// their children solve f_2(x_2) = x_1, and so on down to depth fs.size().
LiftNode inverse_limit_lift(const std::vector<ProjMorphism>& fs, const ProjPointQ& y);

/// Leaves at full depth and dead branches (leaves above full depth).
struct LiftSummary {
    std::size_t full_depth_leaves = 0;
    std::size_t dead_branches = 0;
};
LiftSummary summarize(const LiftNode& root, std::size_t depth);

}  // namespace arithdyn
