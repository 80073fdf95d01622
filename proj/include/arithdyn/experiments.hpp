#pragma once

#include "arithdyn/heights.hpp"
#include "arithdyn/morphism.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arithdyn {

struct CountOptions {
    /// Canonical heights are computed to this tolerance; R counts ĥ <= c + tol.
    double tol = 1e-9;
    /// Largest number of raw candidate vectors one enumeration may visit.
    std::uint64_t budget = 50'000'000;
    unsigned threads = 1;
};

/// Inclusive height comparison h <= c, with slack 1e-12 * max(1, |c|).
bool height_at_most(double h, double c);

/// Largest H >= 0 with log H <= c (within the slack of height_at_most);
/// -1 when c < 0 so that no point qualifies.
std::int64_t bound_for_log_height(double c);

/// Raw candidates a BoundedPointStream(dim, bound) visits.
long double candidate_count(std::size_t dim, std::int64_t bound);

/// M(c) = #{x in P^N(Q) : h(x) <= c}.
std::uint64_t count_M(std::size_t N, double c, const CountOptions& opts = {});
std::vector<ProjPointQ> points_M(std::size_t N, double c, const CountOptions& opts = {});

/// N(f, c) = #{x : h(f(x)) <= c}. Candidates are all x with
/// d h(x) <= c + c_low, outside of which h(f(x)) > c.
std::uint64_t count_N(const ProjMorphism& f, double c, const CountOptions& opts = {});
std::vector<ProjPointQ> points_N(const ProjMorphism& f, double c, const CountOptions& opts = {});

/// #{x : canonical_height(f, x, tol).value <= c + tol}. Candidates are all x
/// with h(x) <= c + 2 tol + C/(d-1), outside of which the estimate exceeds c + tol.
std::uint64_t count_R(const ProjMorphism& f, double c, const CountOptions& opts = {});
std::vector<ProjPointQ> points_R(const ProjMorphism& f, double c, const CountOptions& opts = {});

struct CountRow {
    double c = 0;
    std::optional<std::uint64_t> M, N_f, R_f;  // empty when over budget
    double ratio_MN = 0;                       // log M / log N_f, NaN if undefined
    double ratio_RM = 0;                       // log R_f / log M, NaN if undefined
    std::string status = "ok";                 // "ok" or "budget_exceeded"

    friend bool operator==(const CountRow& a, const CountRow& b);
};

struct CountTable {
    std::string morphism_hash;
    double tol = 0;
    std::string timestamp;  // ISO 8601 UTC
    std::vector<CountRow> rows;

    friend bool operator==(const CountTable&, const CountTable&) = default;
};

/// Reals are stored rounded to 12 significant digits, the precision of the
/// CSV output, so emit/parse round-trips exactly.
double round_significant(double x);

/// Rows for the sorted c values; a count over budget leaves its cell empty
/// and marks the row budget_exceeded.
CountTable ratio_table(const ProjMorphism& f, std::vector<double> c_values, const CountOptions& opts = {});

/// Header comments "# key: value", then c,M,N_f,R_f,ratio_MN,ratio_RM,status.
std::string emit_csv(const CountTable& t);
CountTable parse_csv(std::string_view text);

/// FNV-1a 64 of the morphism's canonical JSON, as 16 hex digits.
std::string morphism_hash(const ProjMorphism& f);

struct FamilyCount {
    std::vector<std::optional<std::uint64_t>> counts;  // per member, empty when over budget
    std::optional<std::size_t> argmax;
    std::uint64_t max = 0;
};

/// R-count of every member at the same c, and the largest one: a finite
/// probe of the supremum over maps of a fixed degree.
FamilyCount family_max_R(const std::vector<ProjMorphism>& family, double c, const CountOptions& opts = {});

/// Parses a real, or log(<rational>) for the natural log of a positive rational.
double parse_real_or_log(std::string_view text);

}  // namespace arithdyn
