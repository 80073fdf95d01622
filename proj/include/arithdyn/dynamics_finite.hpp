#pragma once

#include "arithdyn/morphism.hpp"
#include "arithdyn/projective.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace arithdyn {

/// The functional graph x -> f(x) on P^N(F_q). Points are identified with
/// their PointIndexer index.
class FunctionalGraph {
public:
    const PointIndexer& indexer() const { return indexer_; }
    const FiniteField& field() const { return *indexer_.field(); }
    std::uint64_t size() const { return successor_.size(); }

    ProjPointF point(std::uint64_t i) const { return indexer_.point(i); }
    std::uint32_t successor(std::uint64_t i) const { return successor_[i]; }
    /// Steps needed to reach a periodic point (0 on cycles).
    std::uint32_t tail(std::uint64_t i) const { return tail_[i]; }
    /// Length of the cycle eventually reached from i.
    std::uint32_t period(std::uint64_t i) const { return period_[i]; }
    bool is_periodic(std::uint64_t i) const { return tail_[i] == 0; }

    std::uint64_t periodic_count() const { return periodic_count_; }
    /// Indices of periodic points, ascending.
    std::vector<std::uint64_t> periodic_set() const;

    friend FunctionalGraph build_graph(const ProjMorphism&, const FieldPtr&, unsigned);

private:
    explicit FunctionalGraph(PointIndexer idx) : indexer_(std::move(idx)) {}

    PointIndexer indexer_;
    std::vector<std::uint32_t> successor_;
    std::vector<std::uint32_t> tail_;
    std::vector<std::uint32_t> period_;
    std::uint64_t periodic_count_ = 0;
};

/// Largest P^N(F_q) the graph builder accepts.
inline constexpr std::uint64_t kMaxGraphPoints = std::uint64_t{1} << 31;

/// Throws BadReduction if the characteristic is not a good prime for f.
FunctionalGraph build_graph(const ProjMorphism& f, const FieldPtr& field, unsigned threads = 1);

/// Tail length and period of the orbit of u, by Brent's cycle finding.
struct CycleInfo {
    std::uint64_t tail = 0;
    std::uint64_t period = 0;
};
CycleInfo brent_cycle(const ReducedMorphism& f, const ProjPointF& u);

struct GrowthRow {
    unsigned r = 0;
    std::uint64_t periodic = 0;
    std::uint64_t points = 0;
};

/// Number of periodic points of f in P^N(F_{p^r}) for r = 1..r_max.
std::vector<GrowthRow> periodic_growth(const ProjMorphism& f, std::uint64_t p, unsigned r_max, unsigned threads = 1);

/// Every u in P^N(F_{p^r}) with f(u) = sigma^m(u), sigma the p-power
/// Frobenius. Sorted by point index.
std::vector<ProjPointF> frobenius_twist_solve(const ProjMorphism& f, std::uint64_t p, unsigned long m, unsigned r);

struct DensityWitness {
    unsigned r = 0;
    ProjPointF point;
    std::uint64_t period = 0;
};

/// First periodic point u (smallest r, then smallest index) with avoid(u) != 0.
/// nullopt means inconclusive up to r_max, not a disproof.
std::optional<DensityWitness> density_in_open(const ProjMorphism& f, std::uint64_t p, const HomogeneousForm& avoid,
                                              unsigned r_max, unsigned threads = 1);

/// Evaluates an integer form at a point over a finite field.
FieldElement evaluate_form(const HomogeneousForm& g, const ProjPointF& u);

}  // namespace arithdyn
