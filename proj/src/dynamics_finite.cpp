#include "arithdyn/dynamics_finite.hpp"

#include "arithdyn/errors.hpp"
#include "arithdyn/parallel.hpp"

#include <string>

namespace arithdyn {

std::vector<std::uint64_t> FunctionalGraph::periodic_set() const {
    std::vector<std::uint64_t> out;
    out.reserve(periodic_count_);
    for (std::uint64_t i = 0; i < tail_.size(); ++i)
        if (tail_[i] == 0) out.push_back(i);
    return out;
}

FunctionalGraph build_graph(const ProjMorphism& f, const FieldPtr& field, unsigned threads) {
    const ReducedMorphism rf(f, field);
    FunctionalGraph g{PointIndexer(field, f.dim())};
    const std::uint64_t n = g.indexer_.size();
    if (n > kMaxGraphPoints)
        throw BudgetExceeded("P^" + std::to_string(f.dim()) + " over F_" + std::to_string(field->order()) +
                             " has " + std::to_string(n) + " points; the graph limit is " +
                             std::to_string(kMaxGraphPoints));
    g.successor_.resize(n);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<FieldElement> x(f.dim() + 1), y(f.dim() + 1);
        for (std::size_t i = begin; i < end; ++i) {
            g.indexer_.coords_into(i, x);
            if (!rf.evaluate(x, y)) throw BadReduction(field->characteristic());
            g.successor_[i] = static_cast<std::uint32_t>(g.indexer_.index_of(y));
        }
    });

    // Pointer chasing with memoization: each node is walked at most once.
    constexpr std::uint32_t kUnseen = 0xffffffffu;
    constexpr std::uint32_t kOnPath = 0xfffffffeu;
    g.tail_.assign(n, kUnseen);
    g.period_.assign(n, 0);
    std::vector<std::uint32_t> path;
    std::vector<std::uint32_t> pos(n, 0);
    for (std::uint64_t start = 0; start < n; ++start) {
        if (g.tail_[start] != kUnseen) continue;
        path.clear();
        std::uint32_t v = static_cast<std::uint32_t>(start);
        while (g.tail_[v] == kUnseen) {
            g.tail_[v] = kOnPath;
            pos[v] = static_cast<std::uint32_t>(path.size());
            path.push_back(v);
            v = g.successor_[v];
        }
        std::size_t stop = path.size();
        if (g.tail_[v] == kOnPath) {
            // closed a new cycle at path[pos[v]..]
            const std::size_t first = pos[v];
            const auto len = static_cast<std::uint32_t>(path.size() - first);
            for (std::size_t k = first; k < path.size(); ++k) {
                g.tail_[path[k]] = 0;
                g.period_[path[k]] = len;
            }
            g.periodic_count_ += len;
            stop = first;
        }
        for (std::size_t k = stop; k-- > 0;) {
            const std::uint32_t u = path[k];
            const std::uint32_t s = g.successor_[u];
            g.tail_[u] = g.tail_[s] + 1;
            g.period_[u] = g.period_[s];
        }
    }
    return g;
}

CycleInfo brent_cycle(const ReducedMorphism& f, const ProjPointF& u) {
    // Brent: find the cycle length lambda, then the tail length mu.
    std::uint64_t power = 1, lambda = 1;
    ProjPointF tortoise = u;
    ProjPointF hare = f.apply(u);
    while (!(tortoise == hare)) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = f.apply(hare);
        ++lambda;
    }
    tortoise = u;
    hare = u;
    for (std::uint64_t i = 0; i < lambda; ++i) hare = f.apply(hare);
    std::uint64_t mu = 0;
    while (!(tortoise == hare)) {
        tortoise = f.apply(tortoise);
        hare = f.apply(hare);
        ++mu;
    }
    return {mu, lambda};
}

std::vector<GrowthRow> periodic_growth(const ProjMorphism& f, std::uint64_t p, unsigned r_max, unsigned threads) {
    if (r_max < 1) throw InvalidInput("r_max must be at least 1");
    if (!is_good_prime(f, p)) throw BadReduction(p);
    std::vector<GrowthRow> rows;
    for (unsigned r = 1; r <= r_max; ++r) {
        const FunctionalGraph g = build_graph(f, FiniteField::get(p, r), threads);
        rows.push_back({r, g.periodic_count(), g.size()});
    }
    return rows;
}

std::vector<ProjPointF> frobenius_twist_solve(const ProjMorphism& f, std::uint64_t p, unsigned long m, unsigned r) {
    if (m < 1 || r < 1) throw InvalidInput("m and r must be at least 1");
    const FieldPtr field = FiniteField::get(p, r);
    const ReducedMorphism rf(f, field);
    const PointIndexer idx(field, f.dim());
    if (idx.size() > kMaxGraphPoints) throw BudgetExceeded("twist search space too large");
    // sigma^m on F_{p^r} is x -> x^{p^(m mod r)}
    std::uint64_t e = 1;
    for (unsigned long k = 0; k < m % r; ++k) e *= p;
    std::vector<FieldElement> x(f.dim() + 1), y(f.dim() + 1), s(f.dim() + 1);
    std::vector<ProjPointF> out;
    for (std::uint64_t i = 0; i < idx.size(); ++i) {
        idx.coords_into(i, x);
        if (!rf.evaluate(x, y)) throw BadReduction(p);
        for (std::size_t j = 0; j < x.size(); ++j) s[j] = field->pow(x[j], e);
        // x is normalized with leading 1, so its Frobenius image is too.
        if (y == s) out.push_back(ProjPointF(field, x));
    }
    return out;
}

FieldElement evaluate_form(const HomogeneousForm& g, const ProjPointF& u) {
    const FiniteField& F = u.field();
    if (g.n_vars() != u.coords().size()) throw InvalidInput("form and point have different dimensions");
    FieldElement acc{0};
    for (const auto& [e, c] : g.terms()) {
        FieldElement t = F.from_integer(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) t = F.mul(t, F.pow(u[i], std::uint64_t{e[i]}));
        acc = F.add(acc, t);
    }
    return acc;
}

std::optional<DensityWitness> density_in_open(const ProjMorphism& f, std::uint64_t p, const HomogeneousForm& avoid,
                                              unsigned r_max, unsigned threads) {
    if (r_max < 1) throw InvalidInput("r_max must be at least 1");
    if (avoid.is_zero()) throw InvalidInput("the avoided form must not be identically zero");
    if (avoid.n_vars() != f.dim() + 1) throw InvalidInput("avoided form has the wrong number of variables");
    if (!is_good_prime(f, p)) throw BadReduction(p);
    for (unsigned r = 1; r <= r_max; ++r) {
        const FunctionalGraph g = build_graph(f, FiniteField::get(p, r), threads);
        for (std::uint64_t i = 0; i < g.size(); ++i) {
            if (!g.is_periodic(i)) continue;
            ProjPointF u = g.point(i);
            if (evaluate_form(avoid, u).code != 0) return DensityWitness{r, std::move(u), g.period(i)};
        }
    }
    return std::nullopt;
}

}  // namespace arithdyn
