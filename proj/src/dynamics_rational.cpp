#include "arithdyn/dynamics_rational.hpp"

#include "arithdyn/errors.hpp"
#include "arithdyn/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace arithdyn {

const char* to_string(OrbitRecord::Kind k) {
    switch (k) {
        case OrbitRecord::Kind::periodic: return "periodic";
        case OrbitRecord::Kind::preperiodic: return "preperiodic";
        case OrbitRecord::Kind::wandering: return "wandering";
    }
    return "?";
}

OrbitRecord classify_orbit(const ProjMorphism& f, const ProjPointQ& x) {
    return classify_orbit(f, comparison_constant(f), x);
}

OrbitRecord classify_orbit(const ProjMorphism& f, const ComparisonConstant& cc, const ProjPointQ& x) {
    const unsigned d = f.degree();
    if (d < 2) throw InvalidInput("orbit classification needs degree >= 2");
    if (x.dim() != f.dim()) throw InvalidInput("point dimension does not match morphism");
    OrbitRecord rec{x, {x}, OrbitRecord::Kind::wandering, 0, 0, 0};
    std::unordered_map<ProjPointQ, std::size_t, ProjPointQHash> index{{x, 0}};
    for (;;) {
        const ProjPointQ& cur = rec.points.back();
        if (beyond_escape_height(cur, cc, d)) {
            rec.kind = OrbitRecord::Kind::wandering;
            rec.escape_index = rec.points.size() - 1;
            return rec;
        }
        ProjPointQ next = apply(f, cur, cc.identity_denominator);
        if (auto it = index.find(next); it != index.end()) {
            rec.tail = it->second;
            rec.period = rec.points.size() - it->second;
            rec.kind = rec.tail == 0 ? OrbitRecord::Kind::periodic : OrbitRecord::Kind::preperiodic;
            return rec;
        }
        index.emplace(next, rec.points.size());
        rec.points.push_back(std::move(next));
    }
}

std::vector<ProjPointQ> preperiodic_points(const ProjMorphism& f, const PreperiodicOptions& opts) {
    const unsigned d = f.degree();
    if (d < 2) throw InvalidInput("preperiodic points need degree >= 2");
    const ComparisonConstant cc = comparison_constant(f);
    const Integer bound = escape_height_bound(cc, d);
    Integer box = 2 * bound + 1;
    mpz_pow_ui(box.get_mpz_t(), box.get_mpz_t(), f.dim() + 1);
    if (box > Integer(static_cast<unsigned long>(opts.budget)) || !bound.fits_slong_p())
        throw BudgetExceeded("preperiodic search needs all points with max |x_i| <= " + bound.get_str() +
                             " (" + box.get_str() + " candidates), over budget " + std::to_string(opts.budget));

    std::vector<ProjPointQ> candidates = enumerate_points(f.dim(), bound.get_si());
    std::vector<ProjPointQ> out;
    std::mutex mu;
    parallel_for(candidates.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<ProjPointQ> local;
        for (std::size_t i = begin; i < end; ++i)
            if (classify_orbit(f, cc, candidates[i]).is_preperiodic()) local.push_back(candidates[i]);
        std::lock_guard lock(mu);
        out.insert(out.end(), local.begin(), local.end());
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjPointQ> binary_form_roots(const HomogeneousForm& g) {
    if (g.n_vars() != 2) throw InvalidInput("binary_form_roots expects a binary form");
    if (g.is_zero()) throw InvalidInput("the zero form vanishes everywhere");
    const unsigned d = g.degree();
    // a[i] = coefficient of X^{d-i} Z^i
    std::vector<Integer> a(d + 1);
    for (unsigned i = 0; i <= d; ++i) a[i] = g.coeff({d - i, i});

    std::vector<ProjPointQ> roots;
    std::size_t lo = 0;  // leading zero coefficients: powers of Z divide g
    while (sgn(a[lo]) == 0) ++lo;
    if (lo > 0) roots.push_back(ProjPointQ{1, 0});
    std::size_t hi = d;  // trailing zero coefficients: powers of X divide g
    while (sgn(a[hi]) == 0) --hi;
    if (hi < d) roots.push_back(ProjPointQ{0, 1});
    if (hi > lo) {
        // Remaining part: sum_{i=lo}^{hi} a[i] t^{hi-i} with nonzero leading and constant terms.
        std::vector<Integer> p(a.begin() + static_cast<long>(lo), a.begin() + static_cast<long>(hi) + 1);
        const Integer content = gcd_of(p);
        for (auto& c : p) c /= content;
        const auto num_divs = positive_divisors(p.back());
        const auto den_divs = positive_divisors(p.front());
        auto eval = [&](const Integer& r, const Integer& s) {
            // sum p[i] r^{deg-i} s^i, Horner in homogeneous form
            Integer acc = 0, spow = 1;
            std::vector<Integer> spows(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) {
                spows[i] = spow;
                spow *= s;
            }
            for (std::size_t i = 0; i < p.size(); ++i) acc = acc * r + p[i] * spows[i];
            return acc;
        };
        for (const auto& s : den_divs) {
            for (const auto& r0 : num_divs) {
                Integer gg;
                mpz_gcd(gg.get_mpz_t(), r0.get_mpz_t(), s.get_mpz_t());
                if (gg != 1) continue;
                for (int sign : {1, -1}) {
                    const Integer r = sign * r0;
                    if (sgn(eval(r, s)) == 0) roots.push_back(ProjPointQ(std::vector<Integer>{r, s}));
                }
            }
        }
    }
    // Order by (denominator, numerator) of the value X/Z; infinity first.
    auto key = [](const ProjPointQ& x) {
        const Integer& X = x[0];
        const Integer& Z = x[1];
        if (sgn(Z) == 0) return std::make_pair(Integer(0), Integer(0));
        return sgn(Z) > 0 ? std::make_pair(Integer(Z), Integer(X)) : std::make_pair(Integer(-Z), Integer(-X));
    };
    std::sort(roots.begin(), roots.end(), [&](const ProjPointQ& u, const ProjPointQ& v) { return key(u) < key(v); });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<ProjPointQ> rational_preimages(const ProjMorphism& f, const ProjPointQ& y) {
    if (f.dim() != 1 || y.dim() != 1) throw InvalidInput("rational preimages are implemented for P^1 only");
    // f(X:Z) = (a:b)  <=>  b F0 - a F1 = 0
    HomogeneousForm g = f.forms()[0] * y[1];
    g -= f.forms()[1] * y[0];
    return binary_form_roots(g);
}

bool image_contains(const ProjMorphism& f, const ProjPointQ& y) { return !rational_preimages(f, y).empty(); }

namespace {

void grow(LiftNode& node, const std::vector<ProjMorphism>& fs) {
    if (node.depth == fs.size()) return;
    for (auto& x : rational_preimages(fs[node.depth], node.point)) {
        LiftNode child{std::move(x), node.depth + 1, {}};
        grow(child, fs);
        node.children.push_back(std::move(child));
    }
}

void summarize_into(const LiftNode& n, std::size_t depth, LiftSummary& s) {
    if (n.children.empty()) {
        if (n.depth == depth)
            ++s.full_depth_leaves;
        else
            ++s.dead_branches;
        return;
    }
    for (const auto& c : n.children) summarize_into(c, depth, s);
}

}  // namespace

LiftNode inverse_limit_lift(const std::vector<ProjMorphism>& fs, const ProjPointQ& y) {
    for (const auto& f : fs)
        if (f.dim() != 1) throw InvalidInput("inverse limits are implemented for P^1 only");
    LiftNode root{y, 0, {}};
    grow(root, fs);
    return root;
}

LiftSummary summarize(const LiftNode& root, std::size_t depth) {
    LiftSummary s;
    summarize_into(root, depth, s);
    return s;
}

}  // namespace arithdyn
