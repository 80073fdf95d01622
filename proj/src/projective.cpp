#include "arithdyn/projective.hpp"

#include "arithdyn/errors.hpp"

#include <algorithm>
#include <sstream>

namespace arithdyn {

namespace {

void canonicalize(std::vector<Integer>& v, const Integer* multiple = nullptr) {
    if (v.empty()) throw InvalidInput("not a projective point: no coordinates");
    Integer g;
    if (multiple) {
        g = abs(*multiple);
        bool nz = false;
        for (const auto& c : v) {
            if (sgn(c) == 0) continue;
            nz = true;
            if (g != 1) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        if (!nz) g = 0;
    } else {
        g = gcd_of(v);
    }
    if (sgn(g) == 0) throw InvalidInput("not a projective point");
    const auto lead = std::find_if(v.begin(), v.end(), [](const Integer& c) { return sgn(c) != 0; });
    const bool flip = sgn(*lead) < 0;
    for (auto& c : v) {
        if (g != 1) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        if (flip) c = -c;
    }
}

std::vector<Integer> clear_denominators(std::span<const Rational> raw) {
    Integer l = 1;
    for (const auto& q : raw) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(raw.size());
    for (const auto& q : raw) out.emplace_back(q.get_num() * (l / q.get_den()));
    return out;
}

}  // namespace

ProjPointQ::ProjPointQ(std::vector<Integer> raw) : coords_(std::move(raw)) { canonicalize(coords_); }

ProjPointQ::ProjPointQ(std::vector<Integer> raw, const Integer& multiple) : coords_(std::move(raw)) {
    if (sgn(multiple) == 0) throw InvalidInput("gcd multiple must be nonzero");
    canonicalize(coords_, &multiple);
}

ProjPointQ::ProjPointQ(std::span<const Rational> raw) : coords_(clear_denominators(raw)) {
    canonicalize(coords_);
}

ProjPointQ::ProjPointQ(std::initializer_list<long> raw) {
    for (long v : raw) coords_.emplace_back(v);
    canonicalize(coords_);
}

Integer ProjPointQ::naive_height() const {
    Integer m = 0;
    for (const auto& c : coords_)
        if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
    return m;
}

std::string ProjPointQ::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ":" : "") << coords_[i].get_str();
    os << ')';
    return os.str();
}

bool operator<(const ProjPointQ& a, const ProjPointQ& b) {
    if (a.coords_.size() != b.coords_.size()) return a.coords_.size() < b.coords_.size();
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
}

ProjPointQ normalize_q(std::vector<Integer> raw) { return ProjPointQ(std::move(raw)); }
ProjPointQ normalize_q(std::span<const Rational> raw) { return ProjPointQ(raw); }

std::size_t ProjPointQHash::operator()(const ProjPointQ& x) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& c : x.coords()) {
        const mpz_srcptr z = c.get_mpz_t();
        std::size_t limb = mpz_size(z) ? mpz_getlimbn(z, 0) : 0;
        limb ^= static_cast<std::size_t>(mpz_size(z)) * 0x100000001b3ull;
        if (sgn(c) < 0) limb = ~limb;
        h ^= limb + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool normalize_in_place(const FiniteField& field, std::span<FieldElement> v) {
    const auto lead = std::find_if(v.begin(), v.end(), [](FieldElement e) { return e.code != 0; });
    if (lead == v.end()) return false;
    if (lead->code == 1) return true;
    const FieldElement s = field.inv(*lead);
    for (auto it = lead; it != v.end(); ++it) *it = field.mul(*it, s);
    return true;
}

ProjPointF::ProjPointF(FieldPtr field, std::vector<FieldElement> raw)
    : field_(std::move(field)), coords_(std::move(raw)) {
    if (coords_.empty()) throw InvalidInput("not a projective point: no coordinates");
    for (auto c : coords_)
        if (c.code >= field_->order()) throw InvalidInput("field element code out of range");
    if (!normalize_in_place(*field_, coords_)) throw InvalidInput("not a projective point");
}

std::string ProjPointF::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ':';
        if (field_->degree() == 1) {
            os << coords_[i].code;
            continue;
        }
        // residue polynomial in t, low degree first
        const auto c = field_->coeffs(coords_[i]);
        bool any = false;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            if (any) os << '+';
            any = true;
            if (k == 0 || c[k] != 1) os << c[k];
            if (k >= 1) os << 't';
            if (k >= 2) os << '^' << k;
        }
        if (!any) os << '0';
    }
    os << ')';
    return os.str();
}

ProjPointF frobenius(const ProjPointF& u, unsigned long m, std::uint64_t q_base) {
    const FiniteField& f = u.field();
    // Exponent q_base^m, reduced modulo (Q - 1) into [1, Q - 1] so that 0 stays 0.
    const std::uint64_t order_minus_one = f.order() - 1;
    unsigned __int128 e = 1 % order_minus_one;
    unsigned __int128 b = q_base % order_minus_one;
    for (unsigned long k = m; k; k >>= 1) {
        if (k & 1) e = (e * b) % order_minus_one;
        b = (b * b) % order_minus_one;
    }
    const std::uint64_t exponent = static_cast<std::uint64_t>(e) == 0 ? order_minus_one : static_cast<std::uint64_t>(e);
    std::vector<FieldElement> out;
    out.reserve(u.coords().size());
    for (auto c : u.coords()) out.push_back(f.pow(c, exponent));
    return ProjPointF(u.field_ptr(), std::move(out));
}

ProjPointF reduce_mod_p(const ProjPointQ& x, const FieldPtr& field) {
    std::vector<FieldElement> out;
    out.reserve(x.coords().size());
    for (const auto& c : x.coords()) out.push_back(field->from_integer(c));
    return ProjPointF(field, std::move(out));
}

ProjPointF reduce_mod_p(const ProjPointQ& x, std::uint64_t p) { return reduce_mod_p(x, FiniteField::get(p, 1)); }

PointIndexer::PointIndexer(FieldPtr field, std::size_t dim) : field_(std::move(field)), dim_(dim), q_(field_->order()) {
    block_start_.resize(dim + 2);
    block_start_[0] = 0;
    for (std::size_t k = 0; k <= dim; ++k) {
        std::uint64_t blk = 1;
        for (std::size_t j = k + 1; j <= dim; ++j) {
            if (blk > (~std::uint64_t{0}) / q_) throw BudgetExceeded("projective space too large to index");
            blk *= q_;
        }
        block_start_[k + 1] = block_start_[k] + blk;
    }
    total_ = block_start_[dim + 1];
}

void PointIndexer::coords_into(std::uint64_t index, std::span<FieldElement> out) const {
    std::size_t k = 0;
    while (index >= block_start_[k + 1]) ++k;
    std::uint64_t rest = index - block_start_[k];
    for (std::size_t j = 0; j < k; ++j) out[j] = {0};
    out[k] = {1};
    for (std::size_t j = dim_; j > k; --j) {
        out[j] = {rest % q_};
        rest /= q_;
    }
}

ProjPointF PointIndexer::point(std::uint64_t index) const {
    if (index >= total_) throw InvalidInput("point index out of range");
    std::vector<FieldElement> c(dim_ + 1);
    coords_into(index, c);
    return ProjPointF(field_, std::move(c));
}

std::uint64_t PointIndexer::index_of(std::span<const FieldElement> v) const {
    std::size_t k = 0;
    while (v[k].code == 0) ++k;
    std::uint64_t rest = 0;
    for (std::size_t j = k + 1; j <= dim_; ++j) rest = rest * q_ + v[j].code;
    return block_start_[k] + rest;
}

std::uint64_t PointIndexer::index(const ProjPointF& u) const {
    if (u.dim() != dim_ || !(u.field() == *field_)) throw InvalidInput("point does not belong to this space");
    return index_of(u.coords());
}

}  // namespace arithdyn
