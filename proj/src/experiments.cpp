#include "arithdyn/experiments.hpp"

#include "arithdyn/errors.hpp"
#include "arithdyn/parallel.hpp"
#include "arithdyn/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace arithdyn {

bool height_at_most(double h, double c) { return h <= c + 1e-12 * std::max(1.0, std::fabs(c)); }

std::int64_t bound_for_log_height(double c) {
    if (!std::isfinite(c)) throw InvalidInput("height bound must be finite");
    if (!height_at_most(0.0, c)) return -1;
    if (c > 43) throw BudgetExceeded("height bound exp(" + std::to_string(c) + ") does not fit in 64 bits");
    auto H = static_cast<std::int64_t>(std::floor(std::exp(c)));
    while (height_at_most(std::log(static_cast<double>(H + 1)), c)) ++H;
    while (H > 1 && !height_at_most(std::log(static_cast<double>(H)), c)) --H;
    return H;
}

long double candidate_count(std::size_t dim, std::int64_t bound) {
    if (bound < 1) return 0;
    const long double H = static_cast<long double>(bound);
    long double total = 0, block = H;
    for (std::size_t k = 0; k <= dim; ++k) {
        total += block;
        block *= 2 * H + 1;
    }
    return total;
}

namespace {

void check_budget(std::size_t dim, std::int64_t bound, std::uint64_t budget) {
    const long double n = candidate_count(dim, bound);
    if (n > static_cast<long double>(budget))
        throw BudgetExceeded("enumerating P^" + std::to_string(dim) + " up to max |x_i| <= " + std::to_string(bound) +
                             " visits about " + std::to_string(static_cast<double>(n)) + " candidates, over budget " +
                             std::to_string(budget));
}

/// Points of the bounded stream satisfying keep, in stream order.
template <class Keep>
std::vector<ProjPointQ> filter_points(std::size_t dim, std::int64_t bound, unsigned threads, Keep keep) {
    std::vector<ProjPointQ> out;
    if (bound < 1) return out;
    BoundedPointStream stream(dim, bound);
    constexpr std::size_t kChunk = 4096;
    std::vector<ProjPointQ> chunk;
    for (;;) {
        chunk.clear();
        while (chunk.size() < kChunk) {
            auto x = stream.next();
            if (!x) break;
            chunk.push_back(std::move(*x));
        }
        if (chunk.empty()) break;
        std::vector<char> ok(chunk.size(), 0);
        parallel_for(chunk.size(), threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) ok[i] = keep(chunk[i]);
        });
        for (std::size_t i = 0; i < chunk.size(); ++i)
            if (ok[i]) out.push_back(std::move(chunk[i]));
    }
    return out;
}

double log_ratio(const std::optional<std::uint64_t>& num, const std::optional<std::uint64_t>& den) {
    if (!num || !den || *num == 0 || *den <= 1) return std::nan("");
    return round_significant(std::log(static_cast<double>(*num)) / std::log(static_cast<double>(*den)));
}

bool same_real(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidInput("not a real number: '" + s + "'");
    }
    if (used != s.size()) throw InvalidInput("not a real number: '" + s + "'");
    return v;
}

const char* const kHeader = "c,M,N_f,R_f,ratio_MN,ratio_RM,status";

}  // namespace

std::vector<ProjPointQ> points_M(std::size_t N, double c, const CountOptions& opts) {
    const std::int64_t H = bound_for_log_height(c);
    check_budget(N, H, opts.budget);
    return enumerate_points(N, std::max<std::int64_t>(H, 0));
}

std::uint64_t count_M(std::size_t N, double c, const CountOptions& opts) {
    const std::int64_t H = bound_for_log_height(c);
    if (H < 1) return 0;
    check_budget(N, H, opts.budget);
    return count_points(N, H);
}

std::vector<ProjPointQ> points_N(const ProjMorphism& f, double c, const CountOptions& opts) {
    if (!height_at_most(0.0, c)) return {};
    const ComparisonConstant cc = comparison_constant(f);
    const std::int64_t H = bound_for_log_height((c + cc.c_low) / f.degree() + 1e-9);
    check_budget(f.dim(), H, opts.budget);
    return filter_points(f.dim(), H, opts.threads,
                         [&](const ProjPointQ& x) { return height_at_most(weil_height(apply(f, x)), c); });
}

std::uint64_t count_N(const ProjMorphism& f, double c, const CountOptions& opts) {
    return points_N(f, c, opts).size();
}

namespace {

// Decides ĥ <= c or ĥ > reject from the Tate bracket h(f^k x)/d^k +- C/((d-1) d^k)
// over a short exact orbit. Either outcome fixes the full-precision verdict:
// the estimate lies within tol of ĥ. nullopt when the bracket straddles.
std::optional<bool> bracket_decision(const ProjMorphism& f, const ComparisonConstant& cc, const ProjPointQ& x,
                                     double c, double reject) {
    const double d = f.degree();
    const double drift = cc.C / (d - 1);
    ProjPointQ cur = x;
    double scale = 1;
    for (int k = 0; k <= 24; ++k) {
        const double h = weil_height(cur) * scale;
        const double w = drift * scale;
        const double fuzz = 1e-12 * (h + w + 1);
        if (h + w + fuzz <= c) return true;
        if (h - w - fuzz > reject) return false;
        std::size_t bits = 0;
        for (const auto& v : cur.coords()) bits = std::max(bits, bit_length(v));
        if (bits > 8192) break;
        cur = apply(f, cur, cc.identity_denominator);
        scale /= d;
    }
    return std::nullopt;
}

}  // namespace

std::vector<ProjPointQ> points_R(const ProjMorphism& f, double c, const CountOptions& opts) {
    const unsigned d = f.degree();
    if (d < 2) throw InvalidInput("R counts need degree >= 2");
    if (!(opts.tol > 0)) throw InvalidInput("tolerance must be positive");
    if (!height_at_most(0.0, c + opts.tol)) return {};
    const ComparisonConstant cc = comparison_constant(f);
    const double drift = cc.C / (d - 1);
    const double reach = c + 2 * opts.tol + drift;
    const std::int64_t H = bound_for_log_height(reach + 1e-9);
    check_budget(f.dim(), H, opts.budget);
    const double accept = c + opts.tol;
    const double reject = c + 2 * opts.tol + 2e-12 * std::max(1.0, std::fabs(accept));
    return filter_points(f.dim(), H, opts.threads, [&](const ProjPointQ& x) {
        // ĥ >= h - C/(d-1) > c + 2 tol
        if (weil_height(x) > reach + 1e-12 * std::max(1.0, std::fabs(reach))) return false;
        if (auto decided = bracket_decision(f, cc, x, c, reject)) return *decided;
        return height_at_most(canonical_height(f, cc, x, opts.tol).value, accept);
    });
}

std::uint64_t count_R(const ProjMorphism& f, double c, const CountOptions& opts) {
    return points_R(f, c, opts).size();
}

bool operator==(const CountRow& a, const CountRow& b) {
    return same_real(a.c, b.c) && a.M == b.M && a.N_f == b.N_f && a.R_f == b.R_f && same_real(a.ratio_MN, b.ratio_MN) &&
           same_real(a.ratio_RM, b.ratio_RM) && a.status == b.status;
}

double round_significant(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_real(x).c_str(), nullptr);
}

CountTable ratio_table(const ProjMorphism& f, std::vector<double> c_values, const CountOptions& opts) {
    std::sort(c_values.begin(), c_values.end());
    CountTable t;
    t.morphism_hash = morphism_hash(f);
    t.tol = round_significant(opts.tol);
    t.timestamp = utc_timestamp();
    for (double c : c_values) {
        CountRow row;
        row.c = round_significant(c);
        auto attempt = [&](auto&& fn) -> std::optional<std::uint64_t> {
            try {
                return fn();
            } catch (const BudgetExceeded&) {
                row.status = "budget_exceeded";
                return std::nullopt;
            }
        };
        row.M = attempt([&] { return count_M(f.dim(), c, opts); });
        row.N_f = attempt([&] { return count_N(f, c, opts); });
        row.R_f = attempt([&] { return count_R(f, c, opts); });
        row.ratio_MN = log_ratio(row.M, row.N_f);
        row.ratio_RM = log_ratio(row.R_f, row.M);
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string emit_csv(const CountTable& t) {
    std::ostringstream os;
    os << "# morphism_hash: " << t.morphism_hash << '\n';
    os << "# tol: " << format_real(t.tol) << '\n';
    os << "# timestamp: " << t.timestamp << '\n';
    os << kHeader << '\n';
    auto cell = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& r : t.rows)
        os << format_real(r.c) << ',' << cell(r.M) << ',' << cell(r.N_f) << ',' << cell(r.R_f) << ','
           << format_real(r.ratio_MN) << ',' << format_real(r.ratio_RM) << ',' << r.status << '\n';
    return os.str();
}

CountTable parse_csv(std::string_view text) {
    CountTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            std::string key = line.substr(1, colon - 1);
            std::string value = line.substr(colon + 1);
            key.erase(0, key.find_first_not_of(' '));
            value.erase(0, value.find_first_not_of(' '));
            if (key == "morphism_hash") t.morphism_hash = value;
            else if (key == "tol") t.tol = parse_double(value);
            else if (key == "timestamp") t.timestamp = value;
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) throw InvalidInput("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cellv;
        while (std::getline(ss, cellv, ',')) cells.push_back(cellv);
        if (line.back() == ',') cells.emplace_back();
        if (cells.size() != 7) throw InvalidInput("CSV row needs 7 cells: " + line);
        auto count = [](const std::string& s) -> std::optional<std::uint64_t> {
            if (s.empty()) return std::nullopt;
            return std::stoull(s);
        };
        CountRow r;
        r.c = parse_double(cells[0]);
        r.M = count(cells[1]);
        r.N_f = count(cells[2]);
        r.R_f = count(cells[3]);
        r.ratio_MN = parse_double(cells[4]);
        r.ratio_RM = parse_double(cells[5]);
        r.status = cells[6];
        t.rows.push_back(std::move(r));
    }
    if (!header_seen) throw InvalidInput("CSV has no header row");
    return t;
}

std::string morphism_hash(const ProjMorphism& f) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : to_json(f).dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

FamilyCount family_max_R(const std::vector<ProjMorphism>& family, double c, const CountOptions& opts) {
    FamilyCount out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::optional<std::uint64_t> n;
        try {
            n = count_R(family[i], c, opts);
        } catch (const BudgetExceeded&) {
        }
        if (n && (!out.argmax || *n > out.max)) {
            out.argmax = i;
            out.max = *n;
        }
        out.counts.push_back(n);
    }
    return out;
}

double parse_real_or_log(std::string_view text) {
    std::string s(text);
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s.rfind("log(", 0) == 0 && !s.empty() && s.back() == ')') {
        const Rational q = parse_rational(s.substr(4, s.size() - 5));
        if (sgn(q) <= 0) throw InvalidInput("log of a nonpositive number: " + s);
        return log_abs(q.get_num()) - log_abs(q.get_den());
    }
    if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
    return parse_double(s);
}

}  // namespace arithdyn
