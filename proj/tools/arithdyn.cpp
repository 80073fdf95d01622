// arithdyn: command-line front end for the arithdyn library.

#include "arithdyn/dynamics_finite.hpp"
#include "arithdyn/dynamics_rational.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/experiments.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/lattes.hpp"
#include "arithdyn/serialize.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace arithdyn;

namespace {

enum class Format { json, csv };

struct Globals {
    double tol = 1e-9;
    std::uint64_t budget = 50'000'000;
    unsigned threads = 1;
    std::string emit;  // "json", "csv", or an output path ending in .json / .csv
};

class Output {
public:
    Output(const Globals& g, Format fallback) {
        const std::string& e = g.emit;
        auto ends_with = [&](const char* suffix) {
            const std::string s(suffix);
            return e.size() > s.size() && e.compare(e.size() - s.size(), s.size(), s) == 0;
        };
        if (e.empty()) {
            format_ = fallback;
        } else if (e == "json" || e == "csv") {
            format_ = e == "json" ? Format::json : Format::csv;
        } else if (ends_with(".json") || ends_with(".csv")) {
            format_ = ends_with(".json") ? Format::json : Format::csv;
            file_.open(e);
            if (!file_) throw InvalidInput("cannot write " + e);
        } else {
            throw InvalidInput("--emit expects json, csv, or a path ending in .json or .csv");
        }
    }

    Format format() const { return format_; }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

    void json(const Json& j) { out() << j.dump(2) << '\n'; }
    void require_json(const char* command) {
        if (format_ != Format::json) throw InvalidInput(std::string(command) + " has JSON output only");
    }

private:
    Format format_ = Format::json;
    std::ofstream file_;
};

ProjMorphism load_morphism(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t");
    if (first != std::string::npos && arg[first] == '{') return morphism_from_json(parse_json(arg));
    return morphism_from_json(read_json_file(arg));
}

Json load_json_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg);
    return read_json_file(arg);
}

std::vector<ProjMorphism> load_morphism_list(const std::string& arg) {
    const Json j = load_json_arg(arg);
    std::vector<ProjMorphism> out;
    if (j.is_array()) {
        for (const auto& m : j) out.push_back(morphism_from_json(m));
    } else {
        out.push_back(morphism_from_json(j));
    }
    if (out.empty()) throw InvalidInput("empty morphism list");
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

Json lift_to_json(const LiftNode& n) {
    Json children = Json::array();
    for (const auto& c : n.children) children.push_back(lift_to_json(c));
    return Json{{"point", to_json(n.point)}, {"depth", n.depth}, {"children", children}};
}

std::vector<double> parse_c_values(const std::vector<std::string>& raw) {
    std::vector<double> out;
    for (const auto& s : raw) out.push_back(parse_real_or_log(s));
    return out;
}

CountOptions count_options(const Globals& g) { return {g.tol, g.budget, g.threads}; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic dynamics of morphisms of projective space"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--tol", g.tol, "Tolerance for canonical heights")->capture_default_str();
    app.add_option("--budget", g.budget, "Enumeration budget (candidate points)")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads")->capture_default_str();
    app.add_option("--emit", g.emit, "Output format json|csv, or an output file *.json|*.csv");

    std::function<void()> action;
    std::string morph_arg, point_arg, form_arg, family_arg;
    std::vector<std::string> c_args;
    unsigned long steps = 1;
    std::size_t depth = 1, dim = 1;
    std::int64_t bound = 1;
    std::uint64_t p = 0;
    unsigned r = 1, r_max = 1, deg = 2;
    unsigned long m = 1;
    std::string a = "0", b = "0";
    int coeff_budget = 2;

    auto* validate = app.add_subcommand("validate", "Certify that the forms define a morphism");
    validate->add_option("morphism", morph_arg, "Morphism JSON file or inline JSON")->required();
    validate->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("validate");
            const ProjMorphism f = load_morphism(morph_arg);
            o.json(Json{{"valid", true}, {"certificate", to_json(f.certificate())}, {"morphism", to_json(f)}});
        };
    });

    auto* apply_cmd = app.add_subcommand("apply", "Apply a morphism (or an iterate) to a rational point");
    apply_cmd->add_option("morphism", morph_arg)->required();
    apply_cmd->add_option("point", point_arg, "JSON array or comma list, e.g. 1/2 or 1,2")->required();
    apply_cmd->add_option("--n", steps, "Number of iterations")->capture_default_str();
    apply_cmd->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("apply");
            const ProjMorphism f = load_morphism(morph_arg);
            const ProjPointQ x = parse_point(point_arg);
            if (x.dim() != f.dim()) throw InvalidInput("point dimension does not match the morphism");
            o.json(Json{{"point", to_json(x)}, {"n", steps}, {"image", to_json(iterate(f, x, steps))}});
        };
    });

    auto* orbit = app.add_subcommand("orbit", "Exact orbit and its classification");
    orbit->add_option("morphism", morph_arg)->required();
    orbit->add_option("point", point_arg)->required();
    orbit->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("orbit");
            const ProjMorphism f = load_morphism(morph_arg);
            o.json(to_json(classify_orbit(f, parse_point(point_arg))));
        };
    });

    auto* canheight = app.add_subcommand("canheight", "Canonical height with a certified error bound");
    canheight->add_option("morphism", morph_arg)->required();
    canheight->add_option("point", point_arg)->required();
    canheight->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("canheight");
            const ProjMorphism f = load_morphism(morph_arg);
            const ProjPointQ x = parse_point(point_arg);
            const HeightEstimate h = canonical_height(f, x, g.tol);
            Json j = to_json(h);
            j["point"] = to_json(x);
            j["weil_height"] = weil_height(x);
            j["tol"] = g.tol;
            o.json(j);
        };
    });

    auto* preper = app.add_subcommand("preper", "All rational preperiodic points");
    preper->add_option("morphism", morph_arg)->required();
    preper->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            const ProjMorphism f = load_morphism(morph_arg);
            const auto pts = preperiodic_points(f, {g.budget, g.threads});
            if (o.format() == Format::csv) {
                o.out() << "point,kind,tail,period\n";
                for (const auto& x : pts) {
                    const auto rec = classify_orbit(f, x);
                    o.out() << csv_quote(x.to_string()) << ',' << to_string(rec.kind) << ',' << rec.tail << ','
                            << rec.period << '\n';
                }
                return;
            }
            const ComparisonConstant cc = comparison_constant(f);
            Json list = Json::array();
            for (const auto& x : pts) {
                const auto rec = classify_orbit(f, cc, x);
                list.push_back(Json{{"point", to_json(x)}, {"kind", to_string(rec.kind)}, {"tail", rec.tail},
                                    {"period", rec.period}});
            }
            o.json(Json{{"count", pts.size()}, {"height_bound", escape_height_bound(cc, f.degree()).get_str()},
                        {"comparison_constant", to_json(cc)}, {"points", list}});
        };
    });

    auto* preimages = app.add_subcommand("preimages", "Rational preimages of a point of P^1");
    preimages->add_option("morphism", morph_arg)->required();
    preimages->add_option("point", point_arg)->required();
    preimages->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            const ProjMorphism f = load_morphism(morph_arg);
            const auto pre = rational_preimages(f, parse_point(point_arg));
            if (o.format() == Format::csv) {
                o.out() << "point\n";
                for (const auto& x : pre) o.out() << csv_quote(x.to_string()) << '\n';
                return;
            }
            Json list = Json::array();
            for (const auto& x : pre) list.push_back(to_json(x));
            o.json(Json{{"count", pre.size()}, {"preimages", list}});
        };
    });

    auto* invlimit = app.add_subcommand("invlimit", "Tree of rational lifts through a sequence of maps of P^1");
    invlimit->add_option("morphisms", morph_arg, "A morphism or a JSON array of morphisms")->required();
    invlimit->add_option("point", point_arg)->required();
    invlimit->add_option("--depth", depth, "Tree depth; a shorter list is repeated cyclically")->capture_default_str();
    invlimit->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("invlimit");
            const auto given = load_morphism_list(morph_arg);
            std::vector<ProjMorphism> fs;
            for (std::size_t i = 0; i < depth; ++i) fs.push_back(given[i % given.size()]);
            const LiftNode root = inverse_limit_lift(fs, parse_point(point_arg));
            const LiftSummary s = summarize(root, depth);
            o.json(Json{{"depth", depth}, {"full_depth_leaves", s.full_depth_leaves},
                        {"dead_branches", s.dead_branches}, {"tree", lift_to_json(root)}});
        };
    });

    auto* enumerate = app.add_subcommand("enumerate", "Stream the points of P^N(Q) with max |x_i| <= H");
    enumerate->add_option("--dim", dim)->required();
    enumerate->add_option("--bound", bound)->required();
    enumerate->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            if (bound < 0) throw InvalidInput("--bound must be nonnegative");
            if (candidate_count(dim, bound) > static_cast<long double>(g.budget))
                throw BudgetExceeded("enumeration exceeds the budget of " + std::to_string(g.budget) + " candidates");
            BoundedPointStream s(dim, bound);
            while (auto x = s.next()) {
                if (o.format() == Format::json) {
                    o.out() << to_json(*x).dump() << '\n';
                } else {
                    for (std::size_t i = 0; i < x->coords().size(); ++i) o.out() << (i ? "," : "") << (*x)[i].get_str();
                    o.out() << '\n';
                }
            }
        };
    });

    auto* ffgraph = app.add_subcommand("ffgraph", "Functional graph over F_{p^r}");
    ffgraph->add_option("morphism", morph_arg)->required();
    ffgraph->add_option("--p", p)->required();
    ffgraph->add_option("--r", r)->capture_default_str();
    ffgraph->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            const ProjMorphism f = load_morphism(morph_arg);
            const FunctionalGraph gr = build_graph(f, FiniteField::get(p, r), g.threads);
            if (o.format() == Format::csv) {
                o.out() << "point,successor,tail,period\n";
                for (std::uint64_t i = 0; i < gr.size(); ++i)
                    o.out() << csv_quote(gr.point(i).to_string()) << ','
                            << csv_quote(gr.point(gr.successor(i)).to_string()) << ',' << gr.tail(i) << ','
                            << gr.period(i) << '\n';
                return;
            }
            Json nodes = Json::array();
            for (std::uint64_t i = 0; i < gr.size(); ++i)
                nodes.push_back(Json{{"index", i}, {"point", gr.point(i).to_string()}, {"successor", gr.successor(i)},
                                     {"tail", gr.tail(i)}, {"period", gr.period(i)}});
            o.json(Json{{"field", to_json(gr.field())}, {"points", gr.size()},
                        {"periodic", gr.periodic_count()}, {"nodes", nodes}});
        };
    });

    auto* twist = app.add_subcommand("twist", "Solve f(u) = sigma^m(u) over F_{p^r} for r = 1..rmax");
    twist->add_option("morphism", morph_arg)->required();
    twist->add_option("--p", p)->required();
    twist->add_option("--m", m)->capture_default_str();
    twist->add_option("--rmax", r_max)->capture_default_str();
    twist->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            const ProjMorphism f = load_morphism(morph_arg);
            if (m < 1 || r_max < 1) throw InvalidInput("--m and --rmax must be at least 1");
            if (o.format() == Format::csv) o.out() << "r,point,period\n";
            Json rows = Json::array();
            for (unsigned rr = 1; rr <= r_max; ++rr) {
                const auto sols = frobenius_twist_solve(f, p, m, rr);
                const ReducedMorphism rf(f, FiniteField::get(p, rr));
                Json list = Json::array();
                for (const auto& u : sols) {
                    const CycleInfo ci = brent_cycle(rf, u);
                    if (o.format() == Format::csv)
                        o.out() << rr << ',' << csv_quote(u.to_string()) << ',' << ci.period << '\n';
                    list.push_back(Json{{"point", to_json(u)}, {"period", ci.period}});
                }
                rows.push_back(Json{{"r", rr}, {"count", sols.size()}, {"solutions", list}});
            }
            if (o.format() == Format::json) o.json(Json{{"p", p}, {"m", m}, {"rows", rows}});
        };
    });

    auto* density = app.add_subcommand("density", "Find a periodic point over F_{p^r} off a hypersurface");
    density->add_option("morphism", morph_arg)->required();
    density->add_option("--p", p)->required();
    density->add_option("--avoid", form_arg, "Form JSON file or inline JSON")->required();
    density->add_option("--rmax", r_max)->capture_default_str();
    density->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("density");
            const ProjMorphism f = load_morphism(morph_arg);
            const HomogeneousForm avoid = form_from_json(load_json_arg(form_arg));
            const auto w = density_in_open(f, p, avoid, r_max, g.threads);
            if (!w) {
                o.json(Json{{"found", false}, {"rmax", r_max},
                            {"note", "no witness up to rmax; inconclusive, not a disproof"}});
                return;
            }
            o.json(Json{{"found", true}, {"r", w->r}, {"point", to_json(w->point)}, {"period", w->period},
                        {"field", to_json(w->point.field())}});
        };
    });

    auto* lattes = app.add_subcommand("lattes", "Lattes map of doubling on y^2 = x^3 + a x + b");
    lattes->add_option("--a", a)->required();
    lattes->add_option("--b", b)->required();
    lattes->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("lattes");
            o.json(to_json(lattes_map(WeierstrassCurve(parse_integer(a), parse_integer(b)))));
        };
    });

    auto* extend = app.add_subcommand("extend", "Extend doubling on a plane cubic to a self-map of P^2");
    extend->add_option("--a", a)->required();
    extend->add_option("--b", b)->required();
    extend->add_option("--budget", coeff_budget, "Largest corrector coefficient")->capture_default_str();
    extend->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            o.require_json("extend");
            const ExtensionResult res = extend_duplication(WeierstrassCurve(parse_integer(a), parse_integer(b)), {coeff_budget, g.threads});
            Json quartics = Json::array(), correctors = Json::array();
            for (const auto& h : res.quartics) quartics.push_back(h.to_string());
            for (const auto& l : res.correctors) correctors.push_back(l.to_string());
            Json forms = Json::array();
            for (const auto& F : res.morphism.forms()) forms.push_back(F.to_string());
            o.json(Json{{"morphism", to_json(res.morphism)}, {"forms", forms}, {"quartics", quartics},
                        {"correctors", correctors}, {"certificate", to_json(res.morphism.certificate())},
                        {"candidates_tried", res.candidates_tried}});
        };
    });

    auto* genus = app.add_subcommand("genus", "Genus of the preimage of a general line; feasibility g >= 2");
    genus->add_option("--dim", dim)->required();
    genus->add_option("--deg", deg)->required();
    genus->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            if (dim < 1 || deg < 1) throw InvalidInput("--dim and --deg must be at least 1");
            const auto gf = genus_feasibility(static_cast<unsigned>(dim), deg);
            const bool ineq = genus_inequality(static_cast<unsigned>(dim), deg);
            if (o.format() == Format::csv) {
                o.out() << "N,d,genus,feasible,inequality\n"
                        << dim << ',' << deg << ',' << gf.genus.get_str() << ',' << gf.feasible << ',' << ineq << '\n';
                return;
            }
            o.json(Json{{"N", dim}, {"d", deg}, {"genus", gf.genus.get_str()}, {"feasible", gf.feasible},
                        {"inequality", ineq}});
        };
    });

    auto* counts = app.add_subcommand("counts", "M(c), N(f,c) and R_f(c)");
    counts->add_option("morphism", morph_arg)->required();
    counts->add_option("--c", c_args, "Height cutoffs; accepts log(200)")->required();
    counts->callback([&] {
        action = [&] {
            Output o(g, Format::json);
            const ProjMorphism f = load_morphism(morph_arg);
            const CountOptions opts = count_options(g);
            auto cs = parse_c_values(c_args);
            if (o.format() == Format::csv) o.out() << "c,M,N_f,R_f\n";
            Json rows = Json::array();
            for (double c : cs) {
                const auto M = count_M(f.dim(), c, opts);
                const auto N = count_N(f, c, opts);
                const auto R = count_R(f, c, opts);
                if (o.format() == Format::csv) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.12g", c);
                    o.out() << buf << ',' << M << ',' << N << ',' << R << '\n';
                }
                rows.push_back(Json{{"c", round_significant(c)}, {"M", M}, {"N_f", N}, {"R_f", R}});
            }
            if (o.format() == Format::json) o.json(Json{{"tol", g.tol}, {"rows", rows}});
        };
    });

    auto* ratios = app.add_subcommand("ratios", "Table of counts and log-ratios; --family sweeps a list of maps");
    ratios->add_option("morphism", morph_arg, "Morphism (ignored with --family)");
    ratios->add_option("--c", c_args, "Height cutoffs; accepts log(200)")->required();
    ratios->add_option("--family", family_arg, "JSON array of morphisms: report the largest R count per c");
    ratios->callback([&] {
        action = [&] {
            Output o(g, Format::csv);
            const CountOptions opts = count_options(g);
            const auto cs = parse_c_values(c_args);
            if (!family_arg.empty()) {
                const auto fam = load_morphism_list(family_arg);
                Json rows = Json::array();
                if (o.format() == Format::csv) o.out() << "c,argmax,max_R,counts\n";
                for (double c : cs) {
                    const FamilyCount fc = family_max_R(fam, c, opts);
                    Json cj = Json::array();
                    std::string joined;
                    for (const auto& n : fc.counts) {
                        cj.push_back(n ? Json(*n) : Json(nullptr));
                        joined += (joined.empty() ? "" : ";") + (n ? std::to_string(*n) : std::string("budget"));
                    }
                    if (o.format() == Format::csv) {
                        char buf[64];
                        std::snprintf(buf, sizeof buf, "%.12g", c);
                        o.out() << buf << ',' << (fc.argmax ? std::to_string(*fc.argmax) : "") << ',' << fc.max << ','
                                << joined << '\n';
                    }
                    rows.push_back(Json{{"c", round_significant(c)},
                                        {"argmax", fc.argmax ? Json(*fc.argmax) : Json(nullptr)},
                                        {"max_R", fc.max},
                                        {"counts", cj}});
                }
                if (o.format() == Format::json) o.json(Json{{"tol", g.tol}, {"family_size", fam.size()}, {"rows", rows}});
                return;
            }
            if (morph_arg.empty()) throw InvalidInput("ratios needs a morphism or --family");
            const ProjMorphism f = load_morphism(morph_arg);
            const CountTable t = ratio_table(f, cs, opts);
            if (o.format() == Format::csv) {
                o.out() << emit_csv(t);
                return;
            }
            Json rows = Json::array();
            for (const auto& row : t.rows) {
                auto cell = [](const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); };
                auto real = [](double v) { return std::isnan(v) ? Json(nullptr) : Json(v); };
                rows.push_back(Json{{"c", row.c}, {"M", cell(row.M)}, {"N_f", cell(row.N_f)}, {"R_f", cell(row.R_f)},
                                    {"ratio_MN", real(row.ratio_MN)}, {"ratio_RM", real(row.ratio_RM)},
                                    {"status", row.status}});
            }
            o.json(Json{{"morphism_hash", t.morphism_hash}, {"tol", t.tol}, {"timestamp", t.timestamp}, {"rows", rows}});
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        action();
        return 0;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
