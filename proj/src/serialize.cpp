#include "arithdyn/serialize.hpp"

#include "arithdyn/errors.hpp"

#include <fstream>
#include <sstream>

namespace arithdyn {

namespace {

Rational rational_from_json(const Json& v) {
    if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw InvalidInput("expected an integer or a decimal string, got " + v.dump());
}

Integer integer_from_json(const Json& v) {
    if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
    if (v.is_string()) return parse_integer(v.get<std::string>());
    throw InvalidInput("expected an integer or a decimal string, got " + v.dump());
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Json to_json(const ProjPointQ& x) {
    Json j = Json::array();
    for (const auto& c : x.coords()) j.push_back(c.get_str());
    return j;
}

ProjPointQ point_from_json(const Json& j) {
    if (!j.is_array() || j.size() < 2) throw InvalidInput("a point is a JSON array of at least two coordinates");
    std::vector<Rational> raw;
    for (const auto& v : j) raw.push_back(rational_from_json(v));
    return ProjPointQ(std::span<const Rational>(raw));
}

ProjPointQ parse_point(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) throw InvalidInput("empty point");
    if (t.front() == '[') return point_from_json(parse_json(t));
    if (t == "inf" || t == "infinity") return ProjPointQ{1, 0};
    std::vector<Rational> raw;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ',')) raw.push_back(parse_rational(trim(part)));
    if (raw.size() == 1) raw.emplace_back(1);
    return ProjPointQ(std::span<const Rational>(raw));
}

Json to_json(const FiniteField& F) {
    return Json{{"p", F.characteristic()}, {"r", F.degree()}, {"modulus", F.modulus()}};
}

Json to_json(const ProjPointF& u) {
    Json coords = Json::array();
    for (const auto& c : u.coords()) coords.push_back(u.field().coeffs(c));
    return Json{{"coords", coords}, {"text", u.to_string()}};
}

Json to_json(const HomogeneousForm& g) {
    Json j = Json::array();
    for (const auto& [e, c] : g.terms()) j.push_back(Json{{"exps", e}, {"coeff", c.get_str()}});
    return j;
}

HomogeneousForm form_from_json(const Json& j) {
    const Json* terms = &j;
    std::optional<std::size_t> n_vars;
    std::optional<unsigned> degree;
    if (j.is_object()) {
        if (!j.contains("terms")) throw InvalidInput("form object needs a \"terms\" list");
        terms = &j.at("terms");
        if (j.contains("n_vars")) n_vars = j.at("n_vars").get<std::size_t>();
        if (j.contains("degree")) degree = j.at("degree").get<unsigned>();
    }
    if (!terms->is_array()) throw InvalidInput("form terms must be a JSON array");
    if (terms->empty() && (!n_vars || !degree)) throw InvalidInput("an empty form needs explicit n_vars and degree");
    HomogeneousForm::Terms parsed;
    for (const auto& t : *terms) {
        if (!t.is_object() || !t.contains("exps") || !t.contains("coeff"))
            throw InvalidInput("each term needs \"exps\" and \"coeff\": " + t.dump());
        Exponents e;
        for (const auto& v : t.at("exps")) {
            if (!v.is_number_integer() || v.get<long long>() < 0) throw InvalidInput("exponents must be nonnegative integers");
            e.push_back(v.get<unsigned>());
        }
        if (!n_vars) n_vars = e.size();
        if (!degree) {
            unsigned s = 0;
            for (unsigned x : e) s += x;
            degree = s;
        }
        const Integer c = integer_from_json(t.at("coeff"));
        auto [it, fresh] = parsed.emplace(e, c);
        if (!fresh) it->second += c;
    }
    for (auto it = parsed.begin(); it != parsed.end();) it = sgn(it->second) == 0 ? parsed.erase(it) : std::next(it);
    return HomogeneousForm(*n_vars, *degree, parsed);
}

Json to_json(const ProjMorphism& f) {
    Json forms = Json::array();
    for (const auto& g : f.forms()) forms.push_back(to_json(g));
    return Json{{"dim", f.dim()}, {"degree", f.degree()}, {"forms", forms}};
}

ProjMorphism morphism_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidInput("a morphism is a JSON object");
    if (j.contains("polynomial")) {
        std::vector<Rational> coeffs;
        for (const auto& v : j.at("polynomial")) coeffs.push_back(rational_from_json(v));
        return polynomial_map(coeffs);
    }
    if (!j.contains("forms") || !j.at("forms").is_array()) throw InvalidInput("morphism needs a \"forms\" array");
    const auto& jf = j.at("forms");
    const std::size_t n = jf.size();
    if (j.contains("dim") && j.at("dim").get<std::size_t>() + 1 != n)
        throw InvalidInput("\"dim\" does not match the number of forms");
    std::optional<unsigned> degree;
    if (j.contains("degree")) degree = j.at("degree").get<unsigned>();
    std::vector<HomogeneousForm> forms;
    for (const auto& t : jf) {
        if (t.is_array() && t.empty()) {
            if (!degree) throw InvalidInput("a zero form needs the morphism's \"degree\"");
            forms.emplace_back(n, *degree);
            continue;
        }
        HomogeneousForm g = form_from_json(t);
        if (degree && g.degree() != *degree) throw InvalidInput("form degree does not match \"degree\"");
        forms.push_back(std::move(g));
    }
    return ProjMorphism::validate(std::move(forms));
}

Json to_json(const ValidityCertificate& c) {
    return Json{{"kind", to_string(c.kind)},
                {"value", c.value.get_str()},
                {"witness_degree", c.witness_degree},
                {"rank", c.rank}};
}

Json to_json(const HeightEstimate& h) {
    return Json{{"value", h.value},
                {"error_bound", h.error_bound},
                {"iterations", h.iterations},
                {"exact_iterations", h.exact_iterations},
                {"preperiodic_detected", h.preperiodic_detected}};
}

Json to_json(const OrbitRecord& r) {
    Json pts = Json::array();
    for (const auto& p : r.points) pts.push_back(to_json(p));
    Json j{{"start", to_json(r.start)}, {"kind", to_string(r.kind)}, {"points", pts}};
    if (r.is_preperiodic()) {
        j["tail"] = r.tail;
        j["period"] = r.period;
    } else {
        j["escape_index"] = r.escape_index;
    }
    return j;
}

Json to_json(const ComparisonConstant& cc) {
    return Json{{"C", cc.C}, {"c_up", cc.c_up}, {"c_low", cc.c_low}, {"k_up", cc.k_up.get_str()},
                {"k_low", cc.k_low.get_str()}, {"identity_denominator", cc.identity_denominator.get_str()}};
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

}  // namespace arithdyn
