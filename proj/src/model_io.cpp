#include "permcycles/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "permcycles/error.hpp"

namespace permcycles {

using nlohmann::json;

namespace {

std::string position_of(const std::string& text, std::size_t byte) {
    long line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
    for (const char* k : keys) {
        auto it = obj.find(k);
        if (it == obj.end()) continue;
        if (!it->is_number()) throw ParseError(where + ": field '" + k + "' must be a number");
        return it->get<double>();
    }
    throw ParseError(where + ": missing field '" + *keys.begin() + "'");
}

SeqRule parse_rule(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto k = j.find("kind");
    if (k == j.end() || !k->is_string()) throw ParseError(where + ": missing string field 'kind'");
    const std::string kind = k->get<std::string>();
    if (kind == "constant") return SeqRule::constant(number(j, {"c", "kstar"}, where));
    if (kind == "power")
        return SeqRule::power(number(j, {"c", "kstar"}, where), number(j, {"exponent", "gamma0", "s"}, where));
    if (kind == "polylog")
        return SeqRule::polylog(number(j, {"kstar", "c"}, where), number(j, {"s", "exponent", "gamma0"}, where));
    if (kind == "perturbed")
        return SeqRule::perturbed(number(j, {"c", "kstar"}, where), number(j, {"s", "exponent", "gamma0"}, where),
                                  number(j, {"eps"}, where));
    if (kind == "table") {
        auto v = j.find("values");
        if (v == j.end() || !v->is_array()) throw ParseError(where + ": table needs an array 'values'");
        std::vector<double> vals;
        for (const auto& e : *v) {
            if (!e.is_number()) throw ParseError(where + ": table values must be numbers");
            vals.push_back(e.get<double>());
        }
        return SeqRule::from_table(std::move(vals));
    }
    throw ParseError(where + ": unknown kind '" + kind + "'");
}

json dump_rule(const SeqRule& r) {
    switch (r.kind) {
        case SeqRule::Kind::Constant: return {{"kind", "constant"}, {"c", r.c}};
        case SeqRule::Kind::Power: return {{"kind", "power"}, {"c", r.c}, {"exponent", r.exponent}};
        case SeqRule::Kind::Polylog: return {{"kind", "polylog"}, {"kstar", r.c}, {"s", r.exponent}};
        case SeqRule::Kind::Perturbed:
            return {{"kind", "perturbed"}, {"c", r.c}, {"s", r.exponent}, {"eps", r.eps}};
        case SeqRule::Kind::Table: return {{"kind", "table"}, {"values", r.table}};
    }
    return {};
}

ProfileOverride parse_profile(const json& j) {
    if (!j.is_object()) throw ParseError("profile: expected an object");
    ProfileOverride p;
    auto opt = [&](const char* key, std::optional<double>& dst) {
        if (auto it = j.find(key); it != j.end()) {
            if (!it->is_number()) throw ParseError(std::string("profile: field '") + key + "' must be a number");
            dst = it->get<double>();
        }
    };
    opt("radius", p.radius);
    opt("theta_star", p.theta_star);
    opt("theta_regular_at_R", p.theta_regular_at_R);
    opt("sing_index", p.sing_index);
    opt("sing_coeff", p.sing_coeff);
    opt("gt_value_at_R", p.gt_value_at_R);
    if (auto it = j.find("gk_derivs_at_R"); it != j.end()) {
        if (!it->is_array()) throw ParseError("profile: 'gk_derivs_at_R' must be an array");
        std::vector<double> v;
        for (const auto& e : *it) {
            if (!e.is_number()) throw ParseError("profile: 'gk_derivs_at_R' entries must be numbers");
            v.push_back(e.get<double>());
        }
        p.gk_derivs_at_R = std::move(v);
    }
    return p;
}

}  // namespace

WeightModel parse_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON at " + position_of(text, e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError("model: top level must be an object");
    if (!j.contains("theta") || !j.contains("kappa")) throw ParseError("model: 'theta' and 'kappa' are required");
    SeqRule theta = parse_rule(j["theta"], "theta");
    SeqRule kappa = parse_rule(j["kappa"], "kappa");
    double rho = 1.0;
    if (auto it = j.find("rho"); it != j.end()) {
        if (!it->is_number()) throw ParseError("model: 'rho' must be a number");
        rho = it->get<double>();
    }
    std::optional<ProfileOverride> prof;
    if (auto it = j.find("profile"); it != j.end() && !it->is_null()) {
        prof = parse_profile(*it);
        if (prof->empty()) prof.reset();
    }
    return WeightModel(std::move(theta), std::move(kappa), rho, std::move(prof));
}

WeightModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string dump_model(const WeightModel& model) {
    json j;
    j["theta"] = dump_rule(model.theta_rule());
    j["kappa"] = dump_rule(model.kappa_base_rule());
    j["rho"] = model.rho();
    if (const auto& u = model.user_profile(); u && !u->empty()) {
        json p = json::object();
        auto put = [&](const char* key, const std::optional<double>& v) {
            if (v) p[key] = *v;
        };
        put("radius", u->radius);
        put("theta_star", u->theta_star);
        put("theta_regular_at_R", u->theta_regular_at_R);
        put("sing_index", u->sing_index);
        put("sing_coeff", u->sing_coeff);
        put("gt_value_at_R", u->gt_value_at_R);
        if (u->gk_derivs_at_R) p["gk_derivs_at_R"] = *u->gk_derivs_at_R;
        j["profile"] = p;
    }
    return j.dump(2);
}

}  // namespace permcycles
