#include "spcd/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string_view>

#include "spcd/detail/overloaded.hpp"

namespace spcd::cli {

namespace {

using Json = nlohmann::json;
using Ordered = nlohmann::ordered_json;
using detail::overloaded;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ValidationError(path + ": " + message);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const Json& as_object(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            fail(join(path, it.key()), "unknown field");
        }
    }
}

const Json& field(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) fail(join(path, key), "required field is missing");
    return obj.at(key);
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

double number_field(const Json& obj, const std::string& path, const std::string& key) {
    return number(field(obj, path, key), join(path, key));
}

std::vector<double> numbers(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::size_t count(const Json& j, const std::string& path, std::size_t min) {
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(min)) {
        fail(path, "expected an integer >= " + std::to_string(min));
    }
    return j.get<std::size_t>();
}

TailClass parse_tail(const Json& j, const std::string& path) {
    as_object(j, path);
    reject_unknown(j, path, {"class", "params"});
    const Json& cls = field(j, path, "class");
    if (!cls.is_string()) fail(join(path, "class"), "expected a string");
    const std::string name = cls.get<std::string>();
    const Json params = j.contains("params") ? j.at("params") : Json::object();
    const std::string pp = join(path, "params");
    as_object(params, pp);
    auto num = [&](const char* key) { return number_field(params, pp, key); };

    if (name == "zero") {
        reject_unknown(params, pp, {});
        return tail::Zero{};
    }
    if (name == "constant") {
        reject_unknown(params, pp, {"c"});
        return tail::Constant{num("c")};
    }
    if (name == "geometric") {
        reject_unknown(params, pp, {"a", "q"});
        return tail::Geometric{num("a"), num("q")};
    }
    if (name == "power_law") {
        reject_unknown(params, pp, {"c", "p"});
        return tail::PowerLaw{num("c"), num("p")};
    }
    if (name == "affine_linear") {
        reject_unknown(params, pp, {"s", "b"});
        return tail::AffineLinear{num("s"), num("b")};
    }
    if (name == "quadratic_poly") {
        reject_unknown(params, pp, {"c2", "c1", "c0"});
        return tail::QuadraticPoly{num("c2"), num("c1"), num("c0")};
    }
    if (name == "alternating_power_law") {
        reject_unknown(params, pp, {"c", "p"});
        return tail::AlternatingPowerLaw{num("c"), num("p")};
    }
    if (name == "polynomial") {
        reject_unknown(params, pp, {"coeffs"});
        return tail::Polynomial{numbers(field(params, pp, "coeffs"), join(pp, "coeffs"))};
    }
    fail(join(path, "class"), "unknown tail class '" + name + "'");
}

SequenceSpec parse_sequence(const Json& j, const std::string& path) {
    as_object(j, path);
    reject_unknown(j, path, {"head", "tail", "tail_origin"});
    std::vector<double> head = j.contains("head") ? numbers(j.at("head"), join(path, "head")) : std::vector<double>{};
    TailClass t = parse_tail(field(j, path, "tail"), join(path, "tail"));
    std::size_t origin = head.size();
    if (j.contains("tail_origin")) origin = count(j.at("tail_origin"), join(path, "tail_origin"), 0);
    try {
        return SequenceSpec(std::move(head), std::move(t), origin);
    } catch (const InvalidSpec& e) {
        fail(path, e.what());
    }
}

FlowModel parse_model(const Json& j) {
    const std::string path = "model";
    as_object(j, path);
    const Json& fam = field(j, path, "family");
    if (!fam.is_string()) fail(join(path, "family"), "expected a string");
    const std::string family = fam.get<std::string>();

    FlowModel m;
    if (family == "foerster_lasota") {
        reject_unknown(j, path, {"family", "gamma"});
        m = model::FoersterLasota{number_field(j, path, "gamma")};
    } else if (family == "black_scholes") {
        reject_unknown(j, path, {"family", "r", "sigma"});
        m = model::BlackScholes{number_field(j, path, "r"), number_field(j, path, "sigma")};
    } else if (family == "malthusian") {
        reject_unknown(j, path, {"family", "lambda"});
        m = model::Malthusian{parse_sequence(field(j, path, "lambda"), join(path, "lambda"))};
    } else if (family == "fourier") {
        reject_unknown(j, path, {"family", "coefficients", "l"});
        m = model::Fourier{numbers(field(j, path, "coefficients"), join(path, "coefficients")),
                           number_field(j, path, "l")};
    } else if (family == "maclaurin") {
        reject_unknown(j, path, {"family", "coefficients"});
        m = model::Maclaurin{numbers(field(j, path, "coefficients"), join(path, "coefficients"))};
    } else {
        fail(join(path, "family"), "unknown family '" + family + "'");
    }
    try {
        validate(m);
    } catch (const InvalidModel& e) {
        fail(path, e.what());
    }
    return m;
}

DemandSchedule make_schedule(std::vector<Demand> demands) {
    try {
        return DemandSchedule(std::move(demands));
    } catch (const InvalidSchedule& e) {
        fail("demands", e.what());
    }
}

DemandSchedule parse_demands(const Json& j) {
    if (!j.is_array()) fail("demands", "expected an array of {t, m} objects");
    std::vector<Demand> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = "demands[" + std::to_string(i) + "]";
        as_object(j[i], path);
        reject_unknown(j[i], path, {"t", "m"});
        out.push_back({number_field(j[i], path, "t"), number_field(j[i], path, "m")});
    }
    return make_schedule(std::move(out));
}

void check_tolerance(double v, const std::string& path) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(path, "must be a finite number > 0");
}

void check_m0(double v, const std::string& path) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(path, "must be a finite number > 0");
}

RunOptions parse_options(const Json& j) {
    const std::string path = "options";
    as_object(j, path);
    reject_unknown(j, path, {"truncation", "depth", "panels", "tolerance", "check_tolerance", "check_times", "m0"});
    RunOptions o;
    if (j.contains("truncation")) {
        const Json& t = j.at("truncation");
        const std::string tp = join(path, "truncation");
        o.truncation.clear();
        if (t.is_array()) {
            if (t.empty()) fail(tp, "must not be empty");
            for (std::size_t i = 0; i < t.size(); ++i) o.truncation.push_back(count(t[i], tp + "[" + std::to_string(i) + "]", 1));
        } else {
            o.truncation.push_back(count(t, tp, 1));
        }
    }
    if (j.contains("depth")) o.depth = count(j.at("depth"), join(path, "depth"), 0);
    if (j.contains("panels")) o.panels = count(j.at("panels"), join(path, "panels"), 1);
    if (j.contains("tolerance")) {
        o.tolerance = number(j.at("tolerance"), join(path, "tolerance"));
        check_tolerance(o.tolerance, join(path, "tolerance"));
    }
    if (j.contains("check_tolerance")) {
        o.check_tolerance = number(j.at("check_tolerance"), join(path, "check_tolerance"));
        check_tolerance(o.check_tolerance, join(path, "check_tolerance"));
    }
    if (j.contains("check_times")) {
        o.check_times = numbers(j.at("check_times"), join(path, "check_times"));
        if (o.check_times.empty()) fail(join(path, "check_times"), "must not be empty");
        for (double t : o.check_times) {
            if (t < 0.0) fail(join(path, "check_times"), "times must be >= 0");
        }
    }
    if (j.contains("m0")) {
        o.m0 = number(j.at("m0"), join(path, "m0"));
        check_m0(*o.m0, join(path, "m0"));
    }
    return o;
}

Ordered tail_json(const TailClass& t) {
    Ordered params = Ordered::object();
    std::visit(overloaded{
                   [](const tail::Zero&) {},
                   [&](const tail::Constant& x) { params["c"] = x.c; },
                   [&](const tail::Geometric& x) {
                       params["a"] = x.a;
                       params["q"] = x.q;
                   },
                   [&](const tail::PowerLaw& x) {
                       params["c"] = x.c;
                       params["p"] = x.p;
                   },
                   [&](const tail::AffineLinear& x) {
                       params["s"] = x.s;
                       params["b"] = x.b;
                   },
                   [&](const tail::QuadraticPoly& x) {
                       params["c2"] = x.c2;
                       params["c1"] = x.c1;
                       params["c0"] = x.c0;
                   },
                   [&](const tail::AlternatingPowerLaw& x) {
                       params["c"] = x.c;
                       params["p"] = x.p;
                   },
                   [&](const tail::Polynomial& x) { params["coeffs"] = x.coeffs; },
               },
               t);
    Ordered out;
    out["class"] = tail_name(t);
    out["params"] = params;
    return out;
}

Ordered model_json(const FlowModel& m) {
    Ordered out;
    out["family"] = family_name(m);
    std::visit(overloaded{
                   [&](const model::FoersterLasota& x) { out["gamma"] = x.gamma; },
                   [&](const model::BlackScholes& x) {
                       out["r"] = x.r;
                       out["sigma"] = x.sigma;
                   },
                   [&](const model::Malthusian& x) { out["lambda"] = to_json(x.lambda); },
                   [&](const model::Fourier& x) {
                       out["coefficients"] = x.coefficients;
                       out["l"] = x.length;
                   },
                   [&](const model::Maclaurin& x) { out["coefficients"] = x.coefficients; },
               },
               m);
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& document) {
    Json doc;
    try {
        doc = Json::parse(document);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    as_object(doc, "config");
    reject_unknown(doc, "", {"model", "flavor", "demands", "options"});

    RunConfig c{parse_model(field(doc, "", "model")), MeasureFlavor::Ordinary, std::nullopt, {}};
    if (doc.contains("flavor")) {
        const Json& f = doc.at("flavor");
        if (f == "ordinary") {
            c.flavor = MeasureFlavor::Ordinary;
        } else if (f == "standard") {
            c.flavor = MeasureFlavor::Standard;
        } else {
            fail("flavor", "expected \"ordinary\" or \"standard\"");
        }
    }
    if (doc.contains("demands")) c.schedule = parse_demands(doc.at("demands"));
    if (doc.contains("options")) c.options = parse_options(doc.at("options"));
    return c;
}

void apply_overrides(RunConfig& config, const Overrides& o) {
    if (o.truncation) {
        if (*o.truncation == 0) fail("--truncation", "expected an integer >= 1");
        config.options.truncation = {*o.truncation};
    }
    if (o.depth) config.options.depth = *o.depth;
    if (o.tolerance) {
        check_tolerance(*o.tolerance, "--tolerance");
        config.options.tolerance = *o.tolerance;
    }
    if (o.check_tolerance) {
        check_tolerance(*o.check_tolerance, "--tolerance");
        config.options.check_tolerance = *o.check_tolerance;
    }
    if (o.m0) {
        check_m0(*o.m0, "--m0");
        config.options.m0 = *o.m0;
    }
}

Ordered to_json(const SequenceSpec& spec) {
    Ordered out;
    out["head"] = spec.head();
    out["tail"] = tail_json(spec.tail());
    out["tail_origin"] = spec.tail_origin();
    return out;
}

Ordered to_json(const RunConfig& c) {
    Ordered out;
    out["model"] = model_json(c.model);
    out["flavor"] = to_string(c.flavor);
    if (c.schedule) {
        Ordered demands = Ordered::array();
        for (const Demand& d : c.schedule->demands()) demands.push_back({{"t", d.time}, {"m", d.measure}});
        out["demands"] = demands;
    }
    Ordered o;
    o["truncation"] = c.options.truncation;
    o["depth"] = c.options.depth;
    o["panels"] = c.options.panels;
    o["tolerance"] = c.options.tolerance;
    o["check_tolerance"] = c.options.check_tolerance;
    o["check_times"] = c.options.check_times;
    if (c.options.m0) o["m0"] = *c.options.m0;
    out["options"] = o;
    return out;
}

}  // namespace spcd::cli
