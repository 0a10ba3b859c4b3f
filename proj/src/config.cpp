#include "metaqe/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "metaqe/errors.hpp"

namespace metaqe {

using Json = nlohmann::ordered_json;

std::vector<double> UniformGrid::values() const
{
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
    return v;
}

namespace {

double parse_plain_number(std::string_view s, bool& ok)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    ok = ec == std::errc{} && ptr == s.data() + s.size();
    return v;
}

}  // namespace

double parse_angle(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    bool ok = false;
    const auto pi_at = s.find("pi");
    if (pi_at == std::string::npos) {
        const double v = parse_plain_number(s, ok);
        if (!ok)
            throw ConfigError("cannot parse angle '" + std::string(text) + "'");
        return v;
    }
    std::string coefficient = s.substr(0, pi_at);
    std::string rest = s.substr(pi_at + 2);
    if (!coefficient.empty() && coefficient.back() == '*')
        coefficient.pop_back();
    double factor = 1.0;
    if (coefficient == "-")
        factor = -1.0;
    else if (!coefficient.empty() && coefficient != "+") {
        factor = parse_plain_number(coefficient, ok);
        if (!ok)
            throw ConfigError("cannot parse angle '" + std::string(text) + "'");
    }
    if (!rest.empty()) {
        if (rest.front() != '/')
            throw ConfigError("cannot parse angle '" + std::string(text) + "'");
        const double divisor = parse_plain_number(std::string_view(rest).substr(1), ok);
        if (!ok || divisor == 0.0)
            throw ConfigError("cannot parse angle '" + std::string(text) + "'");
        factor /= divisor;
    }
    return factor * kPi;
}

namespace {

// Read-only view of one JSON object that remembers which keys were consumed,
// so misspelled keys are reported instead of silently ignored.
class Section {
public:
    Section(const Json& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object())
            throw ConfigError(where("") + ": expected an object");
    }

    std::string where(const std::string& key) const
    {
        if (path_.empty())
            return key.empty() ? "<root>" : key;
        return key.empty() ? path_ : path_ + "." + key;
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    Section child(const std::string& key)
    {
        seen_.insert(key);
        static const Json empty = Json::object();
        return Section(node_.contains(key) ? node_.at(key) : empty, where(key));
    }

    double number(const std::string& key, double fallback)
    {
        seen_.insert(key);
        if (!node_.contains(key))
            return fallback;
        const Json& v = node_.at(key);
        if (!v.is_number())
            throw ConfigError(where(key) + ": expected a number");
        return v.get<double>();
    }

    double positive(const std::string& key, double fallback)
    {
        const double v = number(key, fallback);
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(where(key) + ": must be positive and finite");
        return v;
    }

    int integer(const std::string& key, int fallback)
    {
        seen_.insert(key);
        if (!node_.contains(key))
            return fallback;
        const Json& v = node_.at(key);
        if (!v.is_number_integer())
            throw ConfigError(where(key) + ": expected an integer");
        return v.get<int>();
    }

    bool boolean(const std::string& key, bool fallback)
    {
        seen_.insert(key);
        if (!node_.contains(key))
            return fallback;
        const Json& v = node_.at(key);
        if (!v.is_boolean())
            throw ConfigError(where(key) + ": expected true or false");
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback)
    {
        seen_.insert(key);
        if (!node_.contains(key))
            return fallback;
        const Json& v = node_.at(key);
        if (!v.is_string())
            throw ConfigError(where(key) + ": expected a string");
        return v.get<std::string>();
    }

    double angle(const std::string& key, double fallback)
    {
        seen_.insert(key);
        if (!node_.contains(key))
            return fallback;
        const Json& v = node_.at(key);
        if (v.is_number())
            return v.get<double>();
        if (!v.is_string())
            throw ConfigError(where(key) + ": expected radians or a string like \"pi/4\"");
        try {
            return parse_angle(v.get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(where(key) + ": " + e.what());
        }
    }

    std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback)
    {
        seen_.insert(key);
        if (!node_.contains(key))
            return fallback;
        const Json& v = node_.at(key);
        if (!v.is_array() || v.empty())
            throw ConfigError(where(key) + ": expected a non-empty array of numbers");
        std::vector<double> out;
        for (const auto& item : v) {
            if (!item.is_number())
                throw ConfigError(where(key) + ": expected a non-empty array of numbers");
            out.push_back(item.get<double>());
        }
        return out;
    }

    void finish() const
    {
        for (const auto& [key, value] : node_.items())
            if (!seen_.count(key))
                throw ConfigError(where(key) + ": unknown key");
    }

private:
    const Json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

LorentzOscillator read_oscillator(Section s, const LorentzOscillator& fallback)
{
    LorentzOscillator o;
    o.amplitude = s.positive("amplitude", fallback.amplitude);
    o.resonance = s.positive("resonance", fallback.resonance);
    o.damping = s.positive("damping", fallback.damping);
    s.finish();
    return o;
}

UniformGrid read_grid(Section s, const UniformGrid& fallback)
{
    UniformGrid g;
    g.start = s.number("start", fallback.start);
    g.stop = s.number("stop", fallback.stop);
    g.count = s.integer("count", fallback.count);
    if (g.count < 2)
        throw ConfigError(s.where("count") + ": need at least 2 points");
    if (!(g.stop > g.start))
        throw ConfigError(s.where("stop") + ": must exceed start");
    s.finish();
    return g;
}

Json grid_json(const UniformGrid& g)
{
    return Json{{"start", g.start}, {"stop", g.stop}, {"count", g.count}};
}

Json oscillator_json(const LorentzOscillator& o)
{
    return Json{{"amplitude", o.amplitude}, {"resonance", o.resonance}, {"damping", o.damping}};
}

}  // namespace

RunConfig parse_config(std::string_view json_text)
{
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("<root>: invalid JSON: ") + e.what());
    }

    RunConfig c;
    Section top(root, "");
    c.name = top.text("name", c.name);

    Scenario& sc = c.scenario;
    {
        Section s = top.child("geometry");
        sc.geometry.height = s.positive("height", sc.geometry.height);
        sc.geometry.eps_lower = s.number("eps_substrate", sc.geometry.eps_lower);
        if (!(sc.geometry.eps_lower >= 1.0))
            throw ConfigError(s.where("eps_substrate") + ": must be >= 1");
        sc.omega = s.positive("omega", sc.omega);
        s.finish();
    }
    {
        Section s = top.child("conductivity");
        const std::string model = s.text("model", std::string(to_string(sc.model)));
        if (model == "lorentz")
            sc.model = ConductivityModel::Lorentz;
        else if (model == "extreme_limit")
            sc.model = ConductivityModel::ExtremeLimit;
        else if (model == "none")
            sc.model = ConductivityModel::None;
        else
            throw ConfigError(s.where("model") + ": expected lorentz, extreme_limit or none");
        sc.x = read_oscillator(s.child("x"), sc.x);
        sc.y = read_oscillator(s.child("y"), sc.y);
        s.finish();
    }
    {
        Section s = top.child("emitter");
        sc.angles.alpha = s.angle("alpha", sc.angles.alpha);
        sc.angles.beta = s.angle("beta", sc.angles.beta);
        sc.angles.gamma = s.angle("gamma", sc.angles.gamma);
        const int q = s.integer("initial", projection(c.initial));
        if (q < -1 || q > 1)
            throw ConfigError(s.where("initial") + ": must be -1, 0 or +1");
        c.initial = static_cast<Sublevel>(q);
        s.finish();
    }
    {
        Section s = top.child("detector");
        sc.detector.distance = s.number("distance", sc.detector.distance);
        if (!(sc.detector.distance >= kMinFarFieldDistance))
            throw ConfigError(s.where("distance") + ": must be at least 10 wavelengths");
        sc.detector.tied_to_tilt = s.boolean("tied_to_tilt", sc.detector.tied_to_tilt);
        const auto dir = s.numbers("direction", {0.0, 0.0, 1.0});
        if (dir.size() != 3)
            throw ConfigError(s.where("direction") + ": expected three components");
        const Vec3 d(dir[0], dir[1], dir[2]);
        if (!(d.norm() > 0.0) || d.z() < 0.0)
            throw ConfigError(s.where("direction") + ": must be nonzero and point into the upper half-space");
        sc.detector.direction = d.normalized();
        sc.farfield.equal_distance_approximation =
            s.boolean("equal_distance_approximation", sc.farfield.equal_distance_approximation);
        s.finish();
    }
    {
        Section s = top.child("tolerances");
        sc.quadrature.abs_tol = s.positive("abs", sc.quadrature.abs_tol);
        sc.quadrature.rel_tol = s.positive("rel", sc.quadrature.rel_tol);
        sc.quadrature.max_panels = s.integer("max_panels", sc.quadrature.max_panels);
        if (sc.quadrature.max_panels < 8)
            throw ConfigError(s.where("max_panels") + ": must be at least 8");
        s.finish();
    }
    {
        Section s = top.child("grids");
        c.tau = read_grid(s.child("tau"), c.tau);
        if (c.tau.start < 0.0)
            throw ConfigError(s.where("tau.start") + ": must be non-negative");
        c.delta = read_grid(s.child("delta"), c.delta);
        c.omega_x = read_grid(s.child("omega_x"), c.omega_x);
        c.omega_y = read_grid(s.child("omega_y"), c.omega_y);
        for (const auto* g : {&c.omega_x, &c.omega_y})
            if (!(g->start > 0.0 && g->stop <= 3.0))
                throw ConfigError(s.where(g == &c.omega_x ? "omega_x" : "omega_y") + ": must lie in (0, 3]");
        c.eps_substrate = s.numbers("eps_substrate", c.eps_substrate);
        for (double e : c.eps_substrate)
            if (!(e >= 1.0))
                throw ConfigError(s.where("eps_substrate") + ": every entry must be >= 1");
        s.finish();
    }
    {
        Section s = top.child("map");
        try {
            c.metric = parse_map_metric(s.text("metric", std::string(to_string(c.metric))));
        } catch (const InvalidParameter& e) {
            throw ConfigError(s.where("metric") + ": " + e.what());
        }
        s.finish();
    }
    top.finish();

    try {
        sc.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("<root>: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& c)
{
    const Scenario& sc = c.scenario;
    Json root;
    root["name"] = c.name;
    root["geometry"] = {{"height", sc.geometry.height},
                        {"eps_substrate", sc.geometry.eps_lower},
                        {"omega", sc.omega}};
    root["conductivity"] = {{"model", std::string(to_string(sc.model))},
                            {"x", oscillator_json(sc.x)},
                            {"y", oscillator_json(sc.y)}};
    root["emitter"] = {{"alpha", sc.angles.alpha},
                       {"beta", sc.angles.beta},
                       {"gamma", sc.angles.gamma},
                       {"initial", projection(c.initial)}};
    const Vec3& d = sc.detector.direction;
    root["detector"] = {{"distance", sc.detector.distance},
                        {"tied_to_tilt", sc.detector.tied_to_tilt},
                        {"direction", {d.x(), d.y(), d.z()}},
                        {"equal_distance_approximation", sc.farfield.equal_distance_approximation}};
    root["tolerances"] = {{"abs", sc.quadrature.abs_tol},
                          {"rel", sc.quadrature.rel_tol},
                          {"max_panels", sc.quadrature.max_panels}};
    root["grids"] = {{"tau", grid_json(c.tau)},
                     {"delta", grid_json(c.delta)},
                     {"omega_x", grid_json(c.omega_x)},
                     {"omega_y", grid_json(c.omega_y)},
                     {"eps_substrate", c.eps_substrate}};
    root["map"] = {{"metric", std::string(to_string(c.metric))}};
    return root.dump(2) + "\n";
}

}  // namespace metaqe
