#include "lognls/cli/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

namespace lognls::cli {

namespace {

std::string join(std::string_view prefix, std::string_view key) {
    return prefix.empty() ? std::string(key) : std::string(prefix) + "." + std::string(key);
}

void reject_unknown(const toml::table& t, std::string_view prefix, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : t) {
        if (!allowed.count(std::string(k.str()))) throw ConfigError(join(prefix, k.str()), "unknown key");
    }
}

double get_real(const toml::table& t, std::string_view prefix, std::string_view key, double fallback) {
    const toml::node* n = t.get(key);
    if (!n) return fallback;
    if (auto v = n->value<double>()) {
        if (!std::isfinite(*v)) throw ConfigError(join(prefix, key), "must be finite");
        return *v;
    }
    throw ConfigError(join(prefix, key), "expected a number");
}

std::int64_t get_int(const toml::table& t, std::string_view prefix, std::string_view key, std::int64_t fallback) {
    const toml::node* n = t.get(key);
    if (!n) return fallback;
    if (auto v = n->as_integer()) return v->get();
    throw ConfigError(join(prefix, key), "expected an integer");
}

std::string get_string(const toml::table& t, std::string_view prefix, std::string_view key, std::string fallback) {
    const toml::node* n = t.get(key);
    if (!n) return fallback;
    if (auto v = n->as_string()) return v->get();
    throw ConfigError(join(prefix, key), "expected a string");
}

std::vector<double> get_reals(const toml::table& t, std::string_view prefix, std::string_view key) {
    const toml::node* n = t.get(key);
    if (!n) return {};
    const toml::array* a = n->as_array();
    if (!a) throw ConfigError(join(prefix, key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : *a) {
        auto v = e.value<double>();
        if (!v || !std::isfinite(*v)) throw ConfigError(join(prefix, key), "expected an array of finite numbers");
        out.push_back(*v);
    }
    return out;
}

Vec get_vec(const toml::table& t, std::string_view prefix, std::string_view key, int dim, Vec fallback) {
    if (!t.contains(key)) return fallback;
    const auto v = get_reals(t, prefix, key);
    if (static_cast<int>(v.size()) != dim)
        throw ConfigError(join(prefix, key), "expected " + std::to_string(dim) + " components (N)");
    Vec out{};
    for (int a = 0; a < dim; ++a) out[a] = v[a];
    return out;
}

// "auto" or a number; 0 encodes auto
double get_auto_real(const toml::table& t, std::string_view key) {
    const toml::node* n = t.get(key);
    if (!n) return 0.0;
    if (auto s = n->as_string()) {
        if (s->get() == "auto") return 0.0;
        throw ConfigError(std::string(key), "expected \"auto\" or a number");
    }
    return get_real(t, "", key, 0.0);
}

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) throw ConfigError(field, message);
}

void apply_override(toml::table& root, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must have the form key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    toml::table parsed;
    try {
        parsed = toml::parse("v = " + value);
    } catch (const toml::parse_error&) {
        // bare words are taken as strings
        toml::table t;
        t.insert_or_assign("v", value);
        parsed = std::move(t);
    }

    toml::table* target = &root;
    std::string_view rest = key;
    for (auto dot = rest.find('.'); dot != std::string_view::npos; dot = rest.find('.')) {
        const std::string part(rest.substr(0, dot));
        if (!target->contains(part)) target->insert_or_assign(part, toml::table{});
        target = (*target)[part].as_table();
        if (!target) throw ConfigError(key, "override path crosses a non-table value");
        rest.remove_prefix(dot + 1);
    }
    target->insert_or_assign(std::string(rest), *parsed.get("v"));
}

bool is_power_of_two(std::int64_t v) { return v >= 2 && (v & (v - 1)) == 0; }

Scenario from_table(const toml::table& root) {
    reject_unknown(root, "",
                   {"schema", "name", "N", "eps", "eps_list", "L", "M", "T", "dt", "sample_dt", "margin", "seed",
                    "outputs", "x0", "v0", "potential", "spectrum", "minimize"});
    const auto schema = get_int(root, "", "schema", 1);
    require(schema == 1, "schema", "unsupported schema version " + std::to_string(schema));

    Scenario s;
    s.name = get_string(root, "", "name", s.name);
    require(!s.name.empty(), "name", "must be non-empty");
    const auto n = get_int(root, "", "N", 1);
    require(n == 1 || n == 2, "N", "must be 1 or 2");
    s.dim = static_cast<int>(n);

    if (root.contains("eps")) {
        s.eps = get_real(root, "", "eps", 0.0);
        require(*s.eps > 0.0, "eps", "must be positive");
    }
    s.eps_list = get_reals(root, "", "eps_list");
    for (double e : s.eps_list) require(e > 0.0, "eps_list", "values must be positive");

    s.extent = get_real(root, "", "L", s.extent);
    require(s.extent > 0.0, "L", "must be positive");

    if (const toml::node* m = root.get("M")) {
        if (auto str = m->as_string()) {
            require(str->get() == "auto", "M", "expected \"auto\" or a power of two");
        } else {
            const auto pts = get_int(root, "", "M", 0);
            require(is_power_of_two(pts) && pts >= 8, "M", "must be a power of two >= 8");
            s.points = static_cast<int>(pts);
        }
    }

    s.t_final = get_real(root, "", "T", s.t_final);
    require(s.t_final > 0.0, "T", "must be positive");
    s.dt = get_auto_real(root, "dt");
    require(s.dt >= 0.0 && s.dt <= s.t_final, "dt", "must be \"auto\" or in (0, T]");
    s.sample_dt = get_real(root, "", "sample_dt", s.sample_dt);
    require(s.sample_dt > 0.0 && s.sample_dt <= s.t_final, "sample_dt", "must be in (0, T]");
    s.margin = get_real(root, "", "margin", s.margin);
    require(s.margin > 0.0, "margin", "must be positive");
    const auto seed = get_int(root, "", "seed", 1);
    require(seed >= 0, "seed", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
    s.outputs = get_string(root, "", "outputs", "out/" + s.name);
    s.x0 = get_vec(root, "", "x0", s.dim, s.x0);
    s.v0 = get_vec(root, "", "v0", s.dim, s.v0);

    if (const toml::node* pn = root.get("potential")) {
        const toml::table* p = pn->as_table();
        require(p != nullptr, "potential", "expected a table");
        reject_unknown(*p, "potential", {"kind", "amplitude", "center", "width", "wavevector", "offset"});
        const std::string kind = get_string(*p, "potential", "kind", "zero");
        try {
            s.potential.kind = parse_potential_kind(kind);
        } catch (const std::exception&) {
            throw ConfigError("potential.kind", "unknown potential kind '" + kind + "'");
        }
        s.potential.amplitude = get_real(*p, "potential", "amplitude", 0.0);
        s.potential.center = get_vec(*p, "potential", "center", s.dim, Vec{});
        s.potential.width = get_real(*p, "potential", "width", 1.0);
        require(s.potential.width > 0.0, "potential.width", "must be positive");
        Vec k{1.0, s.dim == 2 ? 1.0 : 0.0};
        s.potential.wavevector = get_vec(*p, "potential", "wavevector", s.dim, k);
        s.potential.offset = get_real(*p, "potential", "offset", 0.0);
        require(s.potential.offset >= 0.0, "potential.offset", "must be >= 0");
    }
    if (s.dim == 1) s.potential.wavevector[1] = 0.0;

    if (const toml::node* sn = root.get("spectrum")) {
        const toml::table* t = sn->as_table();
        require(t != nullptr, "spectrum", "expected a table");
        reject_unknown(*t, "spectrum", {"k", "basis", "points", "extent", "modes"});
        s.spectrum.k = static_cast<int>(get_int(*t, "spectrum", "k", s.spectrum.k));
        require(s.spectrum.k >= 1, "spectrum.k", "must be >= 1");
        s.spectrum.basis = get_string(*t, "spectrum", "basis", s.spectrum.basis);
        require(s.spectrum.basis == "auto" || s.spectrum.basis == "finite_difference_1d" ||
                    s.spectrum.basis == "hermite_tensor",
                "spectrum.basis", "expected auto, finite_difference_1d or hermite_tensor");
        require(!(s.spectrum.basis == "finite_difference_1d" && s.dim == 2), "spectrum.basis",
                "finite_difference_1d supports N = 1 only");
        const auto pts = get_int(*t, "spectrum", "points", s.spectrum.points);
        require(pts >= 8 && pts <= 4096 && pts % 2 == 0, "spectrum.points", "must be even and in [8, 4096]");
        s.spectrum.points = static_cast<int>(pts);
        s.spectrum.extent = get_real(*t, "spectrum", "extent", s.spectrum.extent);
        require(s.spectrum.extent > 0.0, "spectrum.extent", "must be positive");
        const auto modes = get_int(*t, "spectrum", "modes", s.spectrum.modes);
        require(modes >= 2 && modes <= s.spectrum.points, "spectrum.modes", "must be in [2, points]");
        s.spectrum.modes = static_cast<int>(modes);
    }

    if (const toml::node* mn = root.get("minimize")) {
        const toml::table* t = mn->as_table();
        require(t != nullptr, "minimize", "expected a table");
        reject_unknown(*t, "minimize", {"init", "amplitude", "tol", "max_iter"});
        s.minimize.init = get_string(*t, "minimize", "init", s.minimize.init);
        require(s.minimize.init == "gausson" || s.minimize.init == "perturbed" || s.minimize.init == "broad",
                "minimize.init", "expected gausson, perturbed or broad");
        s.minimize.amplitude = get_real(*t, "minimize", "amplitude", s.minimize.amplitude);
        require(s.minimize.amplitude >= 0.0, "minimize.amplitude", "must be >= 0");
        s.minimize.tol = get_real(*t, "minimize", "tol", s.minimize.tol);
        require(s.minimize.tol > 0.0, "minimize.tol", "must be positive");
        const auto it = get_int(*t, "minimize", "max_iter", s.minimize.max_iter);
        require(it >= 1, "minimize.max_iter", "must be >= 1");
        s.minimize.max_iter = static_cast<int>(it);
    }
    return s;
}

void append(std::ostringstream& os, std::string_view key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << key << '=' << buf << '\n';
}

void append(std::ostringstream& os, std::string_view key, const Vec& v, int dim) {
    os << key << '=';
    for (int a = 0; a < dim; ++a) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v[a]);
        os << (a ? "," : "") << buf;
    }
    os << '\n';
}

} // namespace

Potential Scenario::make_potential() const {
    switch (potential.kind) {
    case PotentialKind::zero: return Potential::zero(dim, potential.offset);
    case PotentialKind::gaussian_bump:
        return Potential::gaussian_bump(dim, potential.amplitude, potential.center, potential.width, potential.offset);
    case PotentialKind::cosine: return Potential::cosine(dim, potential.amplitude, potential.wavevector, potential.offset);
    }
    throw ConfigError("potential.kind", "unknown potential kind");
}

RunSpec Scenario::run_spec(double eps_value) const {
    RunSpec r;
    r.dim = dim;
    r.eps = eps_value;
    r.extent = extent;
    r.points = points;
    r.potential = make_potential();
    r.x0 = x0;
    r.v0 = v0;
    r.t_final = t_final;
    r.dt = dt;
    r.sample_dt = sample_dt;
    r.margin = margin;
    return r;
}

std::string Scenario::canonical() const {
    std::ostringstream os;
    os << "schema=1\nname=" << name << "\nN=" << dim << '\n';
    if (eps) append(os, "eps", *eps);
    os << "eps_list=";
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", eps_list[i]);
        os << (i ? "," : "") << buf;
    }
    os << '\n';
    append(os, "L", extent);
    os << "M=" << points << '\n';
    os << "potential.kind=" << to_string(potential.kind) << '\n';
    append(os, "potential.amplitude", potential.amplitude);
    append(os, "potential.center", potential.center, dim);
    append(os, "potential.width", potential.width);
    append(os, "potential.wavevector", potential.wavevector, dim);
    append(os, "potential.offset", potential.offset);
    append(os, "x0", x0, dim);
    append(os, "v0", v0, dim);
    append(os, "T", t_final);
    append(os, "dt", dt);
    append(os, "sample_dt", sample_dt);
    append(os, "margin", margin);
    os << "seed=" << seed << '\n';
    os << "spectrum=" << spectrum.k << ',' << spectrum.basis << ',' << spectrum.points << ',' << spectrum.modes << '\n';
    append(os, "spectrum.extent", spectrum.extent);
    os << "minimize.init=" << minimize.init << '\n';
    append(os, "minimize.amplitude", minimize.amplitude);
    append(os, "minimize.tol", minimize.tol);
    os << "minimize.max_iter=" << minimize.max_iter << '\n';
    return os.str();
}

std::string Scenario::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scenario parse_scenario(const std::string& text, const std::vector<std::string>& overrides) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << "TOML syntax error at line " << e.source().begin.line << ": " << e.description();
        throw ConfigError("<file>", msg.str());
    }
    for (const auto& o : overrides) apply_override(root, o);
    return from_table(root);
}

Scenario load_scenario(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), overrides);
}

} // namespace lognls::cli
