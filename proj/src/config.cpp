#include "kslab/config.hpp"

#include "kslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kslab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

KeyValueFile KeyValueFile::parse_text(const std::string& text, const std::string& origin) {
    KeyValueFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (kv.values.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                              key + "' (first at line " + std::to_string(kv.line_of[key]) + ")");
        kv.values[key] = value;
        kv.line_of[key] = lineno;
    }
    return kv;
}

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

bool KeyValueFile::has(const std::string& key) const { return values.count(key) > 0; }

void KeyValueFile::fail(const std::string& key, const std::string& what) const {
    auto it = line_of.find(key);
    const std::string where =
        it != line_of.end() ? origin_ + ":" + std::to_string(it->second) : origin_;
    throw ConfigError(where + ": " + what + " (key '" + key + "')");
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    consumed[key] = true;
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

std::string KeyValueFile::require_string(const std::string& key) const {
    consumed[key] = true;
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return it->second;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    consumed[key] = true;
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) fail(key, "trailing junk after number");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(key, "cannot parse number '" + it->second + "'");
    }
}

double KeyValueFile::require_double(const std::string& key) const {
    if (!has(key)) throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return get_double(key, 0.0);
}

std::size_t KeyValueFile::get_size(const std::string& key, std::size_t fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    if (v < 0.0 || v != std::floor(v)) fail(key, "expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

std::vector<std::string> KeyValueFile::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : values)
        if (!consumed.count(k)) out.push_back(k);
    return out;
}

void KeyValueFile::set(const std::string& key, const std::string& value) {
    values[key] = value;
    if (!line_of.count(key)) line_of[key] = 0;
}

SimConfig build_sim_config(const KeyValueFile& kv) {
    SimConfig cfg;

    const std::string kind = kv.get_string("env.kind", "constant");
    const double c = kv.get_double("env.shift_speed", 0.0);
    if (kind == "constant") {
        cfg.env = EnvironmentProfile::constant(kv.get_double("env.r_peak", 1.0), c);
        cfg.env.width = kv.get_double("env.width", 1.0);
        cfg.env.center = kv.get_double("env.center", 0.0);
    } else if (kind == "tanh") {
        cfg.env = EnvironmentProfile::tanh_edge(
            kv.require_double("env.r_minus"), kv.require_double("env.r_plus"),
            kv.get_double("env.width", 1.0), kv.get_double("env.center", 0.0), c);
    } else if (kind == "bump") {
        cfg.env = EnvironmentProfile::bump(
            kv.require_double("env.r_minus"), kv.require_double("env.r_plus"),
            kv.require_double("env.r_peak"), kv.get_double("env.width", 1.0),
            kv.get_double("env.center", 0.0), c);
    } else {
        throw ConfigError("env.kind must be constant | tanh | bump, got '" + kind + "'");
    }

    cfg.params.chi = kv.get_double("chi", 0.0);
    cfg.params.nu = kv.get_double("nu", 1.0);
    cfg.params.mu = kv.get_double("mu", 1.0);
    cfg.params.b = kv.get_double("b", 1.0);

    const double x_min = kv.require_double("grid.x_min");
    const double x_max = kv.require_double("grid.x_max");
    if (!(x_max > x_min)) throw ConfigError("grid.x_max must exceed grid.x_min");
    if (kv.has("grid.n") && kv.has("grid.h"))
        throw ConfigError("give grid.n or grid.h, not both");
    if (kv.has("grid.n")) {
        cfg.grid = Grid(x_min, x_max, kv.get_size("grid.n", 3));
    } else {
        cfg.grid = Grid::with_spacing(x_min, x_max, kv.get_double("grid.h", 0.1));
    }

    cfg.t_end = kv.get_double("t_end", 1.0);
    cfg.cfl_safety = kv.get_double("cfl_safety", 0.9);
    cfg.n_snapshots = kv.get_size("snapshots", 81);
    cfg.cross_check_interval = kv.get_size("cross_check_interval", 100);
    if (kv.has("fixed_dt")) cfg.fixed_dt = kv.get_double("fixed_dt", 0.0);

    const std::string u0 = kv.get_string("u0.kind", "compact_bump");
    if (u0 == "compact_bump")
        cfg.u0_kind = U0Kind::CompactBump;
    else if (u0 == "right_half_line")
        cfg.u0_kind = U0Kind::RightHalfLine;
    else if (u0 == "constant")
        cfg.u0_kind = U0Kind::Constant;
    else
        throw ConfigError("u0.kind must be compact_bump | right_half_line | constant, got '" +
                          u0 + "'");
    cfg.u0_amplitude = kv.get_double("u0.amplitude", 1.0);
    cfg.u0_lo = kv.get_double("u0.support_lo", -5.0);
    cfg.u0_hi = kv.get_double("u0.support_hi", 5.0);

    const std::string frame = kv.get_string("frame", "lab");
    if (frame == "lab")
        cfg.frame = Frame::Lab;
    else if (frame == "comoving")
        cfg.frame = Frame::Comoving;
    else
        throw ConfigError("frame must be lab | comoving, got '" + frame + "'");

    cfg.front_level_factor = kv.get_double("front_level_factor", 0.01);
    cfg.fit_window = kv.get_double("fit_window", 0.5);

    const auto unused = kv.unused_keys();
    if (!unused.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unused) msg += " '" + k + "'";
        throw ConfigError(msg);
    }

    cfg.validate(); // throws ConfigError on hard errors
    return cfg;
}

std::string config_echo(const SimConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    switch (cfg.env.kind) {
    case ProfileKind::Constant:
        os << "env.kind = constant\n";
        os << "env.r_peak = " << cfg.env.r_peak << "\n";
        break;
    case ProfileKind::Tanh:
        os << "env.kind = tanh\n";
        os << "env.r_minus = " << cfg.env.r_minus << "\n";
        os << "env.r_plus = " << cfg.env.r_plus << "\n";
        break;
    case ProfileKind::Bump:
        os << "env.kind = bump\n";
        os << "env.r_minus = " << cfg.env.r_minus << "\n";
        os << "env.r_plus = " << cfg.env.r_plus << "\n";
        os << "env.r_peak = " << cfg.env.r_peak << "\n";
        break;
    }
    os << "env.width = " << cfg.env.width << "\n";
    os << "env.center = " << cfg.env.center << "\n";
    os << "env.shift_speed = " << cfg.env.shift_speed << "\n";
    os << "chi = " << cfg.params.chi << "\n";
    os << "nu = " << cfg.params.nu << "\n";
    os << "mu = " << cfg.params.mu << "\n";
    os << "b = " << cfg.params.b << "\n";
    os << "grid.x_min = " << cfg.grid.x_min << "\n";
    os << "grid.x_max = " << cfg.grid.x_max << "\n";
    os << "grid.n = " << cfg.grid.n_nodes << "\n";
    os << "t_end = " << cfg.t_end << "\n";
    os << "cfl_safety = " << cfg.cfl_safety << "\n";
    os << "snapshots = " << cfg.n_snapshots << "\n";
    os << "cross_check_interval = " << cfg.cross_check_interval << "\n";
    if (cfg.fixed_dt) os << "fixed_dt = " << *cfg.fixed_dt << "\n";
    os << "u0.kind = "
       << (cfg.u0_kind == U0Kind::CompactBump
               ? "compact_bump"
               : cfg.u0_kind == U0Kind::RightHalfLine ? "right_half_line" : "constant")
       << "\n";
    os << "u0.amplitude = " << cfg.u0_amplitude << "\n";
    os << "u0.support_lo = " << cfg.u0_lo << "\n";
    os << "u0.support_hi = " << cfg.u0_hi << "\n";
    os << "frame = " << (cfg.frame == Frame::Lab ? "lab" : "comoving") << "\n";
    os << "front_level_factor = " << cfg.front_level_factor << "\n";
    os << "fit_window = " << cfg.fit_window << "\n";
    return os.str();
}

} // namespace kslab
