#include "tva/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "tva/errors.hpp"

namespace tva {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
        throw ConfigError("bad number for " + key + ": '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("bad integer for " + key + ": '" + v + "'");
    return x;
}

struct PartialSpec {
    DataSpec spec;
    std::vector<double> shift;
};

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    PhysicalParams& p = cfg.params;
    bool gamma_set = false, c0_set = false;
    std::map<std::string, PartialSpec> roles;
    std::map<std::string, bool> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (seen[key]) throw ConfigError("duplicate key " + key);
        seen[key] = true;

        if (const auto dot = key.find('.'); dot != std::string::npos) {
            const std::string role = key.substr(0, dot), field = key.substr(dot + 1);
            if (role != "phi0" && role != "phi1" && role != "T0") throw ConfigError("unknown data role " + role);
            PartialSpec& ps = roles[role];
            if (field == "kind") {
                if (val == "gaussian") ps.spec.kind = DataKind::Gaussian;
                else if (val == "shifted_gaussian") ps.spec.kind = DataKind::ShiftedGaussian;
                else if (val == "odd_gaussian") ps.spec.kind = DataKind::OddGaussian;
                else throw ConfigError("unknown data kind " + val);
            } else if (field == "width") {
                ps.spec.width = to_double(key, val);
            } else if (field == "amplitude") {
                ps.spec.amplitude = to_double(key, val);
            } else if (field == "axis") {
                int a = to_int(key, val);
                if (a < 1) throw ConfigError("axis is 1-based");
                ps.spec.axis = a - 1;
            } else if (field == "shift") {
                std::stringstream ss(val);
                std::string item;
                while (std::getline(ss, item, ',')) ps.shift.push_back(to_double(key, trim(item)));
            } else {
                throw ConfigError("unknown data field " + key);
            }
            continue;
        }

        if (key == "c0") { p.c0 = to_double(key, val); c0_set = true; }
        else if (key == "gamma") { p.gamma = to_double(key, val); gamma_set = true; }
        else if (key == "beta" || key == "eta_ratio_beta") p.beta = to_double(key, val);
        else if (key == "nu0") p.nu0 = to_double(key, val);
        else if (key == "alpha_p") p.alpha_p = to_double(key, val);
        else if (key == "D_th") p.D_th = to_double(key, val);
        else if (key == "n") { p.n = to_int(key, val); cfg.n_given = true; }
        else if (key == "rho0") p.rho0 = to_double(key, val);
        else if (key == "kappaT") p.kappaT = to_double(key, val);
        else if (key == "cP") p.cP = to_double(key, val);
        else if (key == "cV") p.cV = to_double(key, val);
        else throw ConfigError("unknown key " + key);
    }
    if (seen["beta"] && seen["eta_ratio_beta"]) throw ConfigError("beta given twice");
    // primitive quantities determine the derived ones unless those are also given
    if (p.cP && p.cV && !gamma_set) p.gamma = std::nan("");
    if (p.rho0 && p.kappaT && !c0_set) p.c0 = std::nan("");
    try {
        p = resolve(p);
        validate(p);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    for (auto& [role, ps] : roles) {
        DataSpec s = ps.spec;
        s.role = role == "phi0" ? DataRole::Phi0 : role == "phi1" ? DataRole::Phi1 : DataRole::T0;
        if (!(s.width > 0.0)) throw ConfigError(role + ".width must be positive");
        if (s.kind == DataKind::OddGaussian && s.axis >= p.n) throw ConfigError(role + ".axis exceeds the dimension");
        if (s.kind == DataKind::ShiftedGaussian) {
            if (static_cast<int>(ps.shift.size()) != p.n) throw ConfigError(role + ".shift needs n components");
            s.shift = Eigen::Map<Eigen::VectorXd>(ps.shift.data(), p.n);
        } else if (!ps.shift.empty()) {
            throw ConfigError(role + ".shift only applies to shifted_gaussian");
        }
        cfg.data.items.push_back(s);
        cfg.data_given = true;
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config " + path);
    return parse_config(f);
}

}  // namespace tva
