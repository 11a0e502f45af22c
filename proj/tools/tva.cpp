#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tva/config.hpp"
#include "tva/errors.hpp"
#include "tva/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const fs::path& path, const tva::Series& s) {
    std::ofstream f(path, std::ios::binary);
    for (std::size_t j = 0; j < s.columns.size(); ++j) f << (j ? "," : "") << s.columns[j];
    f << "\n";
    for (const auto& row : s.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) f << (j ? "," : "") << num(row[j]);
        f << "\n";
    }
}

ordered_json params_json(const tva::PhysicalParams& p) {
    ordered_json j;
    j["c0"] = p.c0;
    j["gamma"] = p.gamma;
    j["beta"] = p.beta;
    j["nu0"] = p.nu0;
    j["alpha_p"] = p.alpha_p;
    j["D_th"] = p.D_th;
    j["n"] = p.n;
    return j;
}

ordered_json report_json(const tva::ExperimentReport& r, const std::vector<std::string>& files) {
    ordered_json j;
    j["schema"] = 1;
    j["experiment"] = r.id;
    j["params"] = params_json(r.params);
    j["passed"] = r.passed();
    auto& checks = j["checks"] = ordered_json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"criterion", c.criterion},
                          {"measured", c.measured},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"relation", c.relation},
                          {"pass", c.pass}});
    auto& crit = j["criteria"] = ordered_json::array();
    for (const auto& c : tva::criteria(r))
        if (c.present) crit.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"failing", c.failing}});
    j["series"] = files;
    j["info"] = ordered_json::object();
    for (const auto& [k, v] : r.info) j["info"][k] = v;
    j["notes"] = r.notes;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermoviscous acoustics experiments"};
    app.require_subcommand(1);
    std::string config_path, out_dir = "out";
    int n = 0;
    bool allow_n1 = false;
    double panels_scale = 1.0;
    app.add_option("--config", config_path, "key = value parameter file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--n", n, "restrict to one spatial dimension")->check(CLI::Range(1, 16));
    app.add_flag("--allow-n1", allow_n1, "permit n = 1 for the inviscid-limit experiments");
    app.add_option("--panels-scale", panels_scale, "multiplies the quadrature panel count")
        ->check(CLI::PositiveNumber);
    for (const auto& name : tva::experiment_names()) app.add_subcommand(name)->fallthrough();
    app.add_subcommand("all", "every experiment plus the quadrature refinement check")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    tva::ExperimentOptions opts;
    try {
        if (!config_path.empty()) {
            tva::RunConfig cfg = tva::load_config(config_path);
            opts.params = cfg.params;
            if (cfg.data_given) opts.data = cfg.data;
            if (cfg.n_given) opts.dims = {cfg.params.n};
        }
        if (n > 0) {
            opts.dims = {n};
            opts.params.n = n;
        }
        opts.allow_n1 = allow_n1;
        opts.rule.panels_scale = panels_scale;
        tva::validate(opts.params);
    } catch (const tva::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    tva::ExperimentReport rep;
    try {
        rep = tva::run_experiment(sub, opts);
    } catch (const tva::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const tva::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "cannot create " << out_dir << ": " << ec.message() << "\n";
        return 2;
    }
    std::vector<std::string> files;
    for (const auto& s : rep.series) {
        const std::string file = s.name + ".csv";
        write_csv(fs::path(out_dir) / file, s);
        files.push_back(file);
    }
    std::ofstream(fs::path(out_dir) / "summary.json", std::ios::binary) << report_json(rep, files).dump(2) << "\n";
    // kept apart so summary.json is reproducible bit for bit
    std::ofstream(fs::path(out_dir) / "timing.json", std::ios::binary)
        << ordered_json{{"experiment", rep.id}, {"wall_seconds", rep.wall_seconds}}.dump(2) << "\n";

    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " measured=" << num(c.measured) << " " << c.relation
                  << " " << num(c.expected) << (c.relation == "abs" ? " tol=" + num(c.tolerance) : "") << "\n";
    bool ok = true;
    for (const auto& c : rep.checks)
        if (!c.pass) {
            std::cerr << "failed check: " << c.name << "\n";
            ok = false;
        }
    return ok ? 0 : 1;
}
