#pragma once

#include <map>
#include <string>
#include <vector>

#include "tva/datagen.hpp"
#include "tva/params.hpp"
#include "tva/quad.hpp"

namespace tva {

struct Check {
    std::string name;
    int criterion = 0;  // acceptance criterion this check belongs to, 0 if informational
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string relation;  // "abs" |m - e| <= tol, "le" m <= e, "ge" m >= e, "lt" m < e
    bool pass = false;
};

struct Series {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    bool quadrature = false;  // values are phase-space integrals
};

struct ExperimentReport {
    std::string id;
    PhysicalParams params;
    std::vector<Check> checks;
    std::vector<Series> series;
    std::map<std::string, double> info;
    std::vector<std::string> notes;
    double wall_seconds = 0.0;

    bool passed() const;
    void append(const ExperimentReport& other);
};

struct ExperimentOptions {
    PhysicalParams params = canon(2);
    DataSet data = gaussian_phi1();
    std::vector<int> dims;  // empty: each experiment's default
    bool allow_n1 = false;
    QuadratureRule rule;
};

Check check_abs(std::string name, int crit, double measured, double expected, double tol);
Check check_le(std::string name, int crit, double measured, double bound);
Check check_ge(std::string name, int crit, double measured, double bound);
Check check_lt(std::string name, int crit, double measured, double bound);

// Rate-fit times and window shared by the decay experiments.
std::vector<double> default_times();
std::vector<double> default_nus();

ExperimentReport run_roots(const ExperimentOptions& o);
ExperimentReport run_diag(const ExperimentOptions& o);
ExperimentReport run_energy_decay(const ExperimentOptions& o);
ExperimentReport run_potential_rates(const ExperimentOptions& o);
ExperimentReport run_profile_error(const ExperimentOptions& o);
ExperimentReport run_inviscid_sweep(const ExperimentOptions& o);
ExperimentReport run_energy_ineq(const ExperimentOptions& o);
ExperimentReport run_uniform_int(const ExperimentOptions& o);
ExperimentReport run_wkb(const ExperimentOptions& o);

// Reruns the quadrature-based experiments with twice the panels and compares
// every series value.
ExperimentReport run_quadrature_consistency(const ExperimentOptions& o, const ExperimentReport& baseline);

const std::vector<std::string>& experiment_names();

// One subcommand by name, or "all" (every experiment plus the quadrature check).
ExperimentReport run_experiment(const std::string& name, const ExperimentOptions& o);

// Criterion id -> stable check name and pass flag aggregated over its checks.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool present = false, pass = false;
    std::vector<std::string> failing;
};
std::vector<CriterionResult> criteria(const ExperimentReport& r);

}  // namespace tva
