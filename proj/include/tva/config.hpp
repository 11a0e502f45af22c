#pragma once

#include <iosfwd>
#include <string>

#include "tva/datagen.hpp"
#include "tva/params.hpp"

namespace tva {

struct RunConfig {
    PhysicalParams params;
    DataSet data;             // empty unless the file names any data key
    bool data_given = false;
    bool n_given = false;
};

// Flat "key = value" lines, '#' starts a comment. Parameter keys are the
// PhysicalParams field names (eta_ratio_beta is accepted for beta); data keys
// are <role>.<field> with role in {phi0, phi1, T0} and field in
// {kind, width, amplitude, axis, shift}. Axis is 1-based. Throws ConfigError.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace tva
