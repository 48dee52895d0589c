#ifndef RESARRAY_CONFIG_HPP
#define RESARRAY_CONFIG_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "resarray/model.hpp"

namespace resarray {

struct SweepRun {
    double t2_start = 0.0;
    double t2_stop = 2.0;
    double t2_step = 0.01;
    double zero_mode_tol = 1e-6;
};

struct EvolveRun {
    double t_max = 30.0;
    int samples = 600;
    std::string excitation = "interface";  // interface | first | ends | uniform | custom
    std::vector<std::pair<int, std::complex<double>>> custom_excitation;
    double pulse_prominence = 0.05;
};

struct ScanRun {
    double omega_start = -4.0;
    double omega_stop = 4.0;
    double omega_step = 0.01;
    double kappa = 0.1;
    std::string drive = "interface";  // interface | first | ends | all
};

struct SpectrumRun {
    double zero_mode_tol = 1e-6;
};

struct OutputBlock {
    std::string directory = "out";
    std::string formats = "csv";  // csv | csv+svg
};

// Full experiment description. The model block is mandatory; every other
// block falls back to the documented defaults.
struct ExperimentConfig {
    ModelParams model;
    std::vector<Defect> defects;
    SweepRun sweep;
    EvolveRun evolve;
    ScanRun scan;
    SpectrumRun spectrum;
    OutputBlock output;
};

// Parses and fully validates a JSON config document. Collects every
// validation issue (unknown keys included) before throwing ConfigError;
// syntax errors carry the parser's position info.
ExperimentConfig parse_config(const std::string& text);

// Inverse of parse_config; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// Parameter sets behind the reproduce presets fig2..fig10
// (t1=1, delta=0.8, N=5; t2 per figure).
ExperimentConfig figure_preset(const std::string& id);

} // namespace resarray

#endif
