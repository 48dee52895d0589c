#ifndef RESARRAY_EXPERIMENTS_HPP
#define RESARRAY_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "resarray/config.hpp"

namespace resarray {

enum class Command { Spectrum, Sweep, Evolve, Scan };

struct ManifestEntry {
    std::string path;    // relative to the output directory
    std::string sha256;
};

// Runs one command against the configured model and writes its CSV (and
// optional SVG) artifacts plus manifest.csv. Deterministic: identical
// configs produce byte-identical files.
std::vector<ManifestEntry> run_command(const ExperimentConfig& cfg, Command cmd);

// Figure presets fig2..fig10; bundles the command runs behind each figure's
// panels. Output directory and formats come from `out`.
std::vector<ManifestEntry> reproduce_figure(const std::string& id, const OutputBlock& out);

} // namespace resarray

#endif
