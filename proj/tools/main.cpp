#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "resarray/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;
constexpr int kExitIo = 4;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw resarray::IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Options {
    std::string config_path;
    std::string out_dir;
    std::string format;
    double tol = -1.0;  // <0 means keep config value
};

resarray::ExperimentConfig load(const Options& opt) {
    resarray::ExperimentConfig cfg = resarray::parse_config(read_file(opt.config_path));
    if (!opt.out_dir.empty()) cfg.output.directory = opt.out_dir;
    if (!opt.format.empty()) cfg.output.formats = opt.format;
    if (opt.tol > 0.0) {
        cfg.sweep.zero_mode_tol = opt.tol;
        cfg.spectrum.zero_mode_tol = opt.tol;
    }
    return cfg;
}

void report(const std::vector<resarray::ManifestEntry>& manifest, const std::string& dir) {
    std::cout << "wrote " << manifest.size() << " artifact(s) to " << dir << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonreciprocal two-chain resonator array simulator"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool need_config) {
        if (need_config)
            sub->add_option("--config", opt.config_path, "JSON config file")->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides config)");
        sub->add_option("--format", opt.format, "csv or csv+svg")
            ->check(CLI::IsMember({"csv", "csv+svg"}));
        sub->add_option("--tol", opt.tol, "zero-mode tolerance override");
    };

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, eigenstates and zero modes");
    auto* sweep = app.add_subcommand("sweep", "eigenvalue sweep over t2");
    auto* evolve = app.add_subcommand("evolve", "photon population evolution");
    auto* scan = app.add_subcommand("scan", "driven steady-state frequency scan");
    auto* reproduce = app.add_subcommand("reproduce", "run a bundled figure preset");
    for (auto* sub : {spectrum, sweep, evolve, scan}) add_common(sub, true);
    std::string fig;
    reproduce->add_option("figure", fig, "one of fig2..fig10")->required();
    add_common(reproduce, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        std::vector<resarray::ManifestEntry> manifest;
        std::string dir;
        if (reproduce->parsed()) {
            resarray::OutputBlock out;
            if (!opt.out_dir.empty()) out.directory = opt.out_dir;
            if (!opt.format.empty()) out.formats = opt.format;
            manifest = resarray::reproduce_figure(fig, out);
            dir = out.directory;
        } else {
            resarray::ExperimentConfig cfg = load(opt);
            resarray::Command cmd = resarray::Command::Spectrum;
            if (sweep->parsed()) cmd = resarray::Command::Sweep;
            else if (evolve->parsed()) cmd = resarray::Command::Evolve;
            else if (scan->parsed()) cmd = resarray::Command::Scan;
            manifest = resarray::run_command(cfg, cmd);
            dir = cfg.output.directory;
        }
        report(manifest, dir);
    } catch (const resarray::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const resarray::InputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const resarray::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return kExitCompute;
    }
    return 0;
}
