#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "resarray/experiments.hpp"
#include "resarray/sha256.hpp"

using namespace resarray;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("resarray_test_" + tag)) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

const char* kMinimal = R"({"model": {"t1": 1.0, "t2": 0.5, "delta": 0.8, "cells_per_chain": 5}})";

} // namespace

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("minimal config picks up all defaults") {
    ExperimentConfig cfg = parse_config(kMinimal);
    CHECK(cfg.model.t1 == 1.0);
    CHECK(cfg.model.t2 == 0.5);
    CHECK(cfg.model.delta == 0.8);
    CHECK(cfg.model.cells_per_chain == 5);
    CHECK(cfg.defects.empty());
    CHECK(cfg.sweep.t2_start == 0.0);
    CHECK(cfg.sweep.t2_stop == 2.0);
    CHECK(cfg.sweep.t2_step == 0.01);
    CHECK(cfg.sweep.zero_mode_tol == 1e-6);
    CHECK(cfg.evolve.t_max == 30.0);
    CHECK(cfg.evolve.samples == 600);
    CHECK(cfg.evolve.excitation == "interface");
    CHECK(cfg.evolve.pulse_prominence == 0.05);
    CHECK(cfg.scan.omega_start == -4.0);
    CHECK(cfg.scan.omega_stop == 4.0);
    CHECK(cfg.scan.omega_step == 0.01);
    CHECK(cfg.scan.kappa == 0.1);
    CHECK(cfg.scan.drive == "interface");
    CHECK(cfg.spectrum.zero_mode_tol == 1e-6);
    CHECK(cfg.output.directory == "out");
    CHECK(cfg.output.formats == "csv");
}

TEST_CASE("missing fields are reported by name") {
    try {
        parse_config(R"({"model": {"t1": 1.0, "t2": 0.5, "cells_per_chain": 5}})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.issues().size() == 1);
        CHECK(e.issues()[0].find("model.delta") != std::string::npos);
    }
}

TEST_CASE("all problems are collected in one pass") {
    const char* bad = R"({
        "model": {"t1": -1.0, "t2": 0.5, "delta": 0.8, "cells_per_chain": 0},
        "sweep": {"t2_step": -0.1, "bogus": 1},
        "scan": {"drive": "sideways"},
        "mystery": {}
    })";
    try {
        parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.issues().size() >= 5);
        std::string all = e.what();
        for (const char* needle :
             {"model.t1", "model.cells_per_chain", "sweep.t2_step", "sweep.bogus",
              "scan.drive", "mystery"})
            CHECK(all.find(needle) != std::string::npos);
    }
}

TEST_CASE("syntax errors surface as ConfigError") {
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(""), ConfigError);
    CHECK_THROWS_AS(parse_config("[1,2,3]"), ConfigError);
}

TEST_CASE("serialize / parse round trip") {
    ExperimentConfig cfg = parse_config(kMinimal);
    cfg.defects.push_back({10, 10.0});
    cfg.evolve.excitation = "custom";
    cfg.evolve.custom_excitation = {{0, {1.0, 0.0}}, {20, {0.0, -1.0}}};
    cfg.scan.drive = "ends";
    cfg.output.formats = "csv+svg";
    ExperimentConfig back = parse_config(serialize_config(cfg));
    CHECK(back == cfg);
    CHECK_FALSE(back == parse_config(kMinimal));
}

TEST_CASE("figure presets") {
    ExperimentConfig f5 = figure_preset("fig5");
    CHECK(f5.model.t1 == 1.0);
    CHECK(f5.model.t2 == 0.5);
    CHECK(f5.model.delta == 0.8);
    CHECK(f5.model.cells_per_chain == 5);
    CHECK(figure_preset("fig2").model.t2 == 0.0);
    CHECK(figure_preset("fig8").model.t2 == 1.0);
    CHECK_THROWS_AS(figure_preset("fig1"), InputError);
    CHECK_THROWS_AS(figure_preset("banana"), InputError);
}

TEST_CASE("run_command writes the documented artifacts and a truthful manifest") {
    TempDir tmp("spectrum");
    ExperimentConfig cfg = parse_config(kMinimal);
    cfg.output.directory = tmp.path.string();
    auto manifest = run_command(cfg, Command::Spectrum);

    std::set<std::string> names;
    for (const auto& e : manifest) names.insert(e.path);
    CHECK(names == std::set<std::string>{"spectrum.csv", "states.csv", "zero_modes.csv"});

    for (const auto& e : manifest) {
        std::string content = slurp(tmp.path / e.path);
        CHECK(sha256_hex(content) == e.sha256);
    }
    std::string mf = slurp(tmp.path / "manifest.csv");
    CHECK(mf.rfind("path,sha256\n", 0) == 0);
    for (const auto& e : manifest)
        CHECK(mf.find(e.path + "," + e.sha256) != std::string::npos);

    // header plus 21 eigenvalue rows
    std::string spec = slurp(tmp.path / "spectrum.csv");
    CHECK(spec.rfind("index,re_E,im_E\n", 0) == 0);
    CHECK(std::count(spec.begin(), spec.end(), '\n') == 22);
}

TEST_CASE("evolve and scan commands emit their schemas") {
    TempDir tmp("evolve");
    ExperimentConfig cfg = parse_config(kMinimal);
    cfg.model.t2 = 1.0;
    cfg.output.directory = tmp.path.string();
    cfg.evolve.samples = 40;
    cfg.evolve.t_max = 5.0;
    run_command(cfg, Command::Evolve);
    std::string ev = slurp(tmp.path / "evolution.csv");
    CHECK(ev.rfind("t,site,population,log_norm\n", 0) == 0);
    CHECK(std::count(ev.begin(), ev.end(), '\n') == 1 + 40 * 21);

    cfg.scan.omega_start = -1.0;
    cfg.scan.omega_stop = 1.0;
    cfg.scan.omega_step = 0.5;
    cfg.output.formats = "csv+svg";
    run_command(cfg, Command::Scan);
    std::string sc = slurp(tmp.path / "scan.csv");
    CHECK(sc.rfind("omega,site,intensity\n", 0) == 0);
    CHECK(std::count(sc.begin(), sc.end(), '\n') == 1 + 5 * 21);
    CHECK(slurp(tmp.path / "scan.svg").find("<svg") != std::string::npos);
}

TEST_CASE("runs are deterministic byte for byte") {
    TempDir a("det_a"), b("det_b");
    ExperimentConfig cfg = parse_config(kMinimal);
    cfg.sweep.t2_stop = 0.2;  // keep it quick
    cfg.output.directory = a.path.string();
    auto m1 = run_command(cfg, Command::Sweep);
    cfg.output.directory = b.path.string();
    auto m2 = run_command(cfg, Command::Sweep);
    REQUIRE(m1.size() == m2.size());
    for (std::size_t i = 0; i < m1.size(); ++i) {
        CHECK(m1[i].path == m2[i].path);
        CHECK(m1[i].sha256 == m2[i].sha256);
    }
}

TEST_CASE("reproduce bundles per figure") {
    TempDir tmp("fig5");
    OutputBlock out;
    out.directory = tmp.path.string();
    auto manifest = reproduce_figure("fig5", out);
    std::set<std::string> names;
    for (const auto& e : manifest) names.insert(e.path);
    CHECK(names.count("spectrum.csv") == 1);
    CHECK(names.count("zero_modes.csv") == 1);

    // three zero modes -> 3 * 21 data rows
    std::string zm = slurp(tmp.path / "zero_modes.csv");
    CHECK(std::count(zm.begin(), zm.end(), '\n') == 1 + 3 * 21);

    CHECK_THROWS_AS(reproduce_figure("fig11", out), InputError);
}

TEST_CASE("fig7 bundle includes the localization classification") {
    TempDir tmp("fig7");
    OutputBlock out;
    out.directory = tmp.path.string();
    reproduce_figure("fig7", out);
    std::string cls = slurp(tmp.path / "classification.csv");
    CHECK(cls.rfind("index,re_E,type\n", 0) == 0);
    CHECK(std::count(cls.begin(), cls.end(), '\n') == 22);
    CHECK(slurp(tmp.path / "notes.txt").find("type1") != std::string::npos);
}
