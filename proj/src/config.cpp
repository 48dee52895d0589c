#include "resarray/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace resarray {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& known, std::vector<std::string>& issues) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key))
            issues.push_back(path + key + ": unknown key");
}

bool get_number(const json& obj, const std::string& path, const std::string& key,
                double& out, std::vector<std::string>& issues, bool required = false) {
    if (!obj.contains(key)) {
        if (required) issues.push_back(path + key + ": missing required key");
        return false;
    }
    if (!obj[key].is_number()) {
        issues.push_back(path + key + ": expected a number");
        return false;
    }
    out = obj[key].get<double>();
    return true;
}

bool get_int(const json& obj, const std::string& path, const std::string& key,
             int& out, std::vector<std::string>& issues, bool required = false) {
    if (!obj.contains(key)) {
        if (required) issues.push_back(path + key + ": missing required key");
        return false;
    }
    if (!obj[key].is_number_integer()) {
        issues.push_back(path + key + ": expected an integer");
        return false;
    }
    out = obj[key].get<int>();
    return true;
}

bool get_string(const json& obj, const std::string& path, const std::string& key,
                std::string& out, std::vector<std::string>& issues) {
    if (!obj.contains(key)) return false;
    if (!obj[key].is_string()) {
        issues.push_back(path + key + ": expected a string");
        return false;
    }
    out = obj[key].get<std::string>();
    return true;
}

void parse_model(const json& j, ExperimentConfig& cfg, std::vector<std::string>& issues) {
    if (!j.contains("model")) {
        issues.push_back("model: missing required block");
        return;
    }
    const json& m = j["model"];
    if (!m.is_object()) {
        issues.push_back("model: expected an object");
        return;
    }
    reject_unknown(m, "model.", {"t1", "t2", "delta", "cells_per_chain"}, issues);
    get_number(m, "model.", "t1", cfg.model.t1, issues, true);
    get_number(m, "model.", "t2", cfg.model.t2, issues, true);
    get_number(m, "model.", "delta", cfg.model.delta, issues, true);
    get_int(m, "model.", "cells_per_chain", cfg.model.cells_per_chain, issues, true);
    if (!(cfg.model.t1 > 0.0)) issues.push_back("model.t1: must be positive");
    if (cfg.model.cells_per_chain < 1) issues.push_back("model.cells_per_chain: must be >= 1");
}

void parse_defects(const json& j, ExperimentConfig& cfg, std::vector<std::string>& issues) {
    if (!j.contains("defects")) return;
    if (!j["defects"].is_array()) {
        issues.push_back("defects: expected an array");
        return;
    }
    int total = 4 * cfg.model.cells_per_chain + 1;
    int i = 0;
    for (const auto& d : j["defects"]) {
        std::string path = "defects[" + std::to_string(i++) + "].";
        if (!d.is_object()) {
            issues.push_back(path + ": expected an object");
            continue;
        }
        reject_unknown(d, path, {"site", "strength"}, issues);
        Defect def{0, 0.0};
        get_int(d, path, "site", def.site, issues, true);
        get_number(d, path, "strength", def.strength, issues, true);
        if (def.site < 0 || def.site >= total)
            issues.push_back(path + "site: out of range [0, " + std::to_string(total) + ")");
        cfg.defects.push_back(def);
    }
}

void parse_sweep(const json& s, ExperimentConfig& cfg, std::vector<std::string>& issues) {
    reject_unknown(s, "sweep.", {"t2_start", "t2_stop", "t2_step", "zero_mode_tol"}, issues);
    get_number(s, "sweep.", "t2_start", cfg.sweep.t2_start, issues);
    get_number(s, "sweep.", "t2_stop", cfg.sweep.t2_stop, issues);
    get_number(s, "sweep.", "t2_step", cfg.sweep.t2_step, issues);
    get_number(s, "sweep.", "zero_mode_tol", cfg.sweep.zero_mode_tol, issues);
    if (!(cfg.sweep.t2_step > 0.0)) issues.push_back("sweep.t2_step: must be positive");
    if (!(cfg.sweep.t2_stop >= cfg.sweep.t2_start))
        issues.push_back("sweep.t2_stop: must be >= sweep.t2_start");
    if (!(cfg.sweep.zero_mode_tol > 0.0)) issues.push_back("sweep.zero_mode_tol: must be positive");
}

void parse_evolve(const json& e, ExperimentConfig& cfg, std::vector<std::string>& issues) {
    reject_unknown(e, "evolve.",
                   {"t_max", "samples", "excitation", "custom_excitation", "pulse_prominence"},
                   issues);
    get_number(e, "evolve.", "t_max", cfg.evolve.t_max, issues);
    get_int(e, "evolve.", "samples", cfg.evolve.samples, issues);
    get_string(e, "evolve.", "excitation", cfg.evolve.excitation, issues);
    get_number(e, "evolve.", "pulse_prominence", cfg.evolve.pulse_prominence, issues);
    if (!(cfg.evolve.t_max > 0.0)) issues.push_back("evolve.t_max: must be positive");
    if (cfg.evolve.samples < 2) issues.push_back("evolve.samples: must be >= 2");
    static const std::set<std::string> kinds{"interface", "first", "ends", "uniform", "custom"};
    if (!kinds.count(cfg.evolve.excitation))
        issues.push_back("evolve.excitation: unknown preset '" + cfg.evolve.excitation + "'");
    if (e.contains("custom_excitation")) {
        if (!e["custom_excitation"].is_array()) {
            issues.push_back("evolve.custom_excitation: expected an array");
        } else {
            int i = 0;
            for (const auto& entry : e["custom_excitation"]) {
                std::string path = "evolve.custom_excitation[" + std::to_string(i++) + "].";
                if (!entry.is_object()) {
                    issues.push_back(path + ": expected an object");
                    continue;
                }
                reject_unknown(entry, path, {"site", "re", "im"}, issues);
                int site = 0;
                double re = 0.0, im = 0.0;
                get_int(entry, path, "site", site, issues, true);
                get_number(entry, path, "re", re, issues, true);
                get_number(entry, path, "im", im, issues);
                cfg.evolve.custom_excitation.emplace_back(site, std::complex<double>(re, im));
            }
        }
    }
    if (cfg.evolve.excitation == "custom" && cfg.evolve.custom_excitation.empty())
        issues.push_back("evolve.custom_excitation: required for excitation 'custom'");
}

void parse_scan(const json& s, ExperimentConfig& cfg, std::vector<std::string>& issues) {
    reject_unknown(s, "scan.", {"omega_start", "omega_stop", "omega_step", "kappa", "drive"},
                   issues);
    get_number(s, "scan.", "omega_start", cfg.scan.omega_start, issues);
    get_number(s, "scan.", "omega_stop", cfg.scan.omega_stop, issues);
    get_number(s, "scan.", "omega_step", cfg.scan.omega_step, issues);
    get_number(s, "scan.", "kappa", cfg.scan.kappa, issues);
    get_string(s, "scan.", "drive", cfg.scan.drive, issues);
    if (!(cfg.scan.omega_step > 0.0)) issues.push_back("scan.omega_step: must be positive");
    if (!(cfg.scan.omega_stop >= cfg.scan.omega_start))
        issues.push_back("scan.omega_stop: must be >= scan.omega_start");
    if (!(cfg.scan.kappa > 0.0)) issues.push_back("scan.kappa: must be positive");
    static const std::set<std::string> kinds{"interface", "first", "ends", "all"};
    if (!kinds.count(cfg.scan.drive))
        issues.push_back("scan.drive: unknown preset '" + cfg.scan.drive + "'");
}

void parse_output(const json& o, ExperimentConfig& cfg, std::vector<std::string>& issues) {
    reject_unknown(o, "output.", {"directory", "formats"}, issues);
    get_string(o, "output.", "directory", cfg.output.directory, issues);
    get_string(o, "output.", "formats", cfg.output.formats, issues);
    if (cfg.output.formats != "csv" && cfg.output.formats != "csv+svg")
        issues.push_back("output.formats: must be 'csv' or 'csv+svg'");
    if (cfg.output.directory.empty()) issues.push_back("output.directory: must be nonempty");
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("syntax error: ") + e.what()});
    }
    std::vector<std::string> issues;
    if (!j.is_object()) throw ConfigError({"top level: expected an object"});

    ExperimentConfig cfg;
    reject_unknown(j, "", {"model", "defects", "sweep", "evolve", "scan", "spectrum", "output"},
                   issues);
    parse_model(j, cfg, issues);
    parse_defects(j, cfg, issues);
    if (j.contains("sweep")) {
        if (j["sweep"].is_object()) parse_sweep(j["sweep"], cfg, issues);
        else issues.push_back("sweep: expected an object");
    }
    if (j.contains("evolve")) {
        if (j["evolve"].is_object()) parse_evolve(j["evolve"], cfg, issues);
        else issues.push_back("evolve: expected an object");
    }
    if (j.contains("scan")) {
        if (j["scan"].is_object()) parse_scan(j["scan"], cfg, issues);
        else issues.push_back("scan: expected an object");
    }
    if (j.contains("spectrum")) {
        if (j["spectrum"].is_object()) {
            reject_unknown(j["spectrum"], "spectrum.", {"zero_mode_tol"}, issues);
            get_number(j["spectrum"], "spectrum.", "zero_mode_tol",
                       cfg.spectrum.zero_mode_tol, issues);
            if (!(cfg.spectrum.zero_mode_tol > 0.0))
                issues.push_back("spectrum.zero_mode_tol: must be positive");
        } else {
            issues.push_back("spectrum: expected an object");
        }
    }
    if (j.contains("output")) {
        if (j["output"].is_object()) parse_output(j["output"], cfg, issues);
        else issues.push_back("output: expected an object");
    }
    if (!issues.empty()) throw ConfigError(issues);
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json j;
    j["model"] = {{"t1", cfg.model.t1},
                  {"t2", cfg.model.t2},
                  {"delta", cfg.model.delta},
                  {"cells_per_chain", cfg.model.cells_per_chain}};
    j["defects"] = json::array();
    for (const auto& d : cfg.defects)
        j["defects"].push_back({{"site", d.site}, {"strength", d.strength}});
    j["sweep"] = {{"t2_start", cfg.sweep.t2_start},
                  {"t2_stop", cfg.sweep.t2_stop},
                  {"t2_step", cfg.sweep.t2_step},
                  {"zero_mode_tol", cfg.sweep.zero_mode_tol}};
    j["evolve"] = {{"t_max", cfg.evolve.t_max},
                   {"samples", cfg.evolve.samples},
                   {"excitation", cfg.evolve.excitation},
                   {"pulse_prominence", cfg.evolve.pulse_prominence}};
    if (!cfg.evolve.custom_excitation.empty()) {
        j["evolve"]["custom_excitation"] = json::array();
        for (const auto& [site, amp] : cfg.evolve.custom_excitation)
            j["evolve"]["custom_excitation"].push_back(
                {{"site", site}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    j["scan"] = {{"omega_start", cfg.scan.omega_start},
                 {"omega_stop", cfg.scan.omega_stop},
                 {"omega_step", cfg.scan.omega_step},
                 {"kappa", cfg.scan.kappa},
                 {"drive", cfg.scan.drive}};
    j["spectrum"] = {{"zero_mode_tol", cfg.spectrum.zero_mode_tol}};
    j["output"] = {{"directory", cfg.output.directory}, {"formats", cfg.output.formats}};
    return j.dump(2);
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    auto defects_eq = [](const std::vector<Defect>& x, const std::vector<Defect>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].site != y[i].site || x[i].strength != y[i].strength) return false;
        return true;
    };
    return a.model.t1 == b.model.t1 && a.model.t2 == b.model.t2 &&
           a.model.delta == b.model.delta &&
           a.model.cells_per_chain == b.model.cells_per_chain &&
           defects_eq(a.defects, b.defects) &&
           a.sweep.t2_start == b.sweep.t2_start && a.sweep.t2_stop == b.sweep.t2_stop &&
           a.sweep.t2_step == b.sweep.t2_step &&
           a.sweep.zero_mode_tol == b.sweep.zero_mode_tol &&
           a.evolve.t_max == b.evolve.t_max && a.evolve.samples == b.evolve.samples &&
           a.evolve.excitation == b.evolve.excitation &&
           a.evolve.custom_excitation == b.evolve.custom_excitation &&
           a.evolve.pulse_prominence == b.evolve.pulse_prominence &&
           a.scan.omega_start == b.scan.omega_start && a.scan.omega_stop == b.scan.omega_stop &&
           a.scan.omega_step == b.scan.omega_step && a.scan.kappa == b.scan.kappa &&
           a.scan.drive == b.scan.drive &&
           a.spectrum.zero_mode_tol == b.spectrum.zero_mode_tol &&
           a.output.directory == b.output.directory && a.output.formats == b.output.formats;
}

ExperimentConfig figure_preset(const std::string& id) {
    ExperimentConfig cfg;
    cfg.model = {1.0, 1.0, 0.8, 5};
    if (id == "fig2") {
        cfg.model.t2 = 0.0;  // swept
    } else if (id == "fig3" || id == "fig4") {
        cfg.model.t2 = 0.0;
    } else if (id == "fig5" || id == "fig6") {
        cfg.model.t2 = 0.5;
    } else if (id == "fig7" || id == "fig8" || id == "fig9" || id == "fig10") {
        cfg.model.t2 = 1.0;
    } else {
        throw InputError("unknown figure preset '" + id + "'");
    }
    return cfg;
}

} // namespace resarray
