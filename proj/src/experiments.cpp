#include "resarray/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "resarray/dynamics.hpp"
#include "resarray/response.hpp"
#include "resarray/sha256.hpp"
#include "resarray/spectra.hpp"

namespace resarray {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Collects artifacts in memory, then writes them plus a manifest.
class Emitter {
public:
    explicit Emitter(const std::string& dir) : dir_(dir) {}

    void add(const std::string& name, const std::string& content) {
        files_.emplace_back(name, content);
    }

    std::vector<ManifestEntry> flush() {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory '" + dir_ + "': " + ec.message());

        std::sort(files_.begin(), files_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<ManifestEntry> manifest;
        std::string manifest_csv = "path,sha256\n";
        for (const auto& [name, content] : files_) {
            write_file(name, content);
            ManifestEntry e{name, sha256_hex(content)};
            manifest_csv += e.path + "," + e.sha256 + "\n";
            manifest.push_back(std::move(e));
        }
        write_file("manifest.csv", manifest_csv);
        return manifest;
    }

private:
    void write_file(const std::string& name, const std::string& content) {
        fs::path p = fs::path(dir_) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot open '" + p.string() + "' for writing");
        f << content;
        if (!f) throw IoError("write failed for '" + p.string() + "'");
    }

    std::string dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

std::string spectrum_csv(const Spectrum& s) {
    std::string csv = "index,re_E,im_E\n";
    for (int k = 0; k < s.eigenvalues.size(); ++k)
        csv += std::to_string(k) + "," + fmt(s.eigenvalues(k).real()) + "," +
               fmt(s.eigenvalues(k).imag()) + "\n";
    return csv;
}

std::string states_csv(const Spectrum& s) {
    std::string csv = "index,site,re_psi,im_psi\n";
    for (int k = 0; k < s.right_vectors.cols(); ++k)
        for (int j = 0; j < s.right_vectors.rows(); ++j)
            csv += std::to_string(k) + "," + std::to_string(j) + "," +
                   fmt(s.right_vectors(j, k).real()) + "," +
                   fmt(s.right_vectors(j, k).imag()) + "\n";
    return csv;
}

std::string zero_modes_csv(const Spectrum& s, double tol) {
    std::string csv = "mode,site,population\n";
    for (int m : zero_modes(s, tol))
        for (int j = 0; j < s.right_vectors.rows(); ++j)
            csv += std::to_string(m) + "," + std::to_string(j) + "," +
                   fmt(std::norm(s.right_vectors(j, m))) + "\n";
    return csv;
}

std::string sweep_csv(const SweepResult& r) {
    std::string csv = "t2,index,re_E,im_E\n";
    for (const auto& pt : r.points)
        for (int k = 0; k < pt.eigenvalues.size(); ++k)
            csv += fmt(pt.t2) + "," + std::to_string(k) + "," +
                   fmt(pt.eigenvalues(k).real()) + "," + fmt(pt.eigenvalues(k).imag()) + "\n";
    return csv;
}

std::string sweep_summary_csv(const SweepResult& r) {
    std::string csv = "t2,zero_mode_count,max_abs_imag\n";
    for (const auto& pt : r.points)
        csv += fmt(pt.t2) + "," + std::to_string(pt.zero_mode_count) + "," +
               fmt(pt.max_abs_imag) + "\n";
    return csv;
}

std::string evolution_csv(const EvolutionTrace& tr) {
    std::string csv = "t,site,population,log_norm\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i)
        for (int j = 0; j < tr.populations.cols(); ++j)
            csv += fmt(tr.times[i]) + "," + std::to_string(j) + "," +
                   fmt(tr.populations(static_cast<int>(i), j)) + "," +
                   fmt(tr.log_norms[i]) + "\n";
    return csv;
}

std::string scan_csv(const DriveScan& sc) {
    std::string csv = "omega,site,intensity\n";
    for (std::size_t i = 0; i < sc.omegas.size(); ++i)
        for (int j = 0; j < sc.intensities.cols(); ++j)
            csv += fmt(sc.omegas[i]) + "," + std::to_string(j) + "," +
                   fmt(sc.intensities(static_cast<int>(i), j)) + "\n";
    return csv;
}

// Minimal heatmap: one rect per (column, row) cell, dark-blue-to-yellow ramp.
std::string svg_heatmap(const Eigen::MatrixXd& values, const std::string& xlabel,
                        const std::string& ylabel) {
    const int nx = static_cast<int>(values.rows());
    const int ny = static_cast<int>(values.cols());
    const double vmax = std::max(values.maxCoeff(), 1e-300);
    const int cw = std::max(1, 800 / nx);
    const int ch = std::max(1, 400 / ny);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << nx * cw + 60
        << "\" height=\"" << ny * ch + 40 << "\">\n";
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            double v = values(i, j) / vmax;
            int r = static_cast<int>(253 * v + 30 * (1 - v));
            int g = static_cast<int>(231 * v + 40 * (1 - v));
            int b = static_cast<int>(37 * v + 90 * (1 - v));
            svg << "<rect x=\"" << 40 + i * cw << "\" y=\"" << (ny - 1 - j) * ch
                << "\" width=\"" << cw << "\" height=\"" << ch << "\" fill=\"rgb(" << r
                << "," << g << "," << b << ")\"/>\n";
        }
    }
    svg << "<text x=\"" << 40 + nx * cw / 2 << "\" y=\"" << ny * ch + 25
        << "\" font-size=\"14\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    svg << "<text x=\"15\" y=\"" << ny * ch / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << ny * ch / 2 << ")\">" << ylabel << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::vector<double> sweep_grid(const SweepRun& s) {
    std::vector<double> g;
    int n = static_cast<int>(std::round((s.t2_stop - s.t2_start) / s.t2_step));
    for (int i = 0; i <= n; ++i) g.push_back(s.t2_start + i * s.t2_step);
    return g;
}

ExcitationSpec make_excitation(const EvolveRun& e, const SiteLayout& lay) {
    if (e.excitation == "interface") return ExcitationSpec::interface_site(lay);
    if (e.excitation == "first") return ExcitationSpec::first_site();
    if (e.excitation == "ends") return ExcitationSpec::both_ends(lay);
    if (e.excitation == "uniform") return ExcitationSpec::uniform(lay);
    return ExcitationSpec{e.custom_excitation};
}

DriveSpec make_drive(const ScanRun& s, const SiteLayout& lay) {
    DriveSpec d;
    d.kappa = s.kappa;
    d.omegas = frequency_grid(s.omega_start, s.omega_stop, s.omega_step);
    if (s.drive == "interface") d.drive = DriveSpec::at_interface(lay);
    else if (s.drive == "first") d.drive = DriveSpec::at_first();
    else if (s.drive == "ends") d.drive = DriveSpec::at_both_ends(lay);
    else d.drive = DriveSpec::at_all(lay);
    return d;
}

void emit_evolution(Emitter& em, const std::string& stem, const EvolutionTrace& tr,
                    bool svg) {
    em.add(stem + ".csv", evolution_csv(tr));
    if (svg) em.add(stem + ".svg", svg_heatmap(tr.populations, "time", "site"));
}

} // namespace

std::vector<ManifestEntry> run_command(const ExperimentConfig& cfg, Command cmd) {
    Emitter em(cfg.output.directory);
    const bool svg = cfg.output.formats == "csv+svg";
    const SiteLayout lay{cfg.model.cells_per_chain};

    switch (cmd) {
        case Command::Spectrum: {
            Spectrum s = eig(build_hamiltonian(cfg.model, cfg.defects));
            em.add("spectrum.csv", spectrum_csv(s));
            em.add("states.csv", states_csv(s));
            em.add("zero_modes.csv", zero_modes_csv(s, cfg.spectrum.zero_mode_tol));
            break;
        }
        case Command::Sweep: {
            SweepResult r = sweep_t2(cfg.model, sweep_grid(cfg.sweep), cfg.sweep.zero_mode_tol);
            em.add("sweep.csv", sweep_csv(r));
            em.add("sweep_summary.csv", sweep_summary_csv(r));
            break;
        }
        case Command::Evolve: {
            Hamiltonian h = build_hamiltonian(cfg.model, cfg.defects);
            EvolutionTrace tr = propagate(h, make_excitation(cfg.evolve, lay),
                                          uniform_times(cfg.evolve.t_max, cfg.evolve.samples));
            emit_evolution(em, "evolution", tr, svg);
            break;
        }
        case Command::Scan: {
            Hamiltonian h = build_hamiltonian(cfg.model, cfg.defects);
            DriveScan sc = drive_scan(h, make_drive(cfg.scan, lay));
            em.add("scan.csv", scan_csv(sc));
            if (svg) em.add("scan.svg", svg_heatmap(sc.intensities, "omega", "site"));
            break;
        }
    }
    return em.flush();
}

std::vector<ManifestEntry> reproduce_figure(const std::string& id, const OutputBlock& out) {
    ExperimentConfig cfg = figure_preset(id);
    cfg.output = out;
    Emitter em(out.directory);
    const bool svg = out.formats == "csv+svg";
    const SiteLayout lay{cfg.model.cells_per_chain};
    const auto times = uniform_times(30.0, 600);

    auto evolution_panels = [&](const ModelParams& p) {
        Hamiltonian h = build_hamiltonian(p);
        const char* stems[] = {"evolution_a", "evolution_b", "evolution_c", "evolution_d"};
        ExcitationSpec excs[] = {ExcitationSpec::interface_site(lay), ExcitationSpec::first_site(),
                                 ExcitationSpec::both_ends(lay), ExcitationSpec::uniform(lay)};
        for (int i = 0; i < 4; ++i)
            emit_evolution(em, stems[i], propagate(h, excs[i], times), svg);
    };

    if (id == "fig2") {
        SweepRun sw;  // defaults: t2 in [0, 2] step 0.01
        SweepResult r = sweep_t2(cfg.model, sweep_grid(sw), sw.zero_mode_tol);
        em.add("sweep.csv", sweep_csv(r));
        em.add("sweep_summary.csv", sweep_summary_csv(r));
        std::string ipr_csv = "t2,index,re_E,ipr\n";
        for (double t2 : sweep_grid(sw)) {
            ModelParams p = cfg.model;
            p.t2 = t2;
            Spectrum s = eig(build_hamiltonian(p));
            for (int k = 0; k < s.eigenvalues.size(); ++k)
                ipr_csv += fmt(t2) + "," + std::to_string(k) + "," +
                           fmt(s.eigenvalues(k).real()) + "," +
                           fmt(ipr(s.right_vectors.col(k))) + "\n";
        }
        em.add("ipr.csv", ipr_csv);
    } else if (id == "fig3" || id == "fig5" || id == "fig7") {
        Spectrum s = eig(build_hamiltonian(cfg.model));
        em.add("spectrum.csv", spectrum_csv(s));
        em.add("zero_modes.csv", zero_modes_csv(s, 1e-6));
        if (id == "fig7") {
            ModeClassification cls = classify_localization(s, lay);
            std::string csv = "index,re_E,type\n";
            auto tag = [&](const std::vector<int>& v, const char* name) {
                for (int k : v)
                    csv += std::to_string(k) + "," + fmt(s.eigenvalues(k).real()) + "," +
                           name + "\n";
            };
            tag(cls.type1, "type1");
            tag(cls.type2, "type2");
            tag(cls.other, "other");
            em.add("classification.csv", csv);
            std::ostringstream notes;
            notes << "Eigenstate localization classes, t1=1 delta=0.8 t2=1 N=5.\n"
                  << "type1 (largest amplitude at Q): " << cls.type1.size() << "\n"
                  << "type2 (largest amplitude at b_N or A_1): " << cls.type2.size() << "\n"
                  << "other: " << cls.other.size() << "\n\n"
                  << "The zero mode itself peaks at Q, so the argmax rule counts it as\n"
                  << "type1 and the totals read 11/10/0. A bookkeeping that sets the zero\n"
                  << "mode aside and classifies only the remaining 20 bulk states reads\n"
                  << "10/10 instead; both describe the same spectrum.\n";
            em.add("notes.txt", notes.str());
        }
    } else if (id == "fig4" || id == "fig6" || id == "fig8") {
        evolution_panels(cfg.model);
    } else if (id == "fig9") {
        const double strength = 10.0 * cfg.model.t1;
        struct Panel { const char* stem; int site; ExcitationSpec exc; };
        Panel panels[] = {
            {"evolution_a", lay.q(), ExcitationSpec::interface_site(lay)},
            {"evolution_b", lay.b(1), ExcitationSpec::first_site()},   // 2nd resonator
            {"evolution_c", lay.a(2), ExcitationSpec::first_site()},   // 3rd resonator
            {"evolution_d", lay.b(lay.cells), ExcitationSpec::first_site()},  // 10th resonator
        };
        for (const auto& pn : panels)
            emit_evolution(em, pn.stem,
                           defect_robustness_run(cfg.model, {pn.site, strength}, pn.exc, times),
                           svg);
    } else if (id == "fig10") {
        Hamiltonian h = build_hamiltonian(cfg.model);
        ScanRun base;  // omega in [-4, 4] step 0.01, kappa = 0.1
        const char* stems[] = {"scan_a", "scan_b", "scan_c", "scan_d"};
        const char* drives[] = {"interface", "first", "ends", "all"};
        for (int i = 0; i < 4; ++i) {
            ScanRun run = base;
            run.drive = drives[i];
            DriveScan sc = drive_scan(h, make_drive(run, lay));
            em.add(std::string(stems[i]) + ".csv", scan_csv(sc));
            if (svg) em.add(std::string(stems[i]) + ".svg",
                            svg_heatmap(sc.intensities, "omega", "site"));
        }
    }
    return em.flush();
}

} // namespace resarray
