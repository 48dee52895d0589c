#include "resarray/model.hpp"

#include <cmath>
#include <string>

namespace resarray {

void ModelParams::validate() const {
    std::vector<std::string> bad;
    if (!(t1 > 0.0)) bad.push_back("t1 must be positive (it is the energy unit)");
    if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(delta))
        bad.push_back("couplings must be finite");
    if (cells_per_chain < 1) bad.push_back("cells_per_chain must be >= 1");
    if (!bad.empty()) {
        std::string msg = "invalid model parameters";
        for (const auto& m : bad) msg += ": " + m;
        throw InputError(msg);
    }
}

Couplings derive_couplings(const ModelParams& p) {
    p.validate();
    return {p.t1 + p.delta, p.t1 - p.delta, p.t2 + p.delta, p.t2 - p.delta};
}

std::pair<double, double> gauge_couplings(double j, double lambda) {
    return {j * std::exp(lambda), j * std::exp(-lambda)};
}

std::pair<double, double> gauge_field(double fwd, double bwd) {
    if (!(fwd * bwd > 0.0))
        throw InputError("gauge_field: bond product must be positive");
    return {std::sqrt(fwd * bwd), 0.5 * std::log(fwd / bwd)};
}

std::string SiteLayout::label(int site) const {
    if (site < 0 || site >= total_sites()) throw InputError("label: site out of range");
    if (site == q()) return "Q";
    if (site < q()) {
        int n = site / 2 + 1;
        return (site % 2 == 0 ? "a" : "b") + std::to_string(n);
    }
    int k = site - q() - 1;
    int n = k / 2 + 1;
    return (k % 2 == 0 ? "A" : "B") + std::to_string(n);
}

Hamiltonian build_hamiltonian(const ModelParams& p, const std::vector<Defect>& defects) {
    const Couplings c = derive_couplings(p);
    const SiteLayout lay{p.cells_per_chain};
    const int m = lay.total_sites();
    const int n = lay.cells;

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 1; k <= n; ++k) {
        // L1 intra- and inter-cell bonds
        h(lay.b(k), lay.a(k)) = c.j1;
        h(lay.a(k), lay.b(k)) = c.j1p;
        if (k < n) {
            h(lay.a(k + 1), lay.b(k)) = c.j2;
            h(lay.b(k), lay.a(k + 1)) = c.j2p;
        }
        // L2 carries the mirrored coupling configuration
        h(lay.cap_b(k), lay.cap_a(k)) = c.j1p;
        h(lay.cap_a(k), lay.cap_b(k)) = c.j1;
        if (k < n) {
            h(lay.cap_a(k + 1), lay.cap_b(k)) = c.j2p;
            h(lay.cap_b(k), lay.cap_a(k + 1)) = c.j2;
        }
    }
    // interface resonator Q
    h(lay.q(), lay.b(n)) = c.j2;
    h(lay.b(n), lay.q()) = c.j2p;
    h(lay.cap_a(1), lay.q()) = c.j2p;
    h(lay.q(), lay.cap_a(1)) = c.j2;

    Hamiltonian out{std::move(h), lay, p, {}};
    for (const auto& d : defects) out = apply_defect(out, d);
    return out;
}

Hamiltonian apply_defect(const Hamiltonian& h, const Defect& d) {
    if (d.site < 0 || d.site >= h.dim())
        throw InputError("apply_defect: site " + std::to_string(d.site) +
                         " out of range [0, " + std::to_string(h.dim()) + ")");
    Hamiltonian out = h;
    out.matrix(d.site, d.site) += d.strength;
    out.defects.push_back(d);
    return out;
}

} // namespace resarray
