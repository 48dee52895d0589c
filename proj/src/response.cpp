#include "resarray/response.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "resarray/spectra.hpp"

namespace resarray {

namespace {

using Complex = std::complex<double>;

void check_drive(const DriveSpec& spec) {
    if (spec.drive.empty()) throw InputError("drive spec: empty drive");
    if (!(spec.kappa >= 0.0)) throw InputError("drive spec: kappa must be >= 0");
}

} // namespace

std::vector<std::pair<int, Complex>> DriveSpec::at_interface(const SiteLayout& lay) {
    return {{lay.q(), 1.0}};
}

std::vector<std::pair<int, Complex>> DriveSpec::at_first() { return {{0, 1.0}}; }

std::vector<std::pair<int, Complex>> DriveSpec::at_both_ends(const SiteLayout& lay) {
    return {{0, 1.0}, {lay.total_sites() - 1, 1.0}};
}

std::vector<std::pair<int, Complex>> DriveSpec::at_all(const SiteLayout& lay) {
    std::vector<std::pair<int, Complex>> d;
    for (int i = 0; i < lay.total_sites(); ++i) d.emplace_back(i, 1.0);
    return d;
}

Eigen::VectorXcd DriveSpec::drive_vector(int dim) const {
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(dim);
    for (const auto& [site, amp] : drive) {
        if (site < 0 || site >= dim)
            throw InputError("drive spec: site " + std::to_string(site) + " out of range");
        d(site) += amp;
    }
    return d;
}

Eigen::VectorXcd steady_state(const Hamiltonian& h, const DriveSpec& spec, double omega) {
    check_drive(spec);
    const int m = h.dim();
    const Eigen::VectorXcd d = spec.drive_vector(m);
    const Complex z(omega, spec.kappa / 2.0);
    Eigen::MatrixXcd a = z * Eigen::MatrixXcd::Identity(m, m) - h.matrix;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    Eigen::MatrixXcd inv = lu.inverse();
    double cond = a.norm() * inv.norm();  // Frobenius estimate, plenty for a gate at 1e12
    if (!(cond < 1e12)) {
        Spectrum s = eig(h);
        double best = std::numeric_limits<double>::infinity();
        Complex closest = 0.0;
        for (int k = 0; k < s.eigenvalues.size(); ++k) {
            double dist = std::abs(s.eigenvalues(k) - z);
            if (dist < best) { best = dist; closest = s.eigenvalues(k); }
        }
        std::ostringstream os;
        os << "steady_state: drive at omega=" << omega << " is near-resonant "
           << "(condition " << cond << "); closest eigenvalue " << closest.real();
        if (closest.imag() != 0.0) os << (closest.imag() > 0 ? "+" : "") << closest.imag() << "i";
        throw SolverError(os.str());
    }

    Eigen::VectorXcd x = lu.solve(d);
    x += lu.solve(d - a * x);  // one refinement step tightens the residual
    double res = (a * x - d).norm();
    if (!(res <= 1e-10 * d.norm()))
        throw SolverError("steady_state: residual " + std::to_string(res) +
                          " exceeds 1e-10*||d|| at omega=" + std::to_string(omega));
    return x;
}

DriveScan drive_scan(const Hamiltonian& h, const DriveSpec& spec) {
    check_drive(spec);
    if (spec.omegas.empty()) throw InputError("drive spec: empty frequency grid");
    DriveScan scan;
    scan.omegas = spec.omegas;
    scan.intensities.resize(static_cast<int>(spec.omegas.size()), h.dim());
    scan.spec = spec;
    scan.params = h.params;
    for (std::size_t i = 0; i < spec.omegas.size(); ++i) {
        Eigen::VectorXcd a;
        try {
            a = steady_state(h, spec, spec.omegas[i]);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " [scan point omega=" +
                              std::to_string(spec.omegas[i]) + "]");
        }
        scan.intensities.row(static_cast<int>(i)) = a.cwiseAbs2().transpose();
    }
    return scan;
}

std::vector<double> frequency_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start))
        throw InputError("frequency_grid: need step > 0 and stop >= start");
    std::vector<double> g;
    int n = static_cast<int>(std::round((stop - start) / step));
    for (int i = 0; i <= n; ++i) g.push_back(start + i * step);
    return g;
}

} // namespace resarray
