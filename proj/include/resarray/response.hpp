#ifndef RESARRAY_RESPONSE_HPP
#define RESARRAY_RESPONSE_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "resarray/model.hpp"

namespace resarray {

// Coherent drive amplitudes, scan frequencies, and the uniform photon loss
// that keeps the driven system stable.
struct DriveSpec {
    std::vector<std::pair<int, std::complex<double>>> drive;
    std::vector<double> omegas;
    double kappa = 0.1;

    static std::vector<std::pair<int, std::complex<double>>> at_interface(const SiteLayout& lay);
    static std::vector<std::pair<int, std::complex<double>>> at_first();
    static std::vector<std::pair<int, std::complex<double>>> at_both_ends(const SiteLayout& lay);
    static std::vector<std::pair<int, std::complex<double>>> at_all(const SiteLayout& lay);

    Eigen::VectorXcd drive_vector(int dim) const;
};

// Steady-state detection intensities |a_site(omega)|^2 per scan frequency.
struct DriveScan {
    std::vector<double> omegas;
    Eigen::MatrixXd intensities;  // rows omega, cols site
    DriveSpec spec;
    ModelParams params;
};

// Linear response a = ((omega + i kappa/2) I - H)^{-1} d. Throws SolverError
// when the system is within condition 1e12 of singular, naming the closest
// eigenvalue.
Eigen::VectorXcd steady_state(const Hamiltonian& h, const DriveSpec& spec, double omega);

// One steady-state solve per grid frequency.
DriveScan drive_scan(const Hamiltonian& h, const DriveSpec& spec);

// omega grid start..stop inclusive with the given step.
std::vector<double> frequency_grid(double start, double stop, double step);

} // namespace resarray

#endif
