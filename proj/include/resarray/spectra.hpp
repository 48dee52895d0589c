#ifndef RESARRAY_SPECTRA_HPP
#define RESARRAY_SPECTRA_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "resarray/model.hpp"

namespace resarray {

// Complex eigenvalues sorted by real part (ties by imaginary part).
// Column k of right_vectors pairs with eigenvalues(k), unit 2-norm, phase
// fixed so the largest-magnitude component is real positive.
struct Spectrum {
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd right_vectors;
    double eigvec_condition = 0.0;
};

// Dense non-Hermitian eigendecomposition (balanced Hessenberg + shifted QR
// via LAPACK zgeev). Throws SolverError when the residual bound
// 1e-9 * ||H|| is not met or the iteration fails to converge.
Spectrum eig(const Eigen::MatrixXcd& h);
Spectrum eig(const Hamiltonian& h);

// Inverse participation ratio, sum |psi_j|^4 / (sum |psi_j|^2)^2.
double ipr(const Eigen::VectorXcd& state);

// Indices of modes pinned to zero real energy, |Re E_k| < tol. Purely
// imaginary pairs count; for the defect-free model the count is odd.
std::vector<int> zero_modes(const Spectrum& spec, double tol);

// Interface state generated by the H psi = 0 recursion: supported on the
// a-sites, Q and B-sites, with consecutive ratio -(t1+delta)/(t2-delta)
// toward Q and a mirror-symmetric tail on the other chain. Unit norm.
Eigen::VectorXcd analytic_zero_mode(const ModelParams& p);

// The two exact bound modes of the J1'=J2'=0 limit: one supported on b_N
// and A_1 with opposite signs, one supported on Q alone. Unit norm each.
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> analytic_bound_modes(const ModelParams& p);

struct SweepPoint {
    double t2;
    Eigen::VectorXcd eigenvalues;
    int zero_mode_count;
    double max_abs_imag;
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

// Defect-free eigenvalue sweep over a strictly increasing t2 grid.
SweepResult sweep_t2(const ModelParams& base, const std::vector<double>& grid,
                     double tol);

// Eigenvectors grouped by the site of their largest amplitude: the interface
// resonator Q (type 1), the lateral sites b_N / A_1 (type 2), or elsewhere.
struct ModeClassification {
    std::vector<int> type1;
    std::vector<int> type2;
    std::vector<int> other;
};

ModeClassification classify_localization(const Spectrum& spec, const SiteLayout& layout);

// Diagonal similarity removing the bond asymmetry: each pair (f, b) becomes
// sqrt(f*b). valid is true iff every product is positive, in which case the
// result is Hermitian tridiagonal and isospectral to the input.
std::pair<Eigen::MatrixXcd, bool> symmetrize(const Hamiltonian& h);

} // namespace resarray

#endif
