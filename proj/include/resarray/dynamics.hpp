#ifndef RESARRAY_DYNAMICS_HPP
#define RESARRAY_DYNAMICS_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "resarray/model.hpp"

namespace resarray {

// Initial photon amplitudes; stored entries are normalized to unit 2-norm
// when converted to a state vector.
struct ExcitationSpec {
    std::vector<std::pair<int, std::complex<double>>> entries;

    static ExcitationSpec single(int site);
    static ExcitationSpec interface_site(const SiteLayout& lay);
    static ExcitationSpec first_site();
    static ExcitationSpec both_ends(const SiteLayout& lay);
    static ExcitationSpec uniform(const SiteLayout& lay);

    // Validated, normalized dense state.
    Eigen::VectorXcd to_vector(int dim) const;
};

enum class PropagationMethod { Auto, Spectral, Integrator };

// Non-unitary evolution record. populations(t, site) is the per-slice
// normalized photon population; log_norms tracks the raw state 2-norm on a
// log scale (0 at t=0) so growth never overflows.
struct EvolutionTrace {
    std::vector<double> times;
    Eigen::MatrixXd populations;
    std::vector<double> log_norms;
    PropagationMethod method_used = PropagationMethod::Auto;
};

// State at a single time, split into direction and log magnitude.
struct PropagatedState {
    Eigen::VectorXcd unit;
    double log_norm;
};

// psi(t) = exp(-iHt) psi0 for non-Hermitian H. Auto picks the spectral
// propagator when the eigenvector matrix is well conditioned (< 1e8) and
// falls back to adaptive Dormand-Prince integration otherwise.
EvolutionTrace propagate(const Hamiltonian& h, const ExcitationSpec& psi0,
                         const std::vector<double>& times,
                         PropagationMethod method = PropagationMethod::Auto);

PropagatedState evolve_state(const Hamiltonian& h, const Eigen::VectorXcd& psi0,
                             double t, PropagationMethod method = PropagationMethod::Auto);

// Time-averaged normalized population at the interface resonator Q over
// [w0, w1].
double interface_accumulation(const EvolutionTrace& trace, const SiteLayout& lay,
                              double w0, double w1);

// Times of local maxima of populations(:, site) with at least the given
// prominence. May be empty.
std::vector<double> pulse_times(const EvolutionTrace& trace, int site,
                                double prominence = 0.05);

// apply_defect followed by propagate.
EvolutionTrace defect_robustness_run(const ModelParams& p, const Defect& d,
                                     const ExcitationSpec& psi0,
                                     const std::vector<double>& times);

// samples points spread evenly over [0, t_max], endpoints included.
std::vector<double> uniform_times(double t_max, int samples);

} // namespace resarray

#endif
