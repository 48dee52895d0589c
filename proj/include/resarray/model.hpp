#ifndef RESARRAY_MODEL_HPP
#define RESARRAY_MODEL_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "resarray/errors.hpp"

namespace resarray {

// Physical knobs of the two-chain-plus-interface array. t1 is the unit of
// energy; each chain has 2*cells_per_chain resonators.
struct ModelParams {
    double t1 = 1.0;
    double t2 = 1.0;
    double delta = 0.0;
    int cells_per_chain = 5;

    void validate() const;
};

// Nonreciprocal bond strengths derived from the knobs.
struct Couplings {
    double j1;   // t1 + delta
    double j1p;  // t1 - delta
    double j2;   // t2 + delta
    double j2p;  // t2 - delta, may be negative
};

Couplings derive_couplings(const ModelParams& p);

// Asymmetric bond pair (J e^lambda, J e^-lambda) from a reciprocal strength
// and an imaginary gauge field.
std::pair<double, double> gauge_couplings(double j, double lambda);

// Inverse of gauge_couplings; requires fwd*bwd > 0.
std::pair<double, double> gauge_field(double fwd, double bwd);

// Global site indexing: L1 sites a_1,b_1,...,a_N,b_N at 0..2N-1, the
// interface resonator Q at 2N, L2 sites A_1,B_1,...,A_N,B_N at 2N+1..4N.
// Cell indices n are 1-based.
struct SiteLayout {
    int cells = 5;

    int total_sites() const { return 4 * cells + 1; }
    int a(int n) const { return 2 * (n - 1); }
    int b(int n) const { return 2 * (n - 1) + 1; }
    int q() const { return 2 * cells; }
    int cap_a(int n) const { return 2 * cells + 1 + 2 * (n - 1); }
    int cap_b(int n) const { return 2 * cells + 2 + 2 * (n - 1); }

    std::string label(int site) const;
};

// Real on-site energy added to one diagonal entry.
struct Defect {
    int site;
    double strength;
};

// Dense non-Hermitian Hamiltonian over the global site basis.
// Entry convention: matrix(target, source) holds the coefficient of
// target^dag * source, so the term J1 b_n^dag a_n sets matrix(b_n, a_n) = J1.
struct Hamiltonian {
    Eigen::MatrixXcd matrix;
    SiteLayout layout;
    ModelParams params;
    std::vector<Defect> defects;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

Hamiltonian build_hamiltonian(const ModelParams& p,
                              const std::vector<Defect>& defects = {});

// Value-semantics defect insertion; the input Hamiltonian is untouched.
Hamiltonian apply_defect(const Hamiltonian& h, const Defect& d);

} // namespace resarray

#endif
