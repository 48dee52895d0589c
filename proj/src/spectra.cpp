#include "resarray/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>
#include <lapacke.h>

namespace resarray {

namespace {

std::string describe(const ModelParams& p) {
    std::ostringstream os;
    os << "t1=" << p.t1 << " t2=" << p.t2 << " delta=" << p.delta
       << " N=" << p.cells_per_chain;
    return os.str();
}

// Phase convention: largest-magnitude component real positive.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    int imax = 0;
    double amax = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        double a = std::abs(v(i));
        if (a > amax) { amax = a; imax = i; }
    }
    if (amax == 0.0) return;
    v *= std::conj(v(imax)) / std::abs(v(imax));
}

} // namespace

Spectrum eig(const Eigen::MatrixXcd& h) {
    const int n = static_cast<int>(h.rows());
    if (n == 0 || h.rows() != h.cols()) throw InputError("eig: matrix must be square and nonempty");
    if (!h.allFinite()) throw InputError("eig: matrix entries must be finite");

    Eigen::MatrixXcd a = h;  // overwritten by zgeev
    Eigen::VectorXcd w(n);
    Eigen::MatrixXcd vr(n, n);
    int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n,
                             w.data(), nullptr, 1, vr.data(), n);
    if (info != 0)
        throw SolverError("eig: zgeev failed to converge (info=" + std::to_string(info) +
                          ", dim=" + std::to_string(n) + ")");

    // Sort by real part, ties by imaginary part.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (w(i).real() != w(j).real()) return w(i).real() < w(j).real();
        return w(i).imag() < w(j).imag();
    });

    Spectrum s;
    s.eigenvalues.resize(n);
    s.right_vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        s.eigenvalues(k) = w(order[k]);
        s.right_vectors.col(k) = vr.col(order[k]).normalized();
        fix_phase(s.right_vectors.col(k));
    }

    const double hnorm = h.norm();
    const double tol = 1e-9 * std::max(hnorm, 1.0);
    for (int k = 0; k < n; ++k) {
        double res = (h * s.right_vectors.col(k) - s.eigenvalues(k) * s.right_vectors.col(k)).norm();
        if (!(res <= tol))
            throw SolverError("eig: residual " + std::to_string(res) +
                              " exceeds bound for eigenvalue index " + std::to_string(k));
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.right_vectors);
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    s.eigvec_condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    return s;
}

Spectrum eig(const Hamiltonian& h) {
    try {
        return eig(h.matrix);
    } catch (const SolverError& e) {
        throw SolverError(std::string(e.what()) + " [" + describe(h.params) + "]");
    }
}

double ipr(const Eigen::VectorXcd& state) {
    double n2 = state.squaredNorm();
    if (n2 == 0.0) throw InputError("ipr: zero vector");
    double s4 = 0.0;
    for (int i = 0; i < state.size(); ++i) {
        double a2 = std::norm(state(i));
        s4 += a2 * a2;
    }
    return s4 / (n2 * n2);
}

std::vector<int> zero_modes(const Spectrum& spec, double tol) {
    if (!(tol > 0.0)) throw InputError("zero_modes: tol must be positive");
    std::vector<int> idx;
    for (int k = 0; k < spec.eigenvalues.size(); ++k)
        if (std::abs(spec.eigenvalues(k).real()) < tol) idx.push_back(k);
    return idx;
}

Eigen::VectorXcd analytic_zero_mode(const ModelParams& p) {
    const Couplings c = derive_couplings(p);
    if (c.j2p == 0.0)
        throw InputError("analytic_zero_mode: t2 == delta makes the recursion singular");
    const double r = -c.j1 / c.j2p;
    const SiteLayout lay{p.cells_per_chain};
    const int n = lay.cells;

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(lay.total_sites());
    double amp = 1.0;
    for (int k = 1; k <= n; ++k) {
        psi(lay.a(k)) = amp;
        amp *= r;
    }
    psi(lay.q()) = amp;  // r^N
    amp = 1.0;
    for (int k = n; k >= 1; --k) {
        psi(lay.cap_b(k)) = amp;  // mirror of the a-side tail
        amp *= r;
    }
    if (!psi.allFinite())
        throw InputError("analytic_zero_mode: amplitude overflow, |ratio|^N too large");
    return psi.normalized();
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> analytic_bound_modes(const ModelParams& p) {
    const Couplings c = derive_couplings(p);
    if (c.j1p != 0.0)
        throw InputError("analytic_bound_modes: requires J1' = 0, got " + std::to_string(c.j1p));
    if (c.j2p != 0.0)
        throw InputError("analytic_bound_modes: requires J2' = 0, got " + std::to_string(c.j2p));
    const SiteLayout lay{p.cells_per_chain};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Eigen::VectorXcd psi1 = Eigen::VectorXcd::Zero(lay.total_sites());
    psi1(lay.b(lay.cells)) = inv_sqrt2;
    psi1(lay.cap_a(1)) = -inv_sqrt2;  // opposite sign cancels the two J2 links at Q

    Eigen::VectorXcd psi2 = Eigen::VectorXcd::Zero(lay.total_sites());
    psi2(lay.q()) = 1.0;
    return {psi1, psi2};
}

SweepResult sweep_t2(const ModelParams& base, const std::vector<double>& grid, double tol) {
    if (grid.empty()) throw InputError("sweep_t2: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw InputError("sweep_t2: grid must be strictly increasing");

    SweepResult out;
    out.points.reserve(grid.size());
    for (double t2 : grid) {
        ModelParams p = base;
        p.t2 = t2;
        Spectrum s;
        try {
            s = eig(build_hamiltonian(p));
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " [sweep point t2=" + std::to_string(t2) + "]");
        }
        SweepPoint pt;
        pt.t2 = t2;
        pt.eigenvalues = s.eigenvalues;
        pt.zero_mode_count = static_cast<int>(zero_modes(s, tol).size());
        pt.max_abs_imag = s.eigenvalues.imag().cwiseAbs().maxCoeff();
        out.points.push_back(std::move(pt));
    }
    return out;
}

ModeClassification classify_localization(const Spectrum& spec, const SiteLayout& layout) {
    ModeClassification cls;
    const int q = layout.q();
    const int bn = layout.b(layout.cells);
    const int a1 = layout.cap_a(1);
    for (int k = 0; k < spec.right_vectors.cols(); ++k) {
        int imax = 0;
        double amax = std::abs(spec.right_vectors(0, k));
        for (int i = 1; i < spec.right_vectors.rows(); ++i) {
            double a = std::abs(spec.right_vectors(i, k));
            if (a > amax) { amax = a; imax = i; }  // lowest index wins ties
        }
        if (imax == q) cls.type1.push_back(k);
        else if (imax == bn || imax == a1) cls.type2.push_back(k);
        else cls.other.push_back(k);
    }
    return cls;
}

std::pair<Eigen::MatrixXcd, bool> symmetrize(const Hamiltonian& h) {
    const int m = h.dim();
    bool valid = true;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
    out.diagonal() = h.matrix.diagonal();
    for (int k = 0; k + 1 < m; ++k) {
        std::complex<double> f = h.matrix(k + 1, k);
        std::complex<double> b = h.matrix(k, k + 1);
        std::complex<double> prod = f * b;
        if (prod == 0.0)
            throw InputError("symmetrize: zero bond between sites " + std::to_string(k) +
                             " and " + std::to_string(k + 1));
        if (!(prod.real() > 0.0 && prod.imag() == 0.0)) valid = false;
        std::complex<double> hop = std::sqrt(prod);
        out(k + 1, k) = hop;
        out(k, k + 1) = hop;
    }
    return {out, valid};
}

} // namespace resarray
