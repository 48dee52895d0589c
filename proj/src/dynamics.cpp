#include "resarray/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "resarray/spectra.hpp"

namespace resarray {

namespace {

constexpr double kSpectralCondLimit = 1e8;
constexpr double kIntegratorRelTol = 1e-9;

using Complex = std::complex<double>;

// One Dormand-Prince 4(5) step of dpsi/dt = -iH psi. Returns the 5th-order
// solution and the embedded error estimate.
void dopri_step(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& y, double dt,
                Eigen::VectorXcd& y5, double& err) {
    auto f = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
        return Complex(0.0, -1.0) * (h * v);
    };
    Eigen::VectorXcd k1 = f(y);
    Eigen::VectorXcd k2 = f(y + dt * (1.0 / 5.0) * k1);
    Eigen::VectorXcd k3 = f(y + dt * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    Eigen::VectorXcd k4 = f(y + dt * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    Eigen::VectorXcd k5 = f(y + dt * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                                      64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    Eigen::VectorXcd k6 = f(y + dt * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                                      46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                                      5103.0 / 18656.0 * k5));
    y5 = y + dt * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                   2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
    Eigen::VectorXcd k7 = f(y5);
    Eigen::VectorXcd y4 = y + dt * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                                    393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                                    187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
    err = (y5 - y4).norm();
}

// Integrate from t0 to t1, starting from a unit-norm state. Renormalizes on
// return; the log of the accumulated growth is added to log_norm.
void integrate_segment(const Eigen::MatrixXcd& h, Eigen::VectorXcd& y,
                       double& log_norm, double t0, double t1) {
    double t = t0;
    double span = t1 - t0;
    if (span <= 0.0) return;
    double dt = std::min(span, 0.1);
    const double hnorm = std::max(h.norm(), 1e-30);
    while (t < t1) {
        dt = std::min(dt, t1 - t);
        Eigen::VectorXcd y5;
        double err;
        dopri_step(h, y, dt, y5, err);
        double tol = kIntegratorRelTol * std::max(y.norm(), 1e-300);
        if (!y5.allFinite())
            throw SolverError("propagate: amplitude overflow during integration; "
                              "shorten the sample spacing so states can be renormalized");
        if (err <= tol) {
            t += dt;
            y = y5;
            double n = y.norm();
            if (n > 1e100 || n < 1e-100) {  // keep amplitudes in range mid-segment
                log_norm += std::log(n);
                y /= n;
            }
        }
        double scale = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        dt *= std::clamp(scale, 0.1, 5.0);
        dt = std::max(dt, 1e-12 / hnorm);
    }
    double n = y.norm();
    log_norm += std::log(n);
    y /= n;
}

struct SpectralPropagator {
    Eigen::MatrixXcd vectors;
    Eigen::VectorXcd values;
    Eigen::VectorXcd coeffs;

    SpectralPropagator(const Spectrum& s, const Eigen::VectorXcd& psi0)
        : vectors(s.right_vectors), values(s.eigenvalues) {
        coeffs = vectors.partialPivLu().solve(psi0);
    }

    PropagatedState at(double t) const {
        // Factor the fastest growth out of the exponentials before summing.
        double m = 0.0;
        for (int k = 0; k < values.size(); ++k)
            m = std::max(m, values(k).imag() * t);
        Eigen::VectorXcd scaled(values.size());
        for (int k = 0; k < values.size(); ++k)
            scaled(k) = std::exp(Complex(0.0, -1.0) * values(k) * t - m) * coeffs(k);
        Eigen::VectorXcd psi = vectors * scaled;
        double n = psi.norm();
        if (!(n > 0.0) || !psi.allFinite())
            throw SolverError("propagate: spectral reconstruction lost all amplitude");
        return {psi / n, m + std::log(n)};
    }
};

void check_times(const std::vector<double>& times) {
    if (times.empty()) throw InputError("propagate: empty time grid");
    if (times.front() != 0.0) throw InputError("propagate: time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw InputError("propagate: time grid must be strictly increasing");
}

} // namespace

ExcitationSpec ExcitationSpec::single(int site) { return {{{site, 1.0}}}; }

ExcitationSpec ExcitationSpec::interface_site(const SiteLayout& lay) {
    return single(lay.q());
}

ExcitationSpec ExcitationSpec::first_site() { return single(0); }

ExcitationSpec ExcitationSpec::both_ends(const SiteLayout& lay) {
    return {{{0, 1.0}, {lay.total_sites() - 1, 1.0}}};
}

ExcitationSpec ExcitationSpec::uniform(const SiteLayout& lay) {
    ExcitationSpec s;
    for (int i = 0; i < lay.total_sites(); ++i) s.entries.emplace_back(i, 1.0);
    return s;
}

Eigen::VectorXcd ExcitationSpec::to_vector(int dim) const {
    if (entries.empty()) throw InputError("excitation: no entries");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (const auto& [site, amp] : entries) {
        if (site < 0 || site >= dim)
            throw InputError("excitation: site " + std::to_string(site) + " out of range");
        v(site) += amp;
    }
    double n = v.norm();
    if (n == 0.0) throw InputError("excitation: amplitudes cancel to the zero state");
    return v / n;
}

PropagatedState evolve_state(const Hamiltonian& h, const Eigen::VectorXcd& psi0,
                             double t, PropagationMethod method) {
    if (method == PropagationMethod::Auto || method == PropagationMethod::Spectral) {
        bool spectral_ok = false;
        try {
            Spectrum s = eig(h);
            if (method == PropagationMethod::Spectral || s.eigvec_condition < kSpectralCondLimit) {
                spectral_ok = true;
                return SpectralPropagator(s, psi0).at(t);
            }
        } catch (const SolverError&) {
            if (method == PropagationMethod::Spectral || spectral_ok) throw;
        }
    }
    Eigen::VectorXcd y = psi0;
    double log_norm = std::log(y.norm());
    y /= y.norm();
    integrate_segment(h.matrix, y, log_norm, 0.0, t);
    return {y, log_norm};
}

EvolutionTrace propagate(const Hamiltonian& h, const ExcitationSpec& psi0,
                         const std::vector<double>& times, PropagationMethod method) {
    check_times(times);
    const int dim = h.dim();
    const Eigen::VectorXcd start = psi0.to_vector(dim);

    EvolutionTrace trace;
    trace.times = times;
    trace.populations.resize(static_cast<int>(times.size()), dim);
    trace.log_norms.assign(times.size(), 0.0);

    bool use_spectral = false;
    Spectrum spec;
    if (method != PropagationMethod::Integrator) {
        try {
            spec = eig(h);
            use_spectral = (method == PropagationMethod::Spectral) ||
                           spec.eigvec_condition < kSpectralCondLimit;
        } catch (const SolverError&) {
            if (method == PropagationMethod::Spectral) throw;
        }
    }
    trace.method_used = use_spectral ? PropagationMethod::Spectral
                                     : PropagationMethod::Integrator;

    auto record = [&](std::size_t i, const Eigen::VectorXcd& unit, double log_norm) {
        trace.populations.row(static_cast<int>(i)) = unit.cwiseAbs2().transpose();
        trace.log_norms[i] = log_norm;
    };
    record(0, start, 0.0);  // norms[0] = 1 by construction

    if (use_spectral) {
        SpectralPropagator prop(spec, start);
        for (std::size_t i = 1; i < times.size(); ++i) {
            PropagatedState st = prop.at(times[i]);
            record(i, st.unit, st.log_norm);
        }
    } else {
        Eigen::VectorXcd y = start;
        double log_norm = 0.0;
        for (std::size_t i = 1; i < times.size(); ++i) {
            integrate_segment(h.matrix, y, log_norm, times[i - 1], times[i]);
            record(i, y, log_norm);
        }
    }
    return trace;
}

double interface_accumulation(const EvolutionTrace& trace, const SiteLayout& lay,
                              double w0, double w1) {
    if (!(w0 <= w1) || trace.times.empty() || w0 < trace.times.front() ||
        w1 > trace.times.back())
        throw InputError("interface_accumulation: window outside the trace");
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.times[i] < w0 || trace.times[i] > w1) continue;
        sum += trace.populations(static_cast<int>(i), lay.q());
        ++count;
    }
    if (count == 0) throw InputError("interface_accumulation: window contains no samples");
    return sum / count;
}

std::vector<double> pulse_times(const EvolutionTrace& trace, int site, double prominence) {
    if (site < 0 || site >= trace.populations.cols())
        throw InputError("pulse_times: site out of range");
    const auto p = trace.populations.col(site);
    const int n = static_cast<int>(p.size());
    std::vector<double> out;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(p(i) > p(i - 1) && p(i) >= p(i + 1))) continue;
        // prominence: height above the deeper of the two valleys that
        // separate this peak from higher ground
        double left_min = p(i);
        for (int j = i - 1; j >= 0; --j) {
            if (p(j) > p(i)) break;
            left_min = std::min(left_min, p(j));
        }
        double right_min = p(i);
        for (int j = i + 1; j < n; ++j) {
            if (p(j) > p(i)) break;
            right_min = std::min(right_min, p(j));
        }
        if (p(i) - std::max(left_min, right_min) >= prominence)
            out.push_back(trace.times[static_cast<std::size_t>(i)]);
    }
    return out;
}

EvolutionTrace defect_robustness_run(const ModelParams& p, const Defect& d,
                                     const ExcitationSpec& psi0,
                                     const std::vector<double>& times) {
    return propagate(apply_defect(build_hamiltonian(p), d), psi0, times);
}

std::vector<double> uniform_times(double t_max, int samples) {
    if (samples < 2 || !(t_max > 0.0))
        throw InputError("uniform_times: need t_max > 0 and at least 2 samples");
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        t[static_cast<std::size_t>(i)] = t_max * i / (samples - 1);
    return t;
}

} // namespace resarray
