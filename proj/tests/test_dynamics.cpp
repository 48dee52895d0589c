#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "resarray/dynamics.hpp"
#include "resarray/spectra.hpp"

using namespace resarray;
using Complex = std::complex<double>;

namespace {

ModelParams params(double t1, double t2, double delta, int n) {
    return ModelParams{t1, t2, delta, n};
}

// Reassemble the full state vector from a PropagatedState.
Eigen::VectorXcd assemble(const PropagatedState& s) {
    return s.unit * std::exp(s.log_norm);
}

} // namespace

TEST_CASE("excitation presets") {
    SiteLayout lay{5};
    CHECK(ExcitationSpec::interface_site(lay).entries.size() == 1);
    CHECK(ExcitationSpec::interface_site(lay).entries[0].first == lay.q());
    CHECK(ExcitationSpec::first_site().entries[0].first == 0);
    CHECK(ExcitationSpec::both_ends(lay).entries.size() == 2);
    CHECK(ExcitationSpec::uniform(lay).entries.size() == 21);

    Eigen::VectorXcd v = ExcitationSpec::both_ends(lay).to_vector(21);
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK(std::abs(v(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(v(20)) == doctest::Approx(1.0 / std::sqrt(2.0)));

    CHECK_THROWS_AS(ExcitationSpec::single(3).to_vector(2), InputError);
    CHECK_THROWS_AS(ExcitationSpec{}.to_vector(5), InputError);
    ExcitationSpec zero;
    zero.entries = {{0, Complex(0.0, 0.0)}};
    CHECK_THROWS_AS(zero.to_vector(5), InputError);
}

TEST_CASE("zero Hamiltonian leaves the state alone") {
    ModelParams p = params(1.0, 1.0, 0.8, 2);
    Hamiltonian h = build_hamiltonian(p);
    h.matrix.setZero();
    Eigen::VectorXcd psi0 = ExcitationSpec::single(4).to_vector(h.dim());
    PropagatedState s = evolve_state(h, psi0, 7.3, PropagationMethod::Integrator);
    CHECK((assemble(s) - psi0).norm() < 1e-12);
    CHECK(s.log_norm == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Hermitian evolution conserves the norm") {
    Hamiltonian h = build_hamiltonian(params(1.0, 0.7, 0.0, 4));
    ExcitationSpec x = ExcitationSpec::single(3);
    for (auto method : {PropagationMethod::Spectral, PropagationMethod::Integrator}) {
        EvolutionTrace tr = propagate(h, x, uniform_times(20.0, 101), method);
        for (double ln : tr.log_norms) CHECK(std::abs(ln) < 1e-7);
    }
}

TEST_CASE("population rows are normalized, times echoed, log_norm starts at 0") {
    Hamiltonian h = build_hamiltonian(params(1.0, 1.0, 0.8, 5));
    auto times = uniform_times(30.0, 600);
    CHECK(times.size() == 600);
    CHECK(times.front() == 0.0);
    CHECK(times.back() == doctest::Approx(30.0));
    EvolutionTrace tr = propagate(h, ExcitationSpec::interface_site(h.layout), times);
    REQUIRE(tr.times.size() == times.size());
    REQUIRE(tr.populations.rows() == static_cast<int>(times.size()));
    REQUIRE(tr.populations.cols() == 21);
    CHECK(tr.log_norms[0] == 0.0);
    for (int r = 0; r < tr.populations.rows(); ++r)
        CHECK(std::abs(tr.populations.row(r).sum() - 1.0) < 1e-12);
    CHECK(tr.populations.minCoeff() >= 0.0);
}

TEST_CASE("spectral and integrator propagators agree") {
    Hamiltonian h = build_hamiltonian(params(1.0, 1.0, 0.8, 5));
    Eigen::VectorXcd psi0 = ExcitationSpec::interface_site(h.layout).to_vector(h.dim());
    for (double t : {0.5, 3.0, 12.0}) {
        PropagatedState a = evolve_state(h, psi0, t, PropagationMethod::Spectral);
        PropagatedState b = evolve_state(h, psi0, t, PropagationMethod::Integrator);
        CHECK(std::abs(a.log_norm - b.log_norm) < 1e-6 * std::max(1.0, std::abs(a.log_norm)));
        CHECK((a.unit - b.unit).norm() < 1e-6);
    }
}

TEST_CASE("auto mode falls back to the integrator near the defective point") {
    // all backward couplings vanish: eigenvector matrix is singular
    Hamiltonian h = build_hamiltonian(params(1.0, 1.0, 1.0, 3));
    EvolutionTrace tr = propagate(h, ExcitationSpec::first_site(), uniform_times(5.0, 20));
    CHECK(tr.method_used == PropagationMethod::Integrator);

    Hamiltonian good = build_hamiltonian(params(1.0, 1.0, 0.8, 3));
    EvolutionTrace tr2 = propagate(good, ExcitationSpec::first_site(), uniform_times(5.0, 20));
    CHECK(tr2.method_used == PropagationMethod::Spectral);
}

TEST_CASE("evolution is linear and a semigroup") {
    Hamiltonian h = build_hamiltonian(params(1.0, 0.5, 0.8, 3));
    Eigen::VectorXcd u = ExcitationSpec::single(2).to_vector(h.dim());
    Eigen::VectorXcd v = ExcitationSpec::single(9).to_vector(h.dim());
    const Complex alpha(0.3, -1.1);

    Eigen::VectorXcd lhs = assemble(evolve_state(h, u + alpha * v, 2.0));
    Eigen::VectorXcd rhs = assemble(evolve_state(h, u, 2.0)) +
                           alpha * assemble(evolve_state(h, v, 2.0));
    CHECK((lhs - rhs).norm() < 1e-8 * rhs.norm());

    Eigen::VectorXcd onestep = assemble(evolve_state(h, u, 3.0));
    Eigen::VectorXcd mid = assemble(evolve_state(h, u, 1.2));
    Eigen::VectorXcd twostep = assemble(evolve_state(h, mid, 1.8));
    CHECK((onestep - twostep).norm() < 1e-8 * onestep.norm());
}

TEST_CASE("propagate validates its inputs") {
    Hamiltonian h = build_hamiltonian(params(1.0, 1.0, 0.8, 2));
    ExcitationSpec x = ExcitationSpec::first_site();
    CHECK_THROWS_AS(propagate(h, x, {}), InputError);
    CHECK_THROWS_AS(propagate(h, x, {1.0, 0.5}), InputError);
    CHECK_THROWS_AS(propagate(h, x, {-1.0, 0.5}), InputError);
    CHECK_THROWS_AS(uniform_times(-1.0, 10), InputError);
    CHECK_THROWS_AS(uniform_times(5.0, 1), InputError);
}

TEST_CASE("pulse_times on synthetic traces") {
    EvolutionTrace tr;
    tr.times = uniform_times(30.0, 601);
    tr.populations.resize(601, 2);
    for (int i = 0; i < 601; ++i) {
        double t = tr.times[i];
        tr.populations(i, 0) = 0.5;                               // flat: no pulses
        tr.populations(i, 1) = 0.5 + 0.4 * std::cos(2.0 * t);     // period pi
    }
    CHECK(pulse_times(tr, 0).empty());
    auto peaks = pulse_times(tr, 1, 0.05);
    REQUIRE(peaks.size() == 9);  // interior maxima at k*pi, k=1..9
    for (std::size_t k = 0; k < peaks.size(); ++k)
        CHECK(std::abs(peaks[k] - (k + 1) * M_PI) < 0.06);

    // prominence threshold filters shallow ripples
    for (int i = 0; i < 601; ++i)
        tr.populations(i, 1) = 0.5 + 0.01 * std::cos(2.0 * tr.times[i]);
    CHECK(pulse_times(tr, 1, 0.05).empty());

    CHECK_THROWS_AS(pulse_times(tr, 7), InputError);
}

TEST_CASE("interface_accumulation on a synthetic trace") {
    SiteLayout lay{1};
    EvolutionTrace tr;
    tr.times = uniform_times(10.0, 101);
    tr.populations = Eigen::MatrixXd::Zero(101, 5);
    for (int i = 0; i < 101; ++i) {
        tr.populations(i, lay.q()) = tr.times[i] < 5.0 ? 0.2 : 0.8;
        tr.populations(i, 0) = 1.0 - tr.populations(i, lay.q());
    }
    CHECK(interface_accumulation(tr, lay, 0.0, 4.9) == doctest::Approx(0.2));
    CHECK(interface_accumulation(tr, lay, 5.0, 10.0) == doctest::Approx(0.8));

    CHECK_THROWS_AS(interface_accumulation(tr, lay, 6.0, 3.0), InputError);
    CHECK_THROWS_AS(interface_accumulation(tr, lay, 11.0, 12.0), InputError);
}

TEST_CASE("interface excitation pulses periodically at t2 = 1") {
    // frozen regression: 9 pulses over [0, 30] at prominence 0.05
    Hamiltonian h = build_hamiltonian(params(1.0, 1.0, 0.8, 5));
    EvolutionTrace tr = propagate(h, ExcitationSpec::interface_site(h.layout),
                                  uniform_times(30.0, 600));
    CHECK(pulse_times(tr, h.layout.q(), 0.05).size() == 9);
}

TEST_CASE("edge excitation funnels into the interface") {
    // frozen regression: time-averaged interface population 0.6726 over [5, 30]
    Hamiltonian h = build_hamiltonian(params(1.0, 1.0, 0.8, 5));
    EvolutionTrace tr = propagate(h, ExcitationSpec::first_site(), uniform_times(30.0, 600));
    double acc = interface_accumulation(tr, h.layout, 5.0, 30.0);
    CHECK(acc == doctest::Approx(0.6726).epsilon(2e-3));
    CHECK(acc > 0.5);
}

TEST_CASE("defect robustness regressions") {
    ModelParams p = params(1.0, 1.0, 0.8, 5);
    SiteLayout lay{5};
    auto times = uniform_times(30.0, 600);

    // strong defect on Q kills the pulsing entirely
    EvolutionTrace on_q = defect_robustness_run(p, {lay.q(), 10.0},
                                                ExcitationSpec::interface_site(lay), times);
    CHECK(pulse_times(on_q, lay.q(), 0.05).empty());

    // defect elsewhere barely moves the accumulated interface weight
    EvolutionTrace clean = propagate(build_hamiltonian(p), ExcitationSpec::first_site(), times);
    EvolutionTrace on_b1 = defect_robustness_run(p, {lay.b(1), 10.0},
                                                 ExcitationSpec::first_site(), times);
    double base = interface_accumulation(clean, lay, 5.0, 30.0);
    double pert = interface_accumulation(on_b1, lay, 5.0, 30.0);
    CHECK(pert / base == doctest::Approx(1.195).epsilon(5e-2));
    CHECK(pert > 0.5);

    EvolutionTrace on_a2 = defect_robustness_run(p, {lay.a(2), 10.0},
                                                 ExcitationSpec::first_site(), times);
    CHECK(interface_accumulation(on_a2, lay, 5.0, 30.0) / base ==
          doctest::Approx(0.981).epsilon(5e-2));
}
