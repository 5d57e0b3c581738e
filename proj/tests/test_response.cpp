#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "aggspec/errors.hpp"
#include "aggspec/hamiltonian.hpp"
#include "aggspec/monomer.hpp"
#include "aggspec/response.hpp"

using namespace aggspec;
using Cplx = std::complex<double>;

namespace {

MonomerModel unit_overlap_model() {
    return make_model({0.0, 0.16}, {2.3}, Eigen::MatrixXd::Ones(2, 1));
}

}  // namespace

TEST_CASE("dipole vector carries the collective factor and the zero-row overlaps") {
    const MonomerModel lam = unit_overlap_model();
    const Eigen::VectorXd d1 = dipole_vector(lam, {1, -0.06, 0.01, 1e-5});
    REQUIRE(d1.size() == 1);
    CHECK(d1(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const MonomerModel undisplaced = build_model({0.16, 0.0, 2.3, 2, 2}, 1.7);
    const Eigen::VectorXd d2 = dipole_vector(undisplaced, {3, 0.0, 0.01, 0.0});
    CHECK(d2(0) == doctest::Approx(2.0 * 1.7).epsilon(1e-15));
    CHECK(d2(1) == 0.0);
    CHECK(d2(2) == 0.0);

    const MonomerModel displaced = build_model({0.16, 0.5, 2.3, 1, 2}, 2.0);
    const Eigen::VectorXd d3 = dipole_vector(displaced, {9, 0.0, 0.01, 0.0});
    const double pre = std::sqrt(10.0) * 2.0 * std::exp(-0.25);
    CHECK(d3(0) == doctest::Approx(pre).epsilon(1e-14));
    CHECK(d3(1) == doctest::Approx(pre * std::sqrt(0.5)).epsilon(1e-14));
    CHECK(d3(2) == doctest::Approx(pre * 0.5 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("zeroth-order truncation of the unit-overlap aggregate is one shifted line") {
    const MonomerModel model = unit_overlap_model();
    const AggregateConfig cfg{50, 0.32 / 50.0, 0.01, 1e-5};
    const FrequencyGrid grid{2.2, 3.2, 401};
    const Eigen::VectorXd sigma = spectrum_column(model, cfg, grid, 0);
    const Eigen::VectorXd cpa = cpa_spectrum(model, cfg, grid);
    const double nj = cfg.n_ground * cfg.coupling;
    for (int i = 0; i < grid.count; ++i) {
        const Cplx s0 = 1.0 / Cplx(grid.at(i) - 2.3 - nj, cfg.gamma / 2.0);
        const double expected = -51.0 * s0.imag();
        CHECK(sigma(i) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(cpa(i) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("zeroth-order truncation coincides with the closed form for displaced monomers") {
    const MonomerModel model = build_model({0.16, 0.5, 2.3, 2, 2});
    const AggregateConfig cfg{7, -0.02, 0.01, 1e-5};
    const FrequencyGrid grid{1.8, 3.2, 301};
    const Eigen::VectorXd truncated = spectrum_column(model, cfg, grid, 0);
    const Eigen::VectorXd closed = cpa_spectrum(model, cfg, grid);
    const double scale = closed.cwiseAbs().maxCoeff();
    CHECK((truncated - closed).cwiseAbs().maxCoeff() / scale < 1e-10);
}

TEST_CASE("two-monomer spectrum equals the scalar continued fraction") {
    const MonomerModel model = unit_overlap_model();
    const AggregateConfig cfg{1, -0.06, 0.01, 1e-5};
    const FrequencyGrid grid{1.8, 2.9, 221};
    const Eigen::VectorXd sigma = spectrum_column(model, cfg, grid, -1);
    for (int i = 0; i < grid.count; ++i) {
        const double w = grid.at(i);
        const Cplx tail = 0.0036 / Cplx(w - 2.40, 0.005005);
        const Cplx s0 = 1.0 / (Cplx(w - 2.24, 0.005) - tail);
        CHECK(sigma(i) == doctest::Approx(-2.0 * s0.imag()).epsilon(1e-12));
    }
}

TEST_CASE("recursive and dense resolvent evaluations agree") {
    struct Shape {
        int n;
        int m_g;
        int m_e;
        double s;
    };
    for (const Shape& shape : {Shape{10, 1, 1, 0.5}, Shape{20, 2, 2, 0.5}, Shape{10, 2, 1, 1.0}}) {
        const MonomerModel model = build_model({0.16, shape.s, 2.3, shape.m_g, shape.m_e});
        const AggregateConfig cfg{shape.n, -0.03, 0.01, 1e-5};
        const BlockChain chain = build_chain(model, cfg, shape.n);
        for (double w : {2.1, 2.3, 2.46}) {
            const Eigen::MatrixXcd fast = resolvent_k0(w, chain, cfg);
            const Eigen::MatrixXcd slow = resolvent_k0_dense(w, chain, cfg);
            CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("intensity is nonnegative across the grid") {
    const MonomerModel model = build_model({0.16, 0.5, 2.3, 2, 2});
    const AggregateConfig cfg{6, -0.05, 0.01, 1e-5};
    const FrequencyGrid grid{1.5, 3.4, 501};
    const Eigen::VectorXd sigma = spectrum_column(model, cfg, grid, -1);
    CHECK(sigma.minCoeff() > 0.0);
}

TEST_CASE("uncoupled aggregates absorb like N+1 independent monomers") {
    const MonomerModel model = build_model({0.16, 0.5, 2.3, 2, 2}, 1.3);
    const AggregateConfig cfg{5, 0.0, 0.02, 0.003};
    const FrequencyGrid grid{1.9, 3.1, 101};
    const Eigen::VectorXd sigma = spectrum_column(model, cfg, grid, -1);
    for (int i = 0; i < grid.count; ++i) {
        const double single = -(1.3 * 1.3) * monomer_green(model, grid.at(i), cfg.gamma).imag();
        CHECK(sigma(i) == doctest::Approx(6.0 * single).epsilon(1e-12));
    }
}

TEST_CASE("sector truncation saturates once every molecule can hold a quantum") {
    const MonomerModel model = build_model({0.16, 0.5, 2.3, 2, 1});
    const AggregateConfig cfg{4, -0.04, 0.01, 1e-5};
    const FrequencyGrid grid{1.9, 3.1, 101};
    const Eigen::VectorXd at_n = spectrum_column(model, cfg, grid, 4);
    const Eigen::VectorXd beyond = spectrum_column(model, cfg, grid, 11);
    const Eigen::VectorXd full = spectrum_column(model, cfg, grid, -1);
    CHECK((at_n - beyond).cwiseAbs().maxCoeff() == 0.0);
    CHECK((at_n - full).cwiseAbs().maxCoeff() == 0.0);

    // Coarser truncations approach the converged result from below in error.
    double prev = (spectrum_column(model, cfg, grid, 0) - full).cwiseAbs().maxCoeff();
    for (int k = 1; k <= 3; ++k) {
        const double err = (spectrum_column(model, cfg, grid, k) - full).cwiseAbs().maxCoeff();
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("threaded evaluation reproduces the serial column") {
    const MonomerModel model = build_model({0.16, 0.5, 2.3, 1, 1});
    const AggregateConfig cfg{8, -0.02, 0.01, 1e-5};
    const FrequencyGrid grid{1.9, 3.1, 97};
    const Eigen::VectorXd serial = spectrum_column(model, cfg, grid, -1, 1);
    const Eigen::VectorXd threaded = spectrum_column(model, cfg, grid, -1, 4);
    CHECK((serial - threaded).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("integrated intensity matches the dipole norm on a wide window") {
    const MonomerModel model = unit_overlap_model();
    const AggregateConfig cfg{1, -0.06, 0.01, 1e-5};
    const FrequencyGrid wide{1.3, 3.3, 4001};
    const Eigen::VectorXd sigma = spectrum_column(model, cfg, wide, -1);
    const SumRuleReport report = sum_rule(sigma, wide, model, cfg);
    CHECK(report.deficit < 2e-2);
    CHECK(report.edge_weight_fraction < 1e-2);

    const FrequencyGrid clipped{2.20, 2.30, 201};
    const Eigen::VectorXd narrow = spectrum_column(model, cfg, clipped, -1);
    const SumRuleReport bad = sum_rule(narrow, clipped, model, cfg);
    CHECK(bad.edge_weight_fraction > 1e-2);
}

TEST_CASE("the all-to-all surrogate keeps the per-monomer coupling sum") {
    CHECK(surrogate_coupling(0.12) == 0.12);
    CHECK(surrogate_coupling(-0.5) == -0.5);
    CHECK(surrogate_coupling(2.0 * -0.06) == -0.12);
    CHECK_THROWS_AS(surrogate_coupling(std::nan("")), std::invalid_argument);
}

TEST_CASE("a sweep row is exactly the spectrum at that coupling") {
    const MonomerModel model = build_model({0.16, 0.5, 2.3, 1, 3});
    const AggregateConfig cfg{100, 0.0, 0.002, 1e-5};
    const FrequencyGrid grid{1.7, 2.9, 201};
    const SweepSurface surface = sweep(model, cfg, {-1.5, 0.5}, 0.16, grid, 0);
    REQUIRE(surface.intensity.rows() == 2);
    REQUIRE(surface.coupling_axis.size() == 2);

    AggregateConfig at_point = cfg;
    at_point.coupling = -1.5 * 0.16 / 100.0;
    const Eigen::VectorXd direct = spectrum_column(model, at_point, grid, 0);
    CHECK((surface.intensity.row(0).transpose() - direct).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(sweep(model, cfg, {}, 0.16, grid, 0), std::invalid_argument);
    CHECK_THROWS_AS(sweep(model, cfg, {1.0}, 0.0, grid, 0), std::invalid_argument);
}

TEST_CASE("without vibronic structure the swept peak tracks the collective coupling") {
    const MonomerModel bare = build_model({0.16, 0.0, 2.3, 0, 0});
    const AggregateConfig cfg{10, 0.0, 0.002, 1e-5};
    const FrequencyGrid grid{1.7, 2.9, 2401};
    const SweepSurface surface = sweep(bare, cfg, {-2.0, -1.0, 0.0, 1.0, 2.0}, 0.16, grid, 0);
    for (int i = 0; i < 5; ++i) {
        const std::vector<Peak> peaks =
            find_peaks(surface.intensity.row(i).transpose(), surface.grid);
        REQUIRE(peaks.size() == 1);
        CHECK(std::abs(peaks[0].position - (2.3 + surface.coupling_axis[i] * 0.16)) < 1e-3);
    }
}

TEST_CASE("peak extraction refines positions and drops sub-threshold bumps") {
    // Grid offset so no line center falls on a grid point; the third bump is
    // far enough out that the big tails stay under the stock threshold there.
    const FrequencyGrid grid{1.497, 3.997, 1001};
    Eigen::VectorXd sigma(grid.count);
    auto lorentzian = [](double w, double p, double hw, double h) {
        return h * hw * hw / ((w - p) * (w - p) + hw * hw);
    };
    for (int i = 0; i < grid.count; ++i) {
        const double w = grid.at(i);
        sigma(i) = lorentzian(w, 2.0, 0.01, 1.0) + lorentzian(w, 2.5, 0.01, 0.5) +
                   lorentzian(w, 3.8, 0.01, 2e-5);
    }
    const std::vector<Peak> peaks = find_peaks(sigma, grid);
    REQUIRE(peaks.size() == 2);
    CHECK(std::abs(peaks[0].position - 2.0) < 5e-4);
    CHECK(std::abs(peaks[1].position - 2.5) < 5e-4);
    CHECK(peaks[0].height == doctest::Approx(1.0).epsilon(5e-2));
    CHECK(peaks[1].height == doctest::Approx(0.5).epsilon(5e-2));
    const std::vector<Peak> with_bump = find_peaks(sigma, grid, 1e-6);
    REQUIRE(with_bump.size() == 3);
    CHECK(std::abs(with_bump[2].position - 3.8) < 5e-3);
}

TEST_CASE("grid validation rejects degenerate windows") {
    const FrequencyGrid reversed{2.0, 1.0, 100};
    CHECK_THROWS_AS(reversed.validate(), std::invalid_argument);
    const FrequencyGrid single_point{1.0, 2.0, 1};
    CHECK_THROWS_AS(single_point.validate(), std::invalid_argument);
    const MonomerModel model = unit_overlap_model();
    CHECK_THROWS_AS(spectrum_column(model, {1, -0.06, 0.01, 1e-5}, {2.0, 1.0, 100}, -1),
                    std::invalid_argument);
}

TEST_CASE("vanishing linewidth on resonance reports a singular block") {
    const MonomerModel model = unit_overlap_model();
    const AggregateConfig cfg{1, -0.06, 1e-320, 0.0};
    const BlockChain chain = build_chain(model, cfg, 0);
    const double on_resonance = chain.diag_blocks[0](0, 0);
    CHECK_THROWS_AS(resolvent_k0(on_resonance, chain, cfg), NumericalError);
}
