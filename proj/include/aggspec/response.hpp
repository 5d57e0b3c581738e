#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "aggspec/hamiltonian.hpp"
#include "aggspec/monomer.hpp"

namespace aggspec {

struct FrequencyGrid {
    double start = 0.0;  // eV
    double stop = 0.0;   // eV
    int count = 0;

    void validate() const;
    double step() const { return (stop - start) / (count - 1); }
    double at(int i) const { return start + i * step(); }
};

// Intensity columns on a common grid, one per method, in the order requested.
struct Spectrum {
    FrequencyGrid grid;
    std::vector<std::pair<std::string, Eigen::VectorXd>> columns;
};

// One intensity row per coupling value (collective coupling in units of the
// vibrational quantum), raw linear scale.
struct SweepSurface {
    std::vector<double> coupling_axis;  // NJ / omega_v
    FrequencyGrid grid;
    Eigen::MatrixXd intensity;  // coupling_axis.size() x grid.count
};

struct SumRuleReport {
    double deficit = 0.0;              // relative deviation from the dipole norm
    double edge_weight_fraction = 0.0; // integrated weight in the outer 5% bands
};

struct Peak {
    double position = 0.0;  // eV, parabolically refined
    double height = 0.0;
};

// Component for the k=0 state with exciton level m: sqrt(N+1) * |mu| * fc(0, m).
// The dipole-excited state lives entirely in the k=0 sector.
Eigen::VectorXd dipole_vector(const MonomerModel& model, const AggregateConfig& config);

// k=0 block of the resolvent by backward Schur-complement recursion:
// S_k = ((omega + i Gamma_k) I - H_k - v_k S_{k+1} v_k^T)^(-1), with
// Gamma_0 = gamma/2 and Gamma_{k>=1} = (gamma + gamma_v)/2.
Eigen::MatrixXcd resolvent_k0(double omega, const BlockChain& chain,
                              const AggregateConfig& config);

// Same block via dense inversion of the full concatenated matrix; the slow
// cross-check path.
Eigen::MatrixXcd resolvent_k0_dense(double omega, const BlockChain& chain,
                                    const AggregateConfig& config);

// sigma(omega_i) = -Im(d^T S_0(omega_i) d) over the grid. k_max < 0 means the
// full chain (every populated sector). Grid points are independent; threads
// > 1 evaluates them concurrently, result order is grid order regardless.
Eigen::VectorXd spectrum_column(const MonomerModel& model, const AggregateConfig& config,
                                const FrequencyGrid& grid, int k_max, int threads = 1);

// Zeroth-order closed form sigma = -(N+1)|mu|^2 Im[g_c / (1 - N J g_c)];
// coincides with spectrum_column(k_max = 0) to numerical precision.
Eigen::VectorXd cpa_spectrum(const MonomerModel& model, const AggregateConfig& config,
                             const FrequencyGrid& grid);

// Collective coupling of the all-to-all surrogate reproducing an arbitrary
// aggregate's zeroth-order response: the per-monomer sum of its couplings
// (nearest-neighbor chain -> 2J, all-to-all -> NJ).
double surrogate_coupling(double sum_of_couplings);

// Trapezoid integral of sigma against pi*(N+1)*|mu|^2*sum_m fc(0,m)^2.
// Callers should treat edge_weight_fraction > 1% as a clipped window.
SumRuleReport sum_rule(const Eigen::VectorXd& sigma, const FrequencyGrid& grid,
                       const MonomerModel& model, const AggregateConfig& config);

// One spectrum row per coupling value x = NJ/omega_v (J = x*omega_v/N).
SweepSurface sweep(const MonomerModel& model, const AggregateConfig& config,
                   const std::vector<double>& coupling_over_omegav, double omega_v,
                   const FrequencyGrid& grid, int k_max, int threads = 1);

// Local maxima above rel_threshold * max(sigma), three-point parabolic
// refinement.
std::vector<Peak> find_peaks(const Eigen::VectorXd& sigma, const FrequencyGrid& grid,
                             double rel_threshold = 1e-4);

}  // namespace aggspec
