#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "aggspec/hamiltonian.hpp"
#include "aggspec/monomer.hpp"
#include "aggspec/response.hpp"

namespace aggspec {

// Brute-force reference in the distinguishable-monomer product basis. Exists
// to certify the permutation-symmetric reduction on small aggregates; never
// meant to scale.

// (N+1) * (M_e+1) * (M_g+1)^N, overflow-guarded.
std::int64_t site_dimension(int n_ground, int m_g, int m_e);

// Dense symmetric matrix over states (excited site, excited vib level,
// ground vib level of every other site). Diagonal: bare vibronic energies.
// Excitation transfer between sites i != j: J * fc(n, m_src) * fc(q, m_dst)
// where the de-excited site lands in ground level n and the newly excited
// site leaves ground level q.
Eigen::MatrixXd site_hamiltonian(const MonomerModel& model, const AggregateConfig& config,
                                 std::int64_t dim_cap = 20000);

// -Im <mu| (omega - H + i gamma/2)^(-1) |mu> by dense eigendecomposition,
// uniform linewidth gamma (no per-sector gamma_v; compare against the
// symmetric-basis path with gamma_v = 0).
Eigen::VectorXd oracle_spectrum(const MonomerModel& model, const AggregateConfig& config,
                                const FrequencyGrid& grid, std::int64_t dim_cap = 20000);

struct Deviation {
    double max_abs = 0.0;
    double max_rel = 0.0;  // max_abs / max(|a|_inf, |b|_inf)
};

// Pointwise deviation between two columns on the same grid.
Deviation compare_columns(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace aggspec
