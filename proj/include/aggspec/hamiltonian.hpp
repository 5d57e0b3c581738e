#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "aggspec/basis.hpp"
#include "aggspec/monomer.hpp"

namespace aggspec {

// Aggregate of N+1 identical monomers, every pair coupled with the same
// strength J. gamma / gamma_v are the phenomenological electronic and
// vibrational linewidths entering the resolvent shifts.
struct AggregateConfig {
    int n_ground = 1;      // N; total monomers = N+1
    double coupling = 0.0; // J (eV), sign-carrying
    double gamma = 0.0;    // eV, > 0
    double gamma_v = 0.0;  // eV, >= 0

    void validate() const;  // throws std::invalid_argument
};

// Diagonal blocks H_k and the single off-diagonal band v_k of the sector
// Hamiltonian. One interaction event moves exactly one molecule between the
// unexcited pool and a vibrationally excited ground level, so k changes by at
// most one and the chain is block tridiagonal for any M_g.
struct BlockChain {
    std::vector<Eigen::MatrixXd> diag_blocks;  // H_k, k = 0..k_max
    std::vector<Eigen::MatrixXd> couplings;    // v_k: dim_k x dim_{k+1}

    int k_max() const { return static_cast<int>(diag_blocks.size()) - 1; }
    std::int64_t total_dim() const;
    // All sectors concatenated into one dense symmetric matrix.
    Eigen::MatrixXd full_matrix() const;
};

// <dst| H_int |src>: the exciton hops from its vibronic level onto one ground
// molecule while that molecule's partner transition happens in reverse,
// J * fc(n, m_src) * fc(q, m_dst) * sqrt(n_q) * sqrt(n_n after annihilation + 1)
// for the move q -> n of one ground molecule. Zero unless the two occupation
// vectors differ by at most one such move. Includes the diagonal (no-move)
// terms J * sum_n n_n * fc(n, m_src) * fc(n, m_dst).
double interaction_element(const OccState& src, const OccState& dst,
                           const MonomerModel& model, const AggregateConfig& config);

// H_k(a, b) = delta_ab * (sum_i n_i omega_{g,i} + omega_{e,m}) +
// interaction_element(states[b] -> states[a]). Exactly symmetric.
Eigen::MatrixXd assemble_diag_block(int k, const MonomerModel& model,
                                    const AggregateConfig& config,
                                    const ManifoldBasis& basis);

// Block between sector k and sector k+delta, element (a, b) =
// interaction_element(from.states[b] -> to.states[a]); shape to.size x
// from.size. Identically zero for delta >= 2 (a single move cannot excite two
// molecules), kept for band-structure probing.
Eigen::MatrixXd assemble_coupling(int k, int delta, const MonomerModel& model,
                                  const AggregateConfig& config,
                                  const ManifoldBasis& from, const ManifoldBasis& to);

// All blocks for sectors 0..k_max. k_max is capped at the largest populated
// sector (k = N, or 0 when M_g = 0). Refuses chains whose total dimension
// exceeds dim_cap.
BlockChain build_chain(const MonomerModel& model, const AggregateConfig& config,
                       int k_max, std::int64_t dim_cap = 200000);

}  // namespace aggspec
