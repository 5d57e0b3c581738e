#include "aggspec/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "aggspec/errors.hpp"

namespace aggspec {

void AggregateConfig::validate() const {
    if (n_ground < 1) throw std::invalid_argument("n_ground must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(gamma_v >= 0.0)) throw std::invalid_argument("gamma_v must be >= 0");
    if (!std::isfinite(coupling)) throw std::invalid_argument("coupling must be finite");
}

std::int64_t BlockChain::total_dim() const {
    std::int64_t d = 0;
    for (const auto& b : diag_blocks) d += b.rows();
    return d;
}

Eigen::MatrixXd BlockChain::full_matrix() const {
    const auto n = total_dim();
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
    std::int64_t off = 0;
    for (std::size_t k = 0; k < diag_blocks.size(); ++k) {
        const auto dk = diag_blocks[k].rows();
        full.block(off, off, dk, dk) = diag_blocks[k];
        if (k < couplings.size()) {
            const auto dn = couplings[k].cols();
            full.block(off, off + dk, dk, dn) = couplings[k];
            full.block(off + dk, off, dn, dk) = couplings[k].transpose();
        }
        off += dk;
    }
    return full;
}

double interaction_element(const OccState& src, const OccState& dst, const MonomerModel& model,
                           const AggregateConfig& config) {
    const int levels = model.m_g() + 1;
    if (static_cast<int>(src.ground_occ.size()) != levels ||
        static_cast<int>(dst.ground_occ.size()) != levels)
        throw std::invalid_argument("occupation vector length does not match the model");
    if (src.excited_level > model.m_e() || dst.excited_level > model.m_e() ||
        src.excited_level < 0 || dst.excited_level < 0)
        throw std::invalid_argument("excited_level outside the model range");
    int total_src = 0, total_dst = 0;
    for (int n = 0; n < levels; ++n) {
        total_src += src.ground_occ[n];
        total_dst += dst.ground_occ[n];
    }
    if (total_src != config.n_ground || total_dst != config.n_ground)
        throw std::invalid_argument("occupations do not sum to n_ground");

    // The matrix is symmetric; evaluate both orientations of a pair through
    // one canonical ordering so assembled blocks equal their transpose
    // bitwise.
    const OccState* a = &src;
    const OccState* b = &dst;
    if (*b < *a) std::swap(a, b);

    int gain = -1, lose = -1;
    for (int n = 0; n < levels; ++n) {
        const int d = b->ground_occ[n] - a->ground_occ[n];
        if (d == 0) continue;
        if (d == 1 && gain < 0) gain = n;
        else if (d == -1 && lose < 0) lose = n;
        else return 0.0;  // more than one molecule moved
    }

    if (gain < 0 && lose < 0) {
        // No ground move: the exciton scatters off each ground molecule in
        // place, J * sum_n n_n fc(n, m_a) fc(n, m_b).
        double sum = 0.0;
        for (int n = 0; n < levels; ++n)
            sum += a->ground_occ[n] * model.fc(n, a->excited_level) * model.fc(n, b->excited_level);
        return config.coupling * sum;
    }
    if (gain < 0 || lose < 0) return 0.0;

    // One molecule moved lose -> gain while the exciton moved m_a -> m_b:
    // the de-excited molecule lands in ground level `gain`, the newly excited
    // one leaves ground level `lose`.
    return config.coupling * model.fc(gain, a->excited_level) * model.fc(lose, b->excited_level) *
           std::sqrt(static_cast<double>(a->ground_occ[lose])) *
           std::sqrt(static_cast<double>(a->ground_occ[gain] + 1));
}

Eigen::MatrixXd assemble_diag_block(int k, const MonomerModel& model,
                                    const AggregateConfig& config, const ManifoldBasis& basis) {
    if (basis.k != k) throw std::invalid_argument("basis does not belong to sector k");
    const int dim = basis.size();
    Eigen::MatrixXd h(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const OccState& s = basis.states[col];
        for (int row = 0; row < dim; ++row)
            h(row, col) = interaction_element(s, basis.states[row], model, config);
        double bare = model.excited_energies[s.excited_level];
        for (int n = 0; n <= model.m_g(); ++n) bare += s.ground_occ[n] * model.ground_energies[n];
        h(col, col) += bare;
    }
    return h;
}

Eigen::MatrixXd assemble_coupling(int k, int delta, const MonomerModel& model,
                                  const AggregateConfig& config, const ManifoldBasis& from,
                                  const ManifoldBasis& to) {
    if (delta < 1) throw std::invalid_argument("delta must be >= 1");
    if (from.k != k || to.k != k + delta)
        throw std::invalid_argument("bases do not match sectors k and k+delta");
    Eigen::MatrixXd v(to.size(), from.size());
    for (int col = 0; col < from.size(); ++col)
        for (int row = 0; row < to.size(); ++row)
            v(row, col) = interaction_element(from.states[col], to.states[row], model, config);
    return v;
}

BlockChain build_chain(const MonomerModel& model, const AggregateConfig& config, int k_max,
                       std::int64_t dim_cap) {
    config.validate();
    model.validate();
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");

    const int top = model.m_g() == 0 ? 0 : std::min(k_max, config.n_ground);
    std::vector<ManifoldBasis> bases;
    bases.reserve(top + 1);
    std::int64_t total = 0;
    for (int k = 0; k <= top; ++k) {
        bases.push_back(enumerate_manifold(config.n_ground, model.m_g(), model.m_e(), k));
        total += bases.back().size();
        if (total > dim_cap)
            throw NumericalError("chain dimension exceeds cap (" + std::to_string(total) + " > " +
                                 std::to_string(dim_cap) + ")");
    }

    BlockChain chain;
    for (int k = 0; k <= top; ++k) {
        chain.diag_blocks.push_back(assemble_diag_block(k, model, config, bases[k]));
        if (k < top)
            chain.couplings.push_back(
                assemble_coupling(k, 1, model, config, bases[k], bases[k + 1]).transpose());
    }
    return chain;
}

}  // namespace aggspec
