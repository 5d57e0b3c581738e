#include "aggspec/site_oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "aggspec/errors.hpp"

namespace aggspec {

std::int64_t site_dimension(int n_ground, int m_g, int m_e) {
    if (n_ground < 1 || m_g < 0 || m_e < 0) throw std::invalid_argument("invalid site basis sizes");
    std::int64_t dim = static_cast<std::int64_t>(n_ground + 1) * (m_e + 1);
    for (int i = 0; i < n_ground; ++i) {
        if (dim > std::numeric_limits<std::int64_t>::max() / (m_g + 1))
            throw std::invalid_argument("site dimension overflows 64 bits");
        dim *= m_g + 1;
    }
    return dim;
}

namespace {

// State index: (excited_site, excited_vib, ground vib digits base m_g+1).
struct SiteBasis {
    int n_sites;   // N+1
    int m_g, m_e;
    std::int64_t ground_configs;  // (m_g+1)^N

    std::int64_t index(int site, int vib, const std::vector<int>& grounds) const {
        std::int64_t g = 0;
        for (int i = 0; i < n_sites - 1; ++i) g = g * (m_g + 1) + grounds[i];
        return (static_cast<std::int64_t>(site) * (m_e + 1) + vib) * ground_configs + g;
    }

    // grounds[i] is the vib level of the i-th unexcited site, in site order
    // with the excited site skipped.
    void decode(std::int64_t idx, int& site, int& vib, std::vector<int>& grounds) const {
        std::int64_t g = idx % ground_configs;
        const std::int64_t sv = idx / ground_configs;
        vib = static_cast<int>(sv % (m_e + 1));
        site = static_cast<int>(sv / (m_e + 1));
        grounds.assign(n_sites - 1, 0);
        for (int i = n_sites - 2; i >= 0; --i) {
            grounds[i] = static_cast<int>(g % (m_g + 1));
            g /= m_g + 1;
        }
    }
};

// Vib level of absolute site `abs_site` given the excited site and the
// skip-compressed ground list.
int ground_level_at(int abs_site, int excited_site, const std::vector<int>& grounds) {
    return grounds[abs_site < excited_site ? abs_site : abs_site - 1];
}

}  // namespace

Eigen::MatrixXd site_hamiltonian(const MonomerModel& model, const AggregateConfig& config,
                                 std::int64_t dim_cap) {
    model.validate();
    config.validate();
    const std::int64_t dim = site_dimension(config.n_ground, model.m_g(), model.m_e());
    if (dim > dim_cap)
        throw NumericalError("site basis dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(dim_cap));

    const int n_sites = config.n_ground + 1;
    SiteBasis basis{n_sites, model.m_g(), model.m_e(), 1};
    for (int i = 0; i < config.n_ground; ++i) basis.ground_configs *= model.m_g() + 1;

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<int> grounds, dst_grounds;
    for (std::int64_t col = 0; col < dim; ++col) {
        int site, vib;
        basis.decode(col, site, vib, grounds);

        double bare = model.excited_energies[vib];
        for (int v : grounds) bare += model.ground_energies[v];
        h(col, col) += bare;

        // Transfer the excitation to every other site: the source site drops
        // to ground level n, the target site leaves ground level q.
        for (int target = 0; target < n_sites; ++target) {
            if (target == site) continue;
            const int q = ground_level_at(target, site, grounds);
            for (int n = 0; n <= model.m_g(); ++n)
                for (int m = 0; m <= model.m_e(); ++m) {
                    dst_grounds.clear();
                    for (int rest = 0; rest < n_sites; ++rest) {
                        if (rest == target) continue;
                        dst_grounds.push_back(rest == site ? n
                                                           : ground_level_at(rest, site, grounds));
                    }
                    const std::int64_t row = basis.index(target, m, dst_grounds);
                    h(row, col) += config.coupling * model.fc(n, vib) * model.fc(q, m);
                }
        }
    }
    return h;
}

Eigen::VectorXd oracle_spectrum(const MonomerModel& model, const AggregateConfig& config,
                                const FrequencyGrid& grid, std::int64_t dim_cap) {
    grid.validate();
    const Eigen::MatrixXd h = site_hamiltonian(model, config, dim_cap);
    const std::int64_t dim = h.rows();

    const int n_sites = config.n_ground + 1;
    SiteBasis basis{n_sites, model.m_g(), model.m_e(), 1};
    for (int i = 0; i < config.n_ground; ++i) basis.ground_configs *= model.m_g() + 1;

    // mu |ground>: every site in ground level 0, any site promoted to any
    // excited level with weight |mu| fc(0, m).
    Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
    std::vector<int> zeros(config.n_ground, 0);
    for (int site = 0; site < n_sites; ++site)
        for (int m = 0; m <= model.m_e(); ++m)
            d(basis.index(site, m, zeros)) = model.dipole_mag * model.fc(0, m);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
    if (eig.info() != Eigen::Success) throw NumericalError("site Hamiltonian diagonalization failed");
    const Eigen::VectorXd weights = (eig.eigenvectors().transpose() * d).array().square();

    const double half = config.gamma / 2.0;
    Eigen::VectorXd sigma(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        const double w = grid.at(i);
        double s = 0.0;
        for (std::int64_t a = 0; a < dim; ++a) {
            const double dw = w - eig.eigenvalues()(a);
            s += weights(a) * half / (dw * dw + half * half);
        }
        sigma(i) = s;
    }
    return sigma;
}

Deviation compare_columns(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("column lengths differ");
    Deviation dev;
    dev.max_abs = (a - b).cwiseAbs().maxCoeff();
    const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    dev.max_rel = scale > 0.0 ? dev.max_abs / scale : 0.0;
    return dev;
}

}  // namespace aggspec
