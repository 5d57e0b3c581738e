#include "aggspec/response.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "aggspec/errors.hpp"

namespace aggspec {

using Cplx = std::complex<double>;

void FrequencyGrid::validate() const {
    if (!(start < stop)) throw std::invalid_argument("grid start must be < stop");
    if (count < 2) throw std::invalid_argument("grid count must be >= 2");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw std::invalid_argument("grid bounds must be finite");
}

Eigen::VectorXd dipole_vector(const MonomerModel& model, const AggregateConfig& config) {
    const double scale = std::sqrt(config.n_ground + 1.0) * model.dipole_mag;
    Eigen::VectorXd d(model.m_e() + 1);
    for (int m = 0; m <= model.m_e(); ++m) d(m) = scale * model.fc(0, m);
    return d;
}

namespace {

double sector_shift(int k, const AggregateConfig& config) {
    return k == 0 ? config.gamma / 2.0 : (config.gamma + config.gamma_v) / 2.0;
}

Eigen::MatrixXcd invert_shifted(Eigen::MatrixXcd a, int k) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXcd inv = a.partialPivLu().solve(Eigen::MatrixXcd::Identity(n, n));
    if (!inv.allFinite())
        throw NumericalError("singular resolvent block in sector " + std::to_string(k) +
                             " (gamma too small for this grid)");
    return inv;
}

}  // namespace

Eigen::MatrixXcd resolvent_k0(double omega, const BlockChain& chain,
                              const AggregateConfig& config) {
    const int top = chain.k_max();
    Eigen::MatrixXcd sigma;  // running Schur complement S_{k+1}
    for (int k = top; k >= 0; --k) {
        Eigen::MatrixXcd a = -chain.diag_blocks[k].cast<Cplx>();
        a.diagonal().array() += Cplx(omega, sector_shift(k, config));
        if (k < top) {
            const Eigen::MatrixXd& v = chain.couplings[k];
            a.noalias() -= v.cast<Cplx>() * sigma * v.transpose().cast<Cplx>();
        }
        sigma = invert_shifted(std::move(a), k);
    }
    return sigma;
}

Eigen::MatrixXcd resolvent_k0_dense(double omega, const BlockChain& chain,
                                    const AggregateConfig& config) {
    const std::int64_t n = chain.total_dim();
    Eigen::MatrixXcd full = -chain.full_matrix().cast<Cplx>();
    std::int64_t off = 0;
    for (int k = 0; k <= chain.k_max(); ++k) {
        const auto dk = chain.diag_blocks[k].rows();
        full.diagonal().segment(off, dk).array() += Cplx(omega, sector_shift(k, config));
        off += dk;
    }
    const auto d0 = chain.diag_blocks[0].rows();
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, d0);
    rhs.topRows(d0).setIdentity();
    Eigen::MatrixXcd cols = full.partialPivLu().solve(rhs);
    if (!cols.allFinite())
        throw NumericalError("singular full resolvent (gamma too small for this grid)");
    return cols.topRows(d0);
}

namespace {

void map_grid(int count, int threads, const std::function<void(int)>& eval) {
    int n = threads;
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(1, std::min(n, count));
    if (n == 1) {
        for (int i = 0; i < count; ++i) eval(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < n; ++t)
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += n) eval(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

Eigen::VectorXd spectrum_column(const MonomerModel& model, const AggregateConfig& config,
                                const FrequencyGrid& grid, int k_max, int threads) {
    grid.validate();
    const int full = config.n_ground * std::max(model.m_g(), 1);
    const BlockChain chain = build_chain(model, config, k_max < 0 ? full : k_max);
    const Eigen::VectorXd d = dipole_vector(model, config);
    Eigen::VectorXd sigma(grid.count);
    map_grid(grid.count, threads, [&](int i) {
        const Eigen::MatrixXcd g = resolvent_k0(grid.at(i), chain, config);
        sigma(i) = -(d.cast<Cplx>().dot(g * d.cast<Cplx>())).imag();
    });
    return sigma;
}

Eigen::VectorXd cpa_spectrum(const MonomerModel& model, const AggregateConfig& config,
                             const FrequencyGrid& grid) {
    grid.validate();
    config.validate();
    const double prefactor = (config.n_ground + 1.0) * model.dipole_mag * model.dipole_mag;
    const double nj = config.n_ground * config.coupling;
    Eigen::VectorXd sigma(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        const Cplx g = monomer_green(model, grid.at(i), config.gamma);
        sigma(i) = -prefactor * (g / (1.0 - nj * g)).imag();
    }
    return sigma;
}

double surrogate_coupling(double sum_of_couplings) {
    if (!std::isfinite(sum_of_couplings))
        throw std::invalid_argument("coupling sum must be finite");
    return sum_of_couplings;
}

SumRuleReport sum_rule(const Eigen::VectorXd& sigma, const FrequencyGrid& grid,
                       const MonomerModel& model, const AggregateConfig& config) {
    grid.validate();
    if (sigma.size() != grid.count) throw std::invalid_argument("column length != grid count");
    const double h = grid.step();
    double integral = 0.0;
    for (int i = 0; i + 1 < grid.count; ++i) integral += 0.5 * h * (sigma(i) + sigma(i + 1));

    double norm = 0.0;
    for (int m = 0; m <= model.m_e(); ++m) norm += model.fc(0, m) * model.fc(0, m);
    const double target = std::numbers::pi * (config.n_ground + 1.0) * model.dipole_mag *
                          model.dipole_mag * norm;

    const int band = std::max(1, grid.count / 20);
    double edges = 0.0;
    for (int i = 0; i < band; ++i)
        edges += 0.5 * h * (sigma(i) + sigma(i + 1)) +
                 0.5 * h * (sigma(grid.count - 2 - i) + sigma(grid.count - 1 - i));

    SumRuleReport report;
    report.deficit = std::abs(integral - target) / target;
    report.edge_weight_fraction = integral > 0.0 ? edges / integral : 1.0;
    return report;
}

SweepSurface sweep(const MonomerModel& model, const AggregateConfig& config,
                   const std::vector<double>& coupling_over_omegav, double omega_v,
                   const FrequencyGrid& grid, int k_max, int threads) {
    grid.validate();
    if (!(omega_v > 0.0)) throw std::invalid_argument("omega_v must be > 0");
    if (coupling_over_omegav.empty()) throw std::invalid_argument("empty coupling axis");
    SweepSurface surface;
    surface.coupling_axis = coupling_over_omegav;
    surface.grid = grid;
    surface.intensity.resize(static_cast<Eigen::Index>(coupling_over_omegav.size()), grid.count);
    for (std::size_t i = 0; i < coupling_over_omegav.size(); ++i) {
        AggregateConfig point = config;
        point.coupling = coupling_over_omegav[i] * omega_v / config.n_ground;
        surface.intensity.row(static_cast<Eigen::Index>(i)) =
            spectrum_column(model, point, grid, k_max, threads).transpose();
    }
    return surface;
}

std::vector<Peak> find_peaks(const Eigen::VectorXd& sigma, const FrequencyGrid& grid,
                             double rel_threshold) {
    grid.validate();
    if (sigma.size() != grid.count) throw std::invalid_argument("column length != grid count");
    const double floor = rel_threshold * sigma.maxCoeff();
    const double h = grid.step();
    std::vector<Peak> peaks;
    for (int i = 1; i + 1 < grid.count; ++i) {
        if (!(sigma(i) >= sigma(i - 1) && sigma(i) > sigma(i + 1) && sigma(i) > floor)) continue;
        const double denom = sigma(i - 1) - 2.0 * sigma(i) + sigma(i + 1);
        const double shift = denom != 0.0 ? 0.5 * (sigma(i - 1) - sigma(i + 1)) / denom : 0.0;
        peaks.push_back(Peak{grid.at(i) + shift * h, sigma(i)});
    }
    return peaks;
}

}  // namespace aggspec
