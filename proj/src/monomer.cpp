#include "aggspec/monomer.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aggspec {

void DisplacedOscillatorSpec::validate() const {
    if (!(vib_freq > 0.0)) throw std::invalid_argument("omega_v must be > 0");
    if (!(huang_rhys >= 0.0)) throw std::invalid_argument("huang_rhys must be >= 0");
    if (m_g < 0) throw std::invalid_argument("m_g must be >= 0");
    if (m_e < 0) throw std::invalid_argument("m_e must be >= 0");
    if (!std::isfinite(zero_zero_energy)) throw std::invalid_argument("omega_00 must be finite");
}

void MonomerModel::validate() const {
    if (ground_energies.empty()) throw std::invalid_argument("ground_energies is empty");
    if (excited_energies.empty()) throw std::invalid_argument("excited_energies is empty");
    if (ground_energies[0] != 0.0)
        throw std::invalid_argument("ground_energies[0] must be 0 (global ground pinned to zero)");
    for (std::size_t n = 1; n < ground_energies.size(); ++n)
        if (ground_energies[n] < ground_energies[n - 1])
            throw std::invalid_argument("ground_energies must be nondecreasing");
    if (fc.rows() != static_cast<Eigen::Index>(ground_energies.size()) ||
        fc.cols() != static_cast<Eigen::Index>(excited_energies.size()))
        throw std::invalid_argument("fc shape must be (m_g+1) x (m_e+1)");
    if (fc.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
        throw std::invalid_argument("fc entries must satisfy |fc| <= 1");
    if (!(dipole_mag > 0.0)) throw std::invalid_argument("dipole_mag must be > 0");
}

Eigen::MatrixXd franck_condon_matrix(const DisplacedOscillatorSpec& spec) {
    spec.validate();
    const int rows = spec.m_g + 1;
    const int cols = spec.m_e + 1;
    const double s = spec.huang_rhys;
    const double rs = std::sqrt(s);

    Eigen::MatrixXd fc = Eigen::MatrixXd::Zero(rows, cols);
    // m = 0 column: <n_g | 0_e> = exp(-S/2) (-sqrt(S))^n / sqrt(n!).
    fc(0, 0) = std::exp(-s / 2.0);
    for (int n = 0; n + 1 < rows; ++n) fc(n + 1, 0) = -rs / std::sqrt(n + 1.0) * fc(n, 0);
    // Raise m: sqrt(m+1) fc(n, m+1) = sqrt(n) fc(n-1, m) + sqrt(S) fc(n, m).
    for (int m = 0; m + 1 < cols; ++m)
        for (int n = 0; n < rows; ++n) {
            const double lower = n > 0 ? std::sqrt(static_cast<double>(n)) * fc(n - 1, m) : 0.0;
            fc(n, m + 1) = (lower + rs * fc(n, m)) / std::sqrt(m + 1.0);
        }
    return fc;
}

MonomerModel build_model(const DisplacedOscillatorSpec& spec, double dipole_mag) {
    MonomerModel model;
    model.fc = franck_condon_matrix(spec);
    model.ground_energies.resize(spec.m_g + 1);
    model.excited_energies.resize(spec.m_e + 1);
    for (int n = 0; n <= spec.m_g; ++n) model.ground_energies[n] = n * spec.vib_freq;
    for (int m = 0; m <= spec.m_e; ++m)
        model.excited_energies[m] = spec.zero_zero_energy + m * spec.vib_freq;
    model.dipole_mag = dipole_mag;
    model.validate();
    return model;
}

MonomerModel make_model(std::vector<double> ground_energies, std::vector<double> excited_energies,
                        Eigen::MatrixXd fc, double dipole_mag) {
    MonomerModel model;
    model.ground_energies = std::move(ground_energies);
    model.excited_energies = std::move(excited_energies);
    model.fc = std::move(fc);
    model.dipole_mag = dipole_mag;
    model.validate();
    return model;
}

std::complex<double> monomer_green(const MonomerModel& model, double omega, double gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("gamma must be > 0 (resolvent singular on the real axis)");
    std::complex<double> g(0.0, 0.0);
    for (int m = 0; m <= model.m_e(); ++m) {
        const double w = model.fc(0, m) * model.fc(0, m);
        g += w / std::complex<double>(omega - model.excited_energies[m], gamma / 2.0);
    }
    return g;
}

}  // namespace aggspec
