#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace aggspec {

// Single displaced-harmonic-oscillator mode shared by the ground and excited
// electronic surfaces; level counts are M+1 (indices 0..M).
struct DisplacedOscillatorSpec {
    double vib_freq = 0.0;          // omega_v (eV)
    double huang_rhys = 0.0;        // S, dimensionless squared displacement
    double zero_zero_energy = 0.0;  // omega_00 (eV)
    int m_g = 0;
    int m_e = 0;

    void validate() const;  // throws std::invalid_argument
};

// Monomer vibronic structure: eigenenergies of both manifolds, the
// Franck-Condon overlap matrix fc(n, m) = <phi_n^g | phi_m^e>, and the
// transition dipole magnitude. Immutable after construction; all operations
// on it are pure.
struct MonomerModel {
    std::vector<double> ground_energies;   // omega_{g,n}, n = 0..M_g, [0] == 0
    std::vector<double> excited_energies;  // omega_{e,m}, m = 0..M_e
    Eigen::MatrixXd fc;                    // (M_g+1) x (M_e+1)
    double dipole_mag = 1.0;

    int m_g() const { return static_cast<int>(ground_energies.size()) - 1; }
    int m_e() const { return static_cast<int>(excited_energies.size()) - 1; }

    // Entry bound |fc| <= 1 and energy ordering are always enforced. The
    // row/column norm bound sum fc^2 <= 1 holds for genuine overlap matrices
    // but is deliberately not enforced: unit-overlap truncations (all fc = 1)
    // are a supported modeling idiom and violate it.
    void validate() const;
};

// Overlaps of equal-frequency harmonic oscillators whose excited surface is
// displaced by sqrt(S). Sign convention: fc(0, m) = exp(-S/2) sqrt(S)^m /
// sqrt(m!) >= 0; the n-recurrence is seeded consistently with that choice.
// Evaluated by a stable two-term recurrence, no factorials.
Eigen::MatrixXd franck_condon_matrix(const DisplacedOscillatorSpec& spec);

// ground_energies[n] = n*omega_v, excited_energies[m] = omega_00 + m*omega_v.
MonomerModel build_model(const DisplacedOscillatorSpec& spec, double dipole_mag = 1.0);

// Arbitrary energies/overlaps (validated); used for overlap and energy
// overrides from config files.
MonomerModel make_model(std::vector<double> ground_energies,
                        std::vector<double> excited_energies,
                        Eigen::MatrixXd fc, double dipole_mag = 1.0);

// g_c(omega) = sum_m fc(0,m)^2 / (omega - omega_{e,m} + i*gamma/2).
// Im g_c < 0 for every real omega and gamma > 0.
std::complex<double> monomer_green(const MonomerModel& model, double omega, double gamma);

}  // namespace aggspec
