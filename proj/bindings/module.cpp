#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aggspec/basis.hpp"
#include "aggspec/config.hpp"
#include "aggspec/hamiltonian.hpp"
#include "aggspec/monomer.hpp"
#include "aggspec/response.hpp"
#include "aggspec/site_oracle.hpp"

namespace py = pybind11;
using namespace aggspec;

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Exact and zeroth-order linear absorption spectra of all-to-all coupled "
        "vibronic molecular aggregates, plus a brute-force site-basis reference.";

    py::class_<DisplacedOscillatorSpec>(m, "DisplacedOscillatorSpec")
        .def(py::init([](double vib_freq, double huang_rhys, double zero_zero_energy, int m_g,
                         int m_e) {
                 return DisplacedOscillatorSpec{vib_freq, huang_rhys, zero_zero_energy, m_g, m_e};
             }),
             py::arg("vib_freq"), py::arg("huang_rhys"), py::arg("zero_zero_energy"),
             py::arg("m_g"), py::arg("m_e"))
        .def_readwrite("vib_freq", &DisplacedOscillatorSpec::vib_freq)
        .def_readwrite("huang_rhys", &DisplacedOscillatorSpec::huang_rhys)
        .def_readwrite("zero_zero_energy", &DisplacedOscillatorSpec::zero_zero_energy)
        .def_readwrite("m_g", &DisplacedOscillatorSpec::m_g)
        .def_readwrite("m_e", &DisplacedOscillatorSpec::m_e)
        .def("validate", &DisplacedOscillatorSpec::validate);

    py::class_<MonomerModel>(m, "MonomerModel")
        .def_readwrite("ground_energies", &MonomerModel::ground_energies)
        .def_readwrite("excited_energies", &MonomerModel::excited_energies)
        .def_readwrite("fc", &MonomerModel::fc)
        .def_readwrite("dipole_mag", &MonomerModel::dipole_mag)
        .def_property_readonly("m_g", &MonomerModel::m_g)
        .def_property_readonly("m_e", &MonomerModel::m_e)
        .def("validate", &MonomerModel::validate);

    m.def("franck_condon_matrix", &franck_condon_matrix, py::arg("spec"),
          "Displaced-oscillator overlap matrix fc[n, m] by stable recurrence.");
    m.def("build_model", &build_model, py::arg("spec"), py::arg("dipole_mag") = 1.0,
          "Ladder energies plus Franck-Condon overlaps for one monomer.");
    m.def("make_model", &make_model, py::arg("ground_energies"), py::arg("excited_energies"),
          py::arg("fc"), py::arg("dipole_mag") = 1.0,
          "Monomer model from explicit energies and overlaps.");
    m.def("monomer_green", &monomer_green, py::arg("model"), py::arg("omega"), py::arg("gamma"),
          "Retarded monomer Green's function at one frequency.");

    py::class_<OccState>(m, "OccState")
        .def(py::init([](std::vector<int> ground_occ, int excited_level) {
                 return OccState{std::move(ground_occ), excited_level};
             }),
             py::arg("ground_occ"), py::arg("excited_level"))
        .def_readwrite("ground_occ", &OccState::ground_occ)
        .def_readwrite("excited_level", &OccState::excited_level)
        .def("__eq__", [](const OccState& a, const OccState& b) { return a == b; })
        .def("__repr__", [](const OccState& s) { return to_string(s); });

    py::class_<ManifoldBasis>(m, "ManifoldBasis")
        .def_readonly("k", &ManifoldBasis::k)
        .def_readonly("n_ground", &ManifoldBasis::n_ground)
        .def_readonly("states", &ManifoldBasis::states)
        .def("size", &ManifoldBasis::size)
        .def("locate", &ManifoldBasis::locate, py::arg("state"))
        .def("dump", &ManifoldBasis::dump);

    m.def("manifold_dimension", &manifold_dimension, py::arg("m_g"), py::arg("m_e"), py::arg("k"),
          "Number of k-sector states when k <= N.");
    m.def("enumerate_manifold", &enumerate_manifold, py::arg("n_ground"), py::arg("m_g"),
          py::arg("m_e"), py::arg("k"),
          "All permutation-symmetric states with k vibrationally excited ground molecules.");

    py::class_<AggregateConfig>(m, "AggregateConfig")
        .def(py::init([](int n_ground, double coupling, double gamma, double gamma_v) {
                 return AggregateConfig{n_ground, coupling, gamma, gamma_v};
             }),
             py::arg("n_ground"), py::arg("coupling"), py::arg("gamma"),
             py::arg("gamma_v") = 0.0)
        .def_readwrite("n_ground", &AggregateConfig::n_ground)
        .def_readwrite("coupling", &AggregateConfig::coupling)
        .def_readwrite("gamma", &AggregateConfig::gamma)
        .def_readwrite("gamma_v", &AggregateConfig::gamma_v)
        .def("validate", &AggregateConfig::validate);

    py::class_<BlockChain>(m, "BlockChain")
        .def_readonly("diag_blocks", &BlockChain::diag_blocks)
        .def_readonly("couplings", &BlockChain::couplings)
        .def("k_max", &BlockChain::k_max)
        .def("total_dim", &BlockChain::total_dim)
        .def("full_matrix", &BlockChain::full_matrix);

    m.def("interaction_element", &interaction_element, py::arg("src"), py::arg("dst"),
          py::arg("model"), py::arg("config"),
          "Coupling matrix element between two symmetric states.");
    m.def("assemble_diag_block", &assemble_diag_block, py::arg("k"), py::arg("model"),
          py::arg("config"), py::arg("basis"), "Sector-k block of the Hamiltonian.");
    m.def("assemble_coupling", &assemble_coupling, py::arg("k"), py::arg("delta"),
          py::arg("model"), py::arg("config"), py::arg("from_basis"), py::arg("to_basis"),
          "Block coupling sector k to sector k+delta; zero beyond delta = 1.");
    m.def("build_chain", &build_chain, py::arg("model"), py::arg("config"), py::arg("k_max"),
          py::arg("dim_cap") = 200000,
          "Diagonal blocks and nearest-sector couplings up to k_max.");

    py::class_<FrequencyGrid>(m, "FrequencyGrid")
        .def(py::init([](double start, double stop, int count) {
                 return FrequencyGrid{start, stop, count};
             }),
             py::arg("start"), py::arg("stop"), py::arg("count"))
        .def_readwrite("start", &FrequencyGrid::start)
        .def_readwrite("stop", &FrequencyGrid::stop)
        .def_readwrite("count", &FrequencyGrid::count)
        .def("step", &FrequencyGrid::step)
        .def("at", &FrequencyGrid::at, py::arg("i"))
        .def("validate", &FrequencyGrid::validate);

    py::class_<SweepSurface>(m, "SweepSurface")
        .def_readonly("coupling_axis", &SweepSurface::coupling_axis)
        .def_readonly("grid", &SweepSurface::grid)
        .def_readonly("intensity", &SweepSurface::intensity);

    py::class_<SumRuleReport>(m, "SumRuleReport")
        .def_readonly("deficit", &SumRuleReport::deficit)
        .def_readonly("edge_weight_fraction", &SumRuleReport::edge_weight_fraction);

    py::class_<Peak>(m, "Peak")
        .def_readonly("position", &Peak::position)
        .def_readonly("height", &Peak::height);

    py::class_<Deviation>(m, "Deviation")
        .def_readonly("max_abs", &Deviation::max_abs)
        .def_readonly("max_rel", &Deviation::max_rel);

    m.def("dipole_vector", &dipole_vector, py::arg("model"), py::arg("config"),
          "Components of the dipole-excited state in the k = 0 sector.");
    m.def("resolvent_k0", &resolvent_k0, py::arg("omega"), py::arg("chain"), py::arg("config"),
          "k = 0 resolvent block by backward Schur-complement recursion.");
    m.def("resolvent_k0_dense", &resolvent_k0_dense, py::arg("omega"), py::arg("chain"),
          py::arg("config"), "Same block by dense inversion; slow cross-check.");
    m.def("spectrum_column", &spectrum_column, py::arg("model"), py::arg("config"),
          py::arg("grid"), py::arg("k_max"), py::arg("threads") = 1,
          "Absorption intensity over the grid; k_max < 0 means the full chain.");
    m.def("cpa_spectrum", &cpa_spectrum, py::arg("model"), py::arg("config"), py::arg("grid"),
          "Zeroth-order closed form from the monomer Green's function.");
    m.def("surrogate_coupling", &surrogate_coupling, py::arg("sum_of_couplings"),
          "Collective coupling of the all-to-all surrogate aggregate.");
    m.def("sum_rule", &sum_rule, py::arg("sigma"), py::arg("grid"), py::arg("model"),
          py::arg("config"), "Integrated intensity against the dipole norm.");
    m.def("sweep", &sweep, py::arg("model"), py::arg("config"), py::arg("coupling_over_omegav"),
          py::arg("omega_v"), py::arg("grid"), py::arg("k_max"), py::arg("threads") = 1,
          "One spectrum per collective coupling value.");
    m.def("find_peaks", &find_peaks, py::arg("sigma"), py::arg("grid"),
          py::arg("rel_threshold") = 1e-4,
          "Local maxima with three-point parabolic refinement.");

    m.def("site_dimension", &site_dimension, py::arg("n_ground"), py::arg("m_g"), py::arg("m_e"),
          "Distinguishable-monomer product basis size.");
    m.def("site_hamiltonian", &site_hamiltonian, py::arg("model"), py::arg("config"),
          py::arg("dim_cap") = 20000, "Dense Hamiltonian in the product basis.");
    m.def("oracle_spectrum", &oracle_spectrum, py::arg("model"), py::arg("config"),
          py::arg("grid"), py::arg("dim_cap") = 20000,
          "Brute-force spectrum by dense eigendecomposition of the product basis.");
    m.def("compare_columns", &compare_columns, py::arg("a"), py::arg("b"),
          "Pointwise deviation between two columns on the same grid.");

    py::class_<ValidateReport>(m, "ValidateReport")
        .def_readonly("text", &ValidateReport::text)
        .def_readonly("pass_", &ValidateReport::pass)
        .def("__bool__", [](const ValidateReport& r) { return r.pass; });

    m.def("run_validate", &run_validate, py::arg("tol_scale") = 1.0,
          "Symmetric-basis vs site-basis cross-validation suite.");
}
