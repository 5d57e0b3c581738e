import math
import os
import subprocess

import numpy as np
import pytest

import aggspec


def test_franck_condon_zero_row():
    spec = aggspec.DisplacedOscillatorSpec(0.16, 0.5, 2.3, 2, 2)
    fc = aggspec.franck_condon_matrix(spec)
    assert fc.shape == (3, 3)
    assert math.isclose(fc[0, 0], math.exp(-0.25), rel_tol=1e-14)
    assert math.isclose(fc[0, 1], math.exp(-0.25) * math.sqrt(0.5), rel_tol=1e-14)


def test_manifold_dimension_matches_enumeration():
    basis = aggspec.enumerate_manifold(3, 2, 1, 2)
    assert basis.size() == aggspec.manifold_dimension(2, 1, 2) == 6
    state = basis.states[0]
    assert basis.locate(state) == 0
    assert sum(state.ground_occ) == 3


def test_zeroth_order_matches_closed_form():
    model = aggspec.build_model(aggspec.DisplacedOscillatorSpec(0.16, 0.5, 2.3, 1, 2))
    cfg = aggspec.AggregateConfig(8, 0.04, 0.01, 1e-5)
    grid = aggspec.FrequencyGrid(1.8, 3.0, 201)
    truncated = aggspec.spectrum_column(model, cfg, grid, 0)
    closed = aggspec.cpa_spectrum(model, cfg, grid)
    assert np.max(np.abs(truncated - closed)) / np.max(closed) < 1e-10


def test_full_spectrum_positive_with_expected_peaks():
    model = aggspec.make_model([0.0, 0.16], [2.3], np.ones((2, 1)))
    cfg = aggspec.AggregateConfig(1, -0.06, 0.01, 1e-5)
    grid = aggspec.FrequencyGrid(1.8, 2.9, 2001)
    sigma = aggspec.spectrum_column(model, cfg, grid, -1)
    assert np.all(sigma > 0)
    peaks = aggspec.find_peaks(sigma, grid)
    assert [round(p.position, 2) for p in peaks] == [2.22, 2.42]


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        aggspec.enumerate_manifold(3, 1, 0, -1)


def test_cli_round_trip(tmp_path):
    cli = os.environ.get("AGGSPEC_CLI")
    if not cli:
        pytest.skip("AGGSPEC_CLI not set")
    out = tmp_path / "spectrum.csv"
    subprocess.run(
        [cli, "spectrum", "--preset", "dimer-pdi", "--grid", "2.0,2.6,51", "--out", str(out)],
        check=True,
    )
    header, first = out.read_text().splitlines()[:2]
    assert header == "omega_eV,sigma_exact,sigma_cpa"
    assert first.startswith("2,")
