# Copyright 2026 The nmqw authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

import nmqw


def test_counts_and_basis():
    assert len(nmqw.prepared_states(6)) == 36
    assert len(nmqw.basis_operators(10)) == 100
    label, op = nmqw.basis_operators(2)[2]
    assert str(label) == "x(2,1)"
    assert np.allclose(op, [[0, 0.5], [0.5, 0]])


def test_trace_distance_and_functional():
    rho0 = nmqw.pure_to_density(nmqw.PureState.basis_vector(0, 2))
    rho1 = nmqw.pure_to_density(nmqw.PureState.basis_vector(1, 2))
    assert nmqw.trace_distance(rho0, rho1) == pytest.approx(1.0)

    traj = nmqw.DistanceTrajectory()
    traj.times = [0, 1, 2, 3, 4]
    traj.values = [1.0, 0.3, 0.5, 0.2, 0.4]
    assert nmqw.blp_functional(traj) == pytest.approx(0.4)


def test_simulator_pipeline_matches_direct_evolution():
    config = nmqw.QWConfig()
    config.half_width = 0
    config.steps = 10

    prepared = nmqw.generate_prepared_dataset(config)
    assert len(prepared.series) == 4
    basis = nmqw.recover_basis_dynamics(prepared)

    rng = np.random.default_rng(4)
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    rho0 = nmqw.DensityMatrix(rho)

    direct = nmqw.evolve_reduced(config, rho0)
    rebuilt = nmqw.reconstruct_dynamics(nmqw.decompose(rho0), basis)
    for a, b in zip(direct, rebuilt):
        assert np.abs(a.matrix - b.matrix).max() < 1e-10


def test_optimizer_against_closed_form():
    gen = nmqw.synthetic_dephasing_dataset(0.7, 12)
    basis = nmqw.recover_basis_dynamics(gen.dataset)

    opts = nmqw.OptimizerOptions()
    opts.restarts = 16
    opts.seed = 1
    opts.tolerance = 1e-9
    result = nmqw.optimize_pair(basis, opts)
    assert result.value == pytest.approx(gen.analytic_value, abs=1e-6)

    grid = nmqw.grid_scan_qubit(basis, 100, 200)
    assert grid.value == pytest.approx(gen.analytic_value, abs=1e-9)


def test_serialization_round_trip(tmp_path):
    config = nmqw.QWConfig()
    config.half_width = 0
    config.steps = 4
    ds = nmqw.generate_prepared_dataset(config)
    text = nmqw.write_dataset(ds)
    path = tmp_path / "ds.json"
    path.write_text(text)
    back = nmqw.read_dataset(path.read_text())
    assert nmqw.write_dataset(back) == text
    assert back.dim == 2
    assert back.metadata["time_unit"] == "step"


def test_validation_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        nmqw.basis_operators(1)
    bad = np.array([[0.6, 0.0], [0.0, 0.6]])
    with pytest.raises(ValueError):
        nmqw.DensityMatrix(bad)
