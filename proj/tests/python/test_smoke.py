# Copyright 2026 The QHAM Authors
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

import json
import math
import os
import pathlib

import pytest

import qham

SOURCE = pathlib.Path(os.environ.get("QHAM_SOURCE_DIR", pathlib.Path(__file__).parents[2]))


def test_activation_closed_forms():
    assert qham.activation("simplified", 3 * math.pi / 8) == pytest.approx(0.8535533905932737, abs=1e-15)
    assert qham.activation("rus", math.pi / 3) == pytest.approx(0.9, abs=1e-15)
    assert qham.gamma(1.0, 4) == pytest.approx(math.pi / 16)
    assert qham.phi(3.0, math.pi / 16) == pytest.approx(7 * math.pi / 16)


def test_hebbian_is_symmetric_with_zero_diagonal():
    w = qham.hebbian([[1, -1, 1], [1, 1, -1]])
    assert all(w[i][i] == 0 for i in range(3))
    assert all(w[i][j] == w[j][i] for i in range(3) for j in range(3))


def test_counts_and_overhead():
    assert qham.predicted_counts_simplified(4, 2) == {"total": 74, "single_qubit": 56, "cnot": 18}
    assert qham.qubit_overhead(4, 1, mode="fresh") == 5
    assert qham.qubit_overhead(4, 7) == 5


def test_classical_capacity():
    assert qham.classical_capacity(4, 0.0) == pytest.approx(1.4426950408889634)
    with pytest.raises(qham.DomainError):
        qham.classical_capacity(1, 0.0)


def test_recall_config_file():
    config = json.loads((SOURCE / "configs" / "recall_n4_corrupted.json").read_text())
    doc = qham.recall(config)
    assert doc["data"]["majority_vote"] == "0110"
    assert doc["data"]["density_accuracy"] == pytest.approx(0.99049, abs=1e-5)
    assert doc["manifest"]["subcommand"] == "recall"


def test_config_error_names_the_field():
    with pytest.raises(qham.ConfigError, match="/shots"):
        qham.recall({"schema_version": 1, "attractors": [[1, -1]], "probe": [1, 0],
                     "schedule": {"targets": [1]}, "shots": 0})


def test_capacity_is_thread_independent():
    config = {"schema_version": 1, "n": 6, "m": 1, "u": 4, "trials": 20, "shots": 128}
    one = qham.capacity(config, seed=5, threads=1)["data"]
    three = qham.capacity(config, seed=5, threads=3)["data"]
    assert one == three


def test_complexity_and_devices():
    doc = qham.complexity("2:3", "1:2", "0:1")
    assert doc["exit_code"] == 0
    names = [d["name"] for d in qham.devices()["data"]["devices"]]
    assert "ibmq_16_melbourne" in names
