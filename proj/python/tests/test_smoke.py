# Copyright 2026 The DTIM Authors.
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
import subprocess

import pytest

import dtim

EDGES = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (1, 4), (5, 1)]


@pytest.fixture
def diffusion():
    graph = dtim.SocialGraph.from_edges(6, EDGES)
    return dtim.build_diffusion(graph)


def test_worked_example():
    assert dtim.example2("global") == ["u1"]
    assert dtim.example2("local") == ["b"]


def test_pipeline(diffusion):
    scores = dtim.lurker_rank(diffusion.graph)
    assert math.isclose(sum(scores), 1.0)
    ell = diffusion.node_weights()
    assert all(0.0 <= x < 1.0 for x in ell)
    targets = dtim.select_targets(diffusion, L_perc=50)
    assert targets
    result = dtim.select(diffusion, targets, k=2, alpha=0.5, eta=0.0)
    seeds = [s["node"] for s in result["seeds"]]
    assert len(seeds) <= 2
    exact = dtim.exact_capital(diffusion, seeds, targets)
    sim = dtim.simulate(diffusion, seeds, targets, runs=20000, rng_seed=3)
    assert abs(sim["capital"] - exact) <= 4 * sim["std_error"] + 1e-12
    again = dtim.simulate(diffusion, seeds, targets, runs=20000, rng_seed=3,
                          threads=2)
    assert again["capital"] == sim["capital"]


def test_ris(diffusion):
    targets = dtim.select_targets(diffusion, L_perc=50)
    out = dtim.ris_select(diffusion, targets, k=2, variant="capital-only",
                          rng_seed=1, theta=5000)
    assert out["pool_size"] == 5000
    assert 1 <= len(out["seeds"]) <= 2


def test_round_trip(diffusion):
    text = diffusion.to_text()
    back = dtim.DiffusionGraph.from_text(text)
    assert back.edge_weights() == diffusion.edge_weights()


def test_errors(diffusion):
    with pytest.raises(dtim.ParseError):
        dtim.parse_edge_list("0 x\n")
    with pytest.raises(dtim.Error):
        dtim.select(diffusion, [0], k=0)
    assert dtim.seed_overlap([1, 2], [2, 3], 2) == 0.5
    assert dtim.spearman([1, 2, 3], [2, 4, 9]) == pytest.approx(1.0)


@pytest.mark.skipif("DTIM_CLI" not in os.environ, reason="CLI path not set")
def test_cli(tmp_path):
    cli = os.environ["DTIM_CLI"]
    out = subprocess.run([cli, "example2"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.startswith("seed: u1")
    assert subprocess.run([cli, "select"], capture_output=True).returncode == 2
    run = subprocess.run([cli, "example2", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert run.returncode == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["subcommand"] == "example2"
