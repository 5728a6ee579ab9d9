# Copyright 2026 The nsbox Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math
from fractions import Fraction

import pytest

import nsbox


def test_pr_entries_and_marginals():
    pr = nsbox.pr_box()
    assert pr((1, 1), (1, 1)) == Fraction(1, 2)
    assert pr((1, 1), (2, 2)) == 0
    assert nsbox.is_nonsignalling(pr)
    table = nsbox.canonical_marginals(pr)
    assert len(table) == nsbox.param_count(pr.scenario) == 9
    assert nsbox.from_marginals(pr.scenario, table) == pr


@pytest.mark.parametrize("kind", ["neg-meas", "neg-state"])
@pytest.mark.parametrize("compressed", [False, True])
def test_models_reconstruct(kind, compressed):
    box = nsbox.random_nonsignalling_box(nsbox.Scenario([2, 2], [2, 2]), 3)
    model = nsbox.build_model(box, kind, compressed)
    assert nsbox.evaluate(model) == box
    assert nsbox.evaluate_trace(nsbox.lift(model)) == box
    assert nsbox.verify(nsbox.lift(model))["well_formed"]
    if compressed:
        assert model.space_sizes == [3, 3]


def test_negative_state_signature():
    model = nsbox.build_model(nsbox.pr_box(), "neg-state")
    assert sum(model.state) == 1
    assert Fraction(-1, 2) in model.state
    q = nsbox.lift(model)
    assert q.dimension == 25
    report = nsbox.verify(q)
    assert report["measurements_projective"] and not report["state_positive"]


def test_locality():
    cert = nsbox.is_local(nsbox.pr_box(), chsh=True)
    assert cert["verdict"] == "nonlocal"
    assert (cert["box_value"], cert["local_bound"]) == (4, 2)
    t = nsbox.tsirelson_box()
    assert abs(float(nsbox.chsh_value(t)) - 2 * math.sqrt(2)) < 1e-9
    assert nsbox.is_local(t)["verdict"] == "nonlocal"
    u = nsbox.uniform_box(nsbox.Scenario([2, 2], [2, 2]))
    local = nsbox.is_local(u)
    assert local["verdict"] == "local"
    assert sum(w for _, w in local["weights"]) == 1


def test_sampler_is_seeded():
    model = nsbox.build_model(nsbox.pr_box(), "neg-meas")
    a = nsbox.sample(model, (1, 1), 5000, 9)
    assert a == nsbox.sample(model, (1, 1), 5000, 9)
    means, errors = a
    assert abs(means[0] - 0.5) <= 4 * errors[0]


def test_json_round_trip_and_errors():
    text = nsbox.pr_box().to_json()
    assert nsbox.Box.from_json(text).to_json() == text
    with pytest.raises(nsbox.ParseError):
        nsbox.Box.from_json("{")
    with pytest.raises(nsbox.Error):
        nsbox.Box(nsbox.Scenario([2], [1]), [0.5, 0.5])
    signalling = nsbox.Box(nsbox.Scenario([2, 2], [1, 2]), [1, 0, 0, 0, 0, 0, 1, 0])
    assert not nsbox.is_nonsignalling(signalling)
    with pytest.raises(nsbox.SignallingError):
        nsbox.build_model(signalling, "neg-meas")
