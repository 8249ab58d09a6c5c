import json
import math

import numpy as np
import pytest

from slicelog.checks import obstruction_fixtures
from slicelog.fileio import FunctionFileError, jet_from_dict, jet_to_dict, load_function, qpoly, save_function
from slicelog.series import QJet, RJet, jet_distance
from slicelog.starexp import star_exp_formula


def test_qpoly_is_padded_and_truncated():
    doc = qpoly([[1, 2, 3, 4], [0, 1, 0, 0]])
    assert jet_from_dict(doc, 5).coeffs.shape == (6, 4)
    F = jet_from_dict(doc, 0)
    assert F.order == 0 and list(F.coeffs[0]) == [1, 2, 3, 4]


def test_rpoly():
    F = jet_from_dict({"kind": "rpoly", "coeffs": [1, 2], "trust_radius": 3}, 3)
    assert isinstance(F, RJet)
    assert list(F.coeffs) == [1, 2, 0, 0] and F.trust_radius == 3.0


def test_null_radius_means_unbounded():
    F = jet_from_dict({"kind": "rpoly", "coeffs": [1], "trust_radius": None}, 2)
    assert F.trust_radius == math.inf
    assert jet_to_dict(F)["trust_radius"] is None


def test_derived_kinds_match_the_fixtures(data_dir):
    for name, (_, F) in zip(("exp_f1", "exp_f2", "exp_f3"), obstruction_fixtures(64)):
        G = load_function(data_dir / f"{name}.json", 64)
        assert jet_distance(G, star_exp_formula(F)) <= 1e-15
        neg = load_function(data_dir / f"neg_{name}.json", 64)
        assert jet_distance(neg, -G) == 0.0


def test_round_trip(tmp_path, rng):
    for F in (QJet(rng.standard_normal((7, 4)), trust_radius=0.25), RJet(rng.standard_normal(4))):
        path = tmp_path / "f.json"
        save_function(path, F)
        back = load_function(path, F.order)
        assert type(back) is type(F)
        assert np.array_equal(back.coeffs, F.coeffs) and back.trust_radius == F.trust_radius


def test_saved_files_are_stable(tmp_path):
    F = QJet(np.array([[0.1, -0.0, 1e-300, 2.5]]))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_function(a, F)
    save_function(b, jet_from_dict(json.loads(a.read_text()), 0))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "doc, message",
    [
        ([1, 2], "object"),
        ({"kind": "cubic"}, "unknown function kind"),
        ({"kind": "qpoly"}, "coeffs"),
        ({"kind": "qpoly", "coeffs": []}, "empty"),
        ({"kind": "qpoly", "coeffs": [[1, 2, 3]]}, "rows"),
        ({"kind": "qpoly", "coeffs": [["a", 0, 0, 0]]}, "numeric"),
        ({"kind": "rpoly", "coeffs": [[1, 2]]}, "flat"),
        ({"kind": "rpoly", "coeffs": [float("nan")]}, "finite"),
        ({"kind": "rpoly", "coeffs": [1], "trust_radius": -1}, "positive"),
        ({"kind": "rpoly", "coeffs": [1], "trust_radius": True}, "positive"),
        ({"kind": "star_exp"}, "arg"),
        ({"kind": "star_prod", "factors": []}, "factors"),
    ],
)
def test_malformed(doc, message):
    with pytest.raises(FunctionFileError, match=message):
        jet_from_dict(doc, 4)


def test_broken_json(data_dir):
    with pytest.raises(FunctionFileError, match="not valid JSON"):
        load_function(data_dir / "broken.json")


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_function(tmp_path / "nope.json")
