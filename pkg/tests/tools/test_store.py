
import json

import numpy as np
import pandas as pd
import pytest

from Code.Assets.Tools.io.store import dumps, grid_csv, payload, save_artifact, save_grid
from Knowledge.Schema.Artifacts.spectral import EigenArtifact


def _eigen():
    return EigenArtifact(order=2, N=10, lam=1.0, residual=0.0, converged=True, coefficients=np.ones(3))


def test_payload_renames_and_hides_fields():
    out = payload(_eigen(), {"command": "lambda"})
    assert out["lambda"] == 1.0
    assert "lam" not in out
    assert "coefficients" not in out
    assert out["schema"] == 1
    assert out["config"] == {"command": "lambda"}


def test_dumps_is_deterministic_and_sorted():
    a = dumps({"b": 1, "a": 2.5})
    assert a == dumps({"a": 2.5, "b": 1})
    assert a.index('"a"') < a.index('"b"')


def test_dumps_rejects_nan():
    with pytest.raises(ValueError):
        dumps({"x": float("nan")})


def test_save_artifact_writes_payload(tmp_path):
    path = save_artifact(_eigen(), root=tmp_path, config={"command": "lambda"})
    assert path.parent == tmp_path / "Data" / "Outputs" / "spectral"
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["lambda"] == 1.0
    assert data["config"]["command"] == "lambda"


def test_save_unmapped_artifact(tmp_path):
    from Code.Assets.Tools.core.artifact import Artifact

    with pytest.raises(ValueError):
        save_artifact(Artifact(), root=tmp_path)


def test_grid_csv_round_trip(tmp_path):
    frame = pd.DataFrame({"x": [0.0, 0.5], "psi": [0.75, 0.66]})
    path = save_grid(frame, tmp_path / "grid.csv")
    back = pd.read_csv(path)
    assert list(back.columns) == ["x", "psi"]
    np.testing.assert_allclose(back.to_numpy(), frame.to_numpy())
    assert grid_csv(frame).startswith("x,psi\n")
