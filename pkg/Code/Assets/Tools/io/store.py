from __future__ import annotations
from typing import Any, Dict, Optional
import json
from pathlib import Path

import pandas as pd

from Code.Assets.Tools.core.artifact import Artifact

# Map artifact class name → Data subfolder
DEFAULT_FOLDERS = {
    "EigenArtifact":            ("Data", "Outputs", "spectral"),
    "BipartiteArtifact":        ("Data", "Outputs", "spectral"),
    "WavefunctionArtifact":     ("Data", "Outputs", "wavefunctions"),
    "FitArtifact":              ("Data", "Outputs", "wavefunctions"),
    "CriterionArtifact":        ("Data", "Outputs", "criteria"),
    "ScanArtifact":             ("Data", "Outputs", "criteria"),
    "HierarchyArtifact":        ("Data", "Outputs", "criteria"),
    "ThresholdCatalogArtifact": ("Data", "Outputs", "criteria"),
}


def payload(art: Artifact, config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Exported fields plus the effective configuration under ``config``."""
    out = art.to_dict()
    if config is not None:
        out["config"] = config
    return out


def dumps(data: Dict[str, Any]) -> str:
    """Deterministic JSON; non-finite numbers raise ValueError instead of being written."""
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False, ensure_ascii=False)


def save_artifact(art: Artifact, filename: str | None = None, root: str | Path = ".", config: Optional[Dict[str, Any]] = None) -> Path:
    cls = type(art).__name__
    parts = DEFAULT_FOLDERS.get(cls)
    if not parts:
        raise ValueError(f"No folder mapping for artifact type {cls}")
    base = Path(root, *parts)
    base.mkdir(parents=True, exist_ok=True)
    if filename is None:
        filename = f"{cls}.json"
    path = base / filename
    path.write_text(dumps(payload(art, config)), encoding="utf-8")
    return path


def grid_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format="%.12e", lineterminator="\n")


def save_grid(frame: pd.DataFrame, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(grid_csv(frame), encoding="utf-8")
    return p
