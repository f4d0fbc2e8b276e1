from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from Code.Assets.Tools.core.artifact import Artifact
from Code.Agents.hoepr.hoepr.models import CriterionReport, HierarchyReport, ScanReport
from .threshold_sources import ThresholdSource


@dataclass
class CriterionArtifact(Artifact):
    """A criterion evaluated on one state, with the provenance of its threshold."""
    state: Dict[str, Any] = field(default_factory=dict)
    report: Optional[CriterionReport] = None
    closed_form: Optional[float] = None
    sources: List[ThresholdSource] = field(default_factory=list)


@dataclass
class ScanArtifact(Artifact):
    """Randomized Gaussian scan of the strict power criterion."""
    report: Optional[ScanReport] = None


@dataclass
class HierarchyArtifact(Artifact):
    report: Optional[HierarchyReport] = None


@dataclass
class ThresholdCatalogArtifact(Artifact):
    """Every registered threshold record, grouped by criterion key."""
    thresholds: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
