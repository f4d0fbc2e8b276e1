from .config import BIPARTITE_TRUNCATION, RunConfig, default_truncation
from .criteria import (
    CriterionId,
    CriterionKind,
    CriterionReport,
    HierarchyReport,
    HierarchyRow,
    Provenance,
    Sign,
    ThresholdEntry,
    ThresholdStep,
    Verdict,
)
from .gaussian import CovarianceMatrix, FourthMoments, InequalityChain, ScanReport
from .spectral import (
    BipartiteFockVector,
    EigenResult,
    FockVector,
    GrowthReport,
    MomentPair,
    ScalingCheck,
    SweepPoint,
    SweepReport,
)
from .states import Family, StateSpec
from .wavefunc import BesselGaussFit, DerivativeTable

__all__ = [
    "BIPARTITE_TRUNCATION", "RunConfig", "default_truncation",
    "CriterionId", "CriterionKind", "CriterionReport", "HierarchyReport", "HierarchyRow",
    "Provenance", "Sign", "ThresholdEntry", "ThresholdStep", "Verdict",
    "CovarianceMatrix", "FourthMoments", "InequalityChain", "ScanReport",
    "BipartiteFockVector", "EigenResult", "FockVector", "GrowthReport", "MomentPair", "ScalingCheck",
    "SweepPoint", "SweepReport",
    "Family", "StateSpec",
    "BesselGaussFit", "DerivativeTable",
]
