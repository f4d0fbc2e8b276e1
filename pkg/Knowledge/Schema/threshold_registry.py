from dataclasses import dataclass, field
from math import factorial, sqrt
from typing import Dict, List, Literal, Optional

from Code.Assets.Tools.core.errors import UnknownCriterionError
from Code.Agents.hoepr.hoepr.models import CriterionId, ThresholdEntry, ThresholdStep
from Knowledge.Schema.Artifacts.threshold_sources import (
    ThresholdSource,
    closed_form_source,
    eigenvalue_table_source,
    vacuum_source,
)

Role = Literal["threshold", "weaker", "reference"]

# Minimal single-mode eigenvalues λ(2n) and bipartite Λ(2n) = 2ⁿ λ(2n)
SINGLE_MODE_LAMBDA: Dict[int, float] = {
    2: 1.0,
    4: 1.39672823,
    6: 2.95304540,
    8: 8.28911703,
    10: 28.97408955,
    12: 121.21680669,
}
BIPARTITE_LAMBDA: Dict[int, float] = {
    2: 2.0,
    4: 5.5868,
    6: 23.624,
    8: 132.626,
    10: 927.171,
    12: 7757.88,
}
FACTORIZABLE_QUARTIC_MIN = -0.1456


@dataclass
class ThresholdRecord:
    """One known bound for a criterion. Exactly one record per criterion carries role ``threshold``."""
    key: str
    kind: str
    order: Optional[int]
    value: float
    role: Role
    source: ThresholdSource


@dataclass
class ThresholdRegistry:
    """Central catalog of separability thresholds with their provenance."""

    _records: Dict[str, List[ThresholdRecord]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        # ── duan_higher: Λ(2n) for all tabulated orders ─────────────────
        for order, value in BIPARTITE_LAMBDA.items():
            role: Role = "weaker" if order == 4 else "threshold"
            self._register(ThresholdRecord(f"duan_higher:{order}", "duan_higher", order, value, role, eigenvalue_table_source(order)))

        # ── order 4 refinements ─────────────────────────────────────────
        self._register(
            ThresholdRecord(
                "duan_higher:4", "duan_higher", 4, 8 * sqrt(2.0) - 6, "weaker",
                closed_form_source("analytic fourth-order bound", "2(4√2 − 3)"),
            )
        )
        self._register(
            ThresholdRecord(
                "duan_higher:4", "duan_higher", 4, 2 * SINGLE_MODE_LAMBDA[4] + 3, "threshold",
                ThresholdSource(
                    provenance="numeric_table",
                    name="convexity bound on separable states",
                    expression="2λ(4) + 3",
                    notes="tightest implemented order-4 threshold",
                ),
            )
        )
        self._register(
            ThresholdRecord(
                "duan_higher:4", "duan_higher", 4, 6 + 0.5 * FACTORIZABLE_QUARTIC_MIN, "reference",
                ThresholdSource(
                    provenance="numeric_table",
                    name="factorizable-state minimum",
                    expression="6 + ½ min⟨a⁴ + a†⁴ + 6a†²a² + 24a†a⟩",
                    notes="upper end of the interval holding the exact separable minimum",
                ),
            )
        )
        self._register(
            ThresholdRecord("duan_higher:4", "duan_higher", 4, 6.0, "reference", vacuum_source("2 · 2² · 3/4"))
        )
        self._register(
            ThresholdRecord(
                "duan_higher:6", "duan_higher", 6, 2 * SINGLE_MODE_LAMBDA[6] + 7.5, "weaker",
                ThresholdSource(
                    provenance="numeric_table",
                    name="convexity bound on separable states",
                    expression="2λ(6) + 15/2",
                    notes="weaker than Λ(6)",
                ),
            )
        )

        # ── power / dbS ───────────────────────────────────────────────
        self._register(
            ThresholdRecord("dbS:2", "dbS", 2, 2.0, "threshold", closed_form_source("mean-subtracted power criterion", "2"))
        )

    # ────────────────────────────────────────────────────────────────
    # Helpers
    # ────────────────────────────────────────────────────────────────

    def _register(self, record: ThresholdRecord) -> None:
        bucket = self._records.setdefault(record.key, [])
        if record.role == "threshold" and any(r.role == "threshold" for r in bucket):
            raise ValueError(f"Threshold for '{record.key}' already registered")
        bucket.append(record)

    def records(self, criterion: CriterionId) -> List[ThresholdRecord]:
        if criterion.kind == "power":
            n = criterion.order
            return [
                ThresholdRecord(
                    f"power:{n}", "power", n, float(factorial(n)), "threshold",
                    closed_form_source("power criterion on separable states", f"{n}!"),
                )
            ]
        key = f"{criterion.kind}:{criterion.order}"
        if key not in self._records:
            raise UnknownCriterionError(f"No threshold registered for {criterion.label}")
        return sorted(self._records[key], key=lambda r: r.value)

    def get(self, criterion: CriterionId) -> ThresholdEntry:
        records = self.records(criterion)
        best = next(r for r in records if r.role == "threshold")
        chain = [
            ThresholdStep(value=r.value, provenance=r.source.provenance, note=f"{r.role}: {r.source.name} ({r.source.expression})")
            for r in records
        ]
        return ThresholdEntry(value=best.value, provenance=best.source.provenance, chain=chain)

    def all(self) -> Dict[str, List[ThresholdRecord]]:
        return {k: list(v) for k, v in self._records.items()}


# Single global registry instance you can import anywhere
threshold_registry = ThresholdRegistry()
