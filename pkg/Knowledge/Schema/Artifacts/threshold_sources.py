from dataclasses import dataclass
from typing import Optional

from Code.Agents.hoepr.hoepr.models import Provenance


@dataclass
class ThresholdSource:
    """Where a separability threshold comes from."""
    provenance: Provenance
    name: str
    expression: str
    notes: Optional[str] = None


# Convenience constructors

def closed_form_source(name: str, expression: str, notes: Optional[str] = None) -> ThresholdSource:
    return ThresholdSource(provenance="analytic", name=name, expression=expression, notes=notes)


def eigenvalue_table_source(order: int, notes: Optional[str] = None) -> ThresholdSource:
    return ThresholdSource(
        provenance="numeric_table",
        name=f"bipartite minimal eigenvalue, order {order}",
        expression=f"Λ({order}) = 2^{order // 2} λ({order})",
        notes=notes,
    )


def vacuum_source(expression: str, notes: Optional[str] = None) -> ThresholdSource:
    return ThresholdSource(provenance="vacuum", name="two-mode vacuum value", expression=expression, notes=notes)
