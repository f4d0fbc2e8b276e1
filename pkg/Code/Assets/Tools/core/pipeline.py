from typing import List

from .artifact import Artifact
from .stage import Stage


class Pipeline:
    """Stages applied in order; each stage checks its input and output types."""

    def __init__(self, stages: List[Stage]):
        if not stages:
            raise ValueError("pipeline needs at least one stage")
        self.stages = stages

    def run(self, art: Artifact, **kwargs) -> Artifact:
        cur = art
        for st in self.stages:
            cur = st(cur, **kwargs)
        return cur

    @property
    def output_type(self) -> type:
        return self.stages[-1].output_type
