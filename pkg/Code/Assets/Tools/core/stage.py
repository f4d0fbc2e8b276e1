import logging
from typing import Generic, Type, TypeVar

from .artifact import Artifact

logger = logging.getLogger(__name__)

I = TypeVar("I", bound=Artifact)
O = TypeVar("O", bound=Artifact)


class Stage(Generic[I, O]):
    """One typed step: ``run`` maps an ``input_type`` artifact to an ``output_type`` artifact."""

    name: str
    input_type: Type[I]
    output_type: Type[O]

    def __init__(self, name: str, input_type: Type[I], output_type: Type[O]):
        self.name = name
        self.input_type = input_type
        self.output_type = output_type

    def __call__(self, inp: Artifact, **kwargs) -> O:
        if not isinstance(inp, self.input_type):
            raise TypeError(f"{self.name} expected {self.input_type.__name__}, got {type(inp).__name__}")
        logger.debug("stage: running %s", self.name)
        out = self.run(inp, **kwargs)  # type: ignore[arg-type]
        if not isinstance(out, self.output_type):
            raise TypeError(f"{self.name} produced {type(out).__name__}, declared {self.output_type.__name__}")
        return out

    def run(self, inp: I, **kwargs) -> O:
        raise NotImplementedError
