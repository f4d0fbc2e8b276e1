from dataclasses import dataclass
from typing import Optional

from Code.Assets.Tools.core.artifact import Artifact
from Code.Agents.hoepr.hoepr.models import RunConfig


@dataclass
class RunRequestArtifact(Artifact):
    """Validated command configuration handed to the first stage."""
    config: Optional[RunConfig] = None
