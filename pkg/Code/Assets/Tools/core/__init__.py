from .artifact import Artifact
from .pipeline import Pipeline
from .stage import Stage
