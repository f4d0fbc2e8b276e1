from dataclasses import dataclass, fields, MISSING
from typing import Any, Dict, Type, TypeVar

T = TypeVar("T", bound="Artifact")


def _plain(value: Any) -> Any:
    """Convert nested dataclasses, pydantic models and numpy scalars to JSON-safe values."""
    if hasattr(value, "model_dump"):
        return value.model_dump()
    if hasattr(value, "__dataclass_fields__"):
        return {f.name: _plain(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "tolist"):
        return value.tolist()
    return value


@dataclass
class Artifact:
    schema: int = 1

    def to_dict(self) -> Dict[str, Any]:
        """Serialize exported fields.

        Fields whose metadata sets ``export=False`` stay in memory only (eigenvectors,
        coefficient arrays). ``key`` metadata renames a field on the wire.
        """
        out: Dict[str, Any] = {}
        for f in fields(self):
            if not f.metadata.get("export", True):
                continue
            out[f.metadata.get("key", f.name)] = _plain(getattr(self, f.name))
        return out

    @classmethod
    def from_dict(cls: Type[T], data: Dict[str, Any]) -> T:
        """Rebuild an artifact from its exported payload.

        Keys follow the ``key`` metadata (``lambda`` for ``lam``). Absent keys take the
        field default, or None when there is none; unknown keys are ignored.
        """
        init_kwargs: Dict[str, Any] = {}
        for f in fields(cls):
            key = f.metadata.get("key", f.name)
            if key in data:
                init_kwargs[f.name] = data[key]
            elif f.default is not MISSING:
                init_kwargs[f.name] = f.default
            elif f.default_factory is not MISSING:
                init_kwargs[f.name] = f.default_factory()
            else:
                init_kwargs[f.name] = None

        return cls(**init_kwargs)
