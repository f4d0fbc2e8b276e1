"""
Environment-backed defaults. A ``.env`` file at the working directory is honoured
through python-dotenv; explicit CLI flags override everything read here.

  HOEPR_THREADS        worker cap for scans and sweeps (default 1)
  HOEPR_DENSE_CAP      largest N accepted by the dense solver (default 4000)
  HOEPR_BIPARTITE_CAP  largest product-basis dimension N² (default 90000)
  HOEPR_TOL            eigen-residual tolerance (default 1e-10)
"""
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field


class Settings(BaseModel):
    threads: int = Field(1, ge=1)
    dense_cap: int = Field(4000, ge=1)
    bipartite_cap: int = Field(90_000, ge=4)
    tol: float = Field(1e-10, gt=0)


def load_settings(dotenv: bool = True) -> Settings:
    if dotenv:
        load_dotenv()
    raw = {
        "threads": os.getenv("HOEPR_THREADS"),
        "dense_cap": os.getenv("HOEPR_DENSE_CAP"),
        "bipartite_cap": os.getenv("HOEPR_BIPARTITE_CAP"),
        "tol": os.getenv("HOEPR_TOL"),
    }
    return Settings(**{k: v for k, v in raw.items() if v not in (None, "")})
