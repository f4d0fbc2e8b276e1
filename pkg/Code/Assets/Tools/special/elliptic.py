import numpy as np
from scipy.special import ellipk

from Code.Assets.Tools.core.errors import DomainError


def elliptic_K(k):
    """Complete elliptic integral of the first kind, K(k) = ∫₀^{π/2} dθ/√(1 − k² sin²θ).

    Takes the modulus k; scipy's ``ellipk`` takes the parameter m = k².
    """
    k = np.asarray(k, dtype=float)
    if np.any(k < 0) or np.any(k >= 1):
        raise DomainError("elliptic_K needs 0 <= k < 1")
    out = ellipk(k * k)
    return float(out) if out.ndim == 0 else out
