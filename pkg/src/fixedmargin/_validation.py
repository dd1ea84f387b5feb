import numbers

import numpy as np
from sklearn.utils import check_array


def check_binary_matrix(X, copy=False):
    """Validate ``X`` as a 2-D 0/1 matrix and return it as a uint8 array."""
    X = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1,
                    copy=copy)
    if X.dtype == bool:
        return X.astype(np.uint8)
    if not np.isin(X, (0, 1)).all():
        raise ValueError("matrix cells must be 0 or 1")
    return np.ascontiguousarray(X, dtype=np.uint8)


def check_seed(seed):
    """Return an int seed, drawing fresh entropy when ``seed`` is None."""
    if seed is None:
        return int(np.random.SeedSequence().entropy % 2**64)
    if isinstance(seed, numbers.Integral) and not isinstance(seed, bool):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        return int(seed) % 2**64
    raise TypeError(f"seed must be an int or None, got {type(seed).__name__}")


def check_fill(fill, open_interval=False):
    fill = float(fill)
    if open_interval:
        if not 0.0 < fill < 1.0:
            raise ValueError(f"fill must lie in (0, 1), got {fill}")
    elif not 0.0 <= fill <= 1.0:
        raise ValueError(f"fill must lie in [0, 1], got {fill}")
    return fill
