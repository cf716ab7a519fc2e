"""Input coercion shared by the estimator facade and the command line."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .complex import SimplicialComplex, build_complex
from .kernels import Complexon, StepComplexon, induce_complexon

__all__ = ["check_complex", "check_step_complexon", "check_dimension", "check_signals"]


def check_complex(K) -> SimplicialComplex:
    """Accept a complex, or a ``(n, simplex_list)`` pair to be closed."""
    if isinstance(K, SimplicialComplex):
        return K
    if isinstance(K, tuple) and len(K) == 2:
        return build_complex(K[0], K[1])
    raise TypeError(f"expected a SimplicialComplex or (n, simplices), got {type(K).__name__}")


def check_step_complexon(X) -> StepComplexon:
    """Complexes are induced; step complexons pass through."""
    if isinstance(X, StepComplexon):
        return X
    if isinstance(X, Complexon):
        raise TypeError("a step complexon or simplicial complex is required")
    return induce_complexon(check_complex(X))


def check_dimension(d, top: int) -> int:
    if int(d) != d or not 1 <= d <= top:
        raise ValueError(f"dimension must be an integer in 1..{top}, got {d!r}")
    return int(d)


def check_signals(X, n: int) -> np.ndarray:
    """2-D float array of step signals, one per row, each with ``n`` cell values."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != n:
        raise ValueError(f"signals have {X.shape[1]} cell values but the operator has {n} cells")
    return X
