"""scikit-learn style wrapper around the induced shift operator."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .kernels import marginal
from .linalg import sym_eig
from .spectral import StepSignal, apply_cso
from .validation import check_dimension, check_signals, check_step_complexon

__all__ = ["ComplexonShift"]


class ComplexonShift(TransformerMixin, BaseEstimator):
    """Shift operator of a step complexon, applied to batches of step signals.

    ``fit`` takes a :class:`~complexon.SimplicialComplex` (which is induced)
    or a :class:`~complexon.StepComplexon`. ``transform`` maps an
    ``(n_signals, n)`` array of cell values to the shifted cell values.

    Parameters
    ----------
    dim : int
        Dimension of the shift operator.
    form : {"marginal", "message-passing"}
        Which of the two equivalent definitions to evaluate in ``transform``.

    Attributes
    ----------
    complexon_ : StepComplexon
    kernel_ : ndarray of shape (n, n)
        Cell values of the marginal kernel.
    eigenvalues_ : ndarray
        Operator eigenvalues, descending.
    eigenfunctions_ : ndarray of shape (n, n)
        Column k holds the cell values of the k-th eigenfunction.
    n_cells_ : int
    """

    def __init__(self, dim: int = 2, form: str = "marginal"):
        self.dim = dim
        self.form = form

    def fit(self, X, y=None):
        W = check_step_complexon(X)
        d = check_dimension(self.dim, W.D)
        if self.form not in ("marginal", "message-passing"):
            raise ValueError(f"unknown form {self.form!r}")
        self.complexon_ = W
        self.n_cells_ = W.n
        self.kernel_ = marginal(W, d).values
        spec = sym_eig(self.kernel_).scaled(1.0 / W.n, vector_factor=math.sqrt(W.n))
        self.spectrum_ = spec
        self.eigenvalues_ = spec.values
        self.eigenfunctions_ = spec.vectors
        return self

    def transform(self, X):
        check_is_fitted(self, "kernel_")
        X = check_signals(X, self.n_cells_)
        if self.form == "marginal":
            return X @ self.kernel_.T / self.n_cells_
        return np.vstack([apply_cso(self.complexon_, self.dim, StepSignal(row), form=self.form).values for row in X])

    def eigenvalue(self, i: int) -> float:
        """Eigenvalue at a signed index (1 largest, -1 most negative, zero-padded)."""
        check_is_fitted(self, "spectrum_")
        return self.spectrum_.eigenvalue(i)
