"""Raised adjacency matrices and spectra of complexon shift operators.

The d-dimensional shift operator of a complexon ``W`` is the integral
operator whose kernel is the marginal ``W^(d)`` integrated over all but two
arguments. For a complex ``K`` on ``n`` nodes its induced operator acts on
step signals as ``x -> N^(d) x / n``, where ``N^(d)`` is the raised
adjacency matrix, so its spectrum is that of ``N^(d)`` divided by ``n``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complex import SimplicialComplex
from .kernels import (
    Complexon,
    MarginalKernel,
    PolynomialComplexon,
    PolynomialKernel,
    StepComplexon,
    marginal,
)
from .linalg import DEFAULT_TOL, Spectrum, sym_eig
from .polynomial import Polynomial

__all__ = [
    "RaisedAdjacency",
    "StepSignal",
    "PolynomialSignal",
    "raised_adjacency",
    "cso_spectrum",
    "apply_cso",
    "discretized_kernel_spectrum",
    "polynomial_kernel_spectrum",
    "inner",
    "format_matrix",
    "parse_matrix",
    "format_spectrum",
]


@dataclass(frozen=True)
class RaisedAdjacency:
    n: int
    d: int
    matrix: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def raised_adjacency(K: SimplicialComplex, d: int, ordered: bool = True) -> RaisedAdjacency:
    """d-raised adjacency matrix of ``K``.

    For ``d == 1`` this is the 0/1 adjacency of the 1-skeleton. For
    ``d >= 2`` entry ``(i, j)`` counts the ways to complete ``{v_i, v_j}``
    to a d-simplex, divided by ``n ** (d - 1)``. With ``ordered=True`` the
    ``d - 1`` completing vertices are counted as ordered tuples (each
    d-simplex through both vertices contributes ``(d - 1)!``), which is
    the normalisation under which the matrix equals the cell values of the
    induced marginal. ``ordered=False`` counts each completing face once.
    The two agree for ``d <= 2``. Dimensions above ``dim K`` give zeros.
    """
    if d < 1:
        raise ValueError("raised adjacency needs d >= 1")
    n = K.n
    counts = np.zeros((n, n))
    simplices = K.simplex_array(d) - 1 if d <= K.dim else np.zeros((0, d + 1), dtype=np.int64)
    for a in range(d + 1):
        for b in range(a + 1, d + 1):
            np.add.at(counts, (simplices[:, a], simplices[:, b]), 1.0)
    counts = counts + counts.T
    if d == 1:
        M = counts
    else:
        weight = math.factorial(d - 1) if ordered else 1
        M = counts * weight / n ** (d - 1)
    M.setflags(write=False)
    return RaisedAdjacency(n, d, M)


def cso_spectrum(K: SimplicialComplex, d: int, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenpairs of the induced d-dimensional shift operator of ``K``.

    Eigenvalues are those of the raised adjacency matrix divided by ``n``.
    ``vectors[:, k]`` holds the values of the k-th eigenfunction on the
    cells of the n-equipartition, i.e. ``sqrt(n)`` times the unit
    eigenvector, so the eigenfunctions are orthonormal in L2[0, 1].
    """
    N = raised_adjacency(K, d)
    spec = sym_eig(N.matrix, tol=tol)
    return spec.scaled(1.0 / K.n, vector_factor=math.sqrt(K.n))


# signals --------------------------------------------------------------------


class StepSignal:
    """Signal constant on each cell of the n-equipartition."""

    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("step signal values must be a non-empty vector")
        self.values = values

    @property
    def n(self) -> int:
        return self.values.size

    def __call__(self, x):
        idx = np.minimum(np.floor(np.asarray(x, dtype=float) * self.n).astype(np.int64), self.n - 1)
        out = self.values[idx]
        return float(out) if np.ndim(out) == 0 else out

    def __repr__(self) -> str:
        return f"StepSignal(n={self.n})"


class PolynomialSignal:
    """Signal given by a univariate polynomial; ``coeffs[k]`` multiplies ``x**k``."""

    def __init__(self, poly):
        if not isinstance(poly, Polynomial):
            poly = Polynomial.from_terms(1, [(c, (k,)) for k, c in enumerate(poly)])
        if poly.nvars != 1:
            raise ValueError("a signal is a function of one variable")
        self.poly = poly

    def coefficients(self) -> list:
        deg = self.poly.degree
        terms = self.poly.terms_dict()
        return [terms.get((k,), 0) for k in range(deg + 1)]

    def __call__(self, x):
        return self.poly(x)

    def __eq__(self, other):
        if not isinstance(other, PolynomialSignal):
            return NotImplemented
        return self.poly == other.poly

    def __repr__(self) -> str:
        return f"PolynomialSignal({self.coefficients()})"


def inner(f, g) -> float:
    """L2[0, 1] inner product of two step signals or two polynomial signals."""
    if isinstance(f, StepSignal) and isinstance(g, StepSignal):
        if f.n != g.n:
            raise ValueError("step signals live on different partitions")
        return float(np.dot(f.values, g.values) / f.n)
    if isinstance(f, PolynomialSignal) and isinstance(g, PolynomialSignal):
        return float((f.poly * g.poly).integrate([0]).terms_dict().get((), 0))
    raise TypeError("inner product needs two signals of the same kind")


def _check_dim(W: Complexon, d: int) -> None:
    if not 1 <= d <= W.D:
        raise ValueError(f"shift dimension must be in 1..{W.D}")


def apply_cso(W: Complexon, d: int, X, form: str = "marginal"):
    """Apply the d-dimensional complexon shift operator to a signal.

    ``form="marginal"`` integrates the marginal kernel against ``X``.
    ``form="message-passing"`` integrates ``W^(d)(x, z_1..z_d)`` against
    the average of ``X(z_1)..X(z_d)``. Step data gives exact finite sums,
    polynomial data exact symbolic integrals.
    """
    if form not in ("marginal", "message-passing"):
        raise ValueError(f"unknown form {form!r}")
    _check_dim(W, d)
    if isinstance(W, StepComplexon) and isinstance(X, StepSignal):
        if X.n != W.n:
            raise ValueError(f"signal has {X.n} cells but the complexon has {W.n}")
        n = W.n
        if form == "marginal":
            return StepSignal(marginal(W, d).values @ X.values / n)
        T = W.tables[d]
        out = np.zeros(n)
        for axis in range(1, d + 1):
            others = tuple(a for a in range(1, d + 1) if a != axis)
            S = T.sum(axis=others) if others else T
            out += S @ X.values
        return StepSignal(out / (d * n**d))
    if isinstance(W, PolynomialComplexon) and isinstance(X, PolynomialSignal):
        if form == "marginal":
            kernel = marginal(W, d).poly
            prod = kernel * X.poly.embed(2, [1])
            return PolynomialSignal(prod.integrate([1]))
        comp = W.components[d]
        acc = Polynomial(d + 1)
        for axis in range(1, d + 1):
            acc = acc + comp * X.poly.embed(d + 1, [axis])
        avg = acc * Fraction(1, d)
        return PolynomialSignal(avg.integrate(range(1, d + 1)))
    raise TypeError(
        f"cannot apply a {type(W).__name__} to a {type(X).__name__}; "
        "use step data with step complexons and polynomial data with polynomial complexons"
    )


def discretized_kernel_spectrum(Wbar, m: int, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of the integral operator of ``Wbar`` from an m-point midpoint grid.

    ``Wbar`` is a :class:`MarginalKernel` or any vectorised ``f(x, y)``.
    The kernel is sampled at the cell midpoints and the matrix divided by
    ``m``; eigenvectors come back as eigenfunction values on the cells.
    """
    if m < 2:
        raise ValueError("grid resolution must be at least 2")
    if isinstance(Wbar, MarginalKernel):
        G = Wbar.grid(m)
    else:
        mid = (np.arange(m) + 0.5) / m
        G = np.asarray(Wbar(mid[:, None], mid[None, :]), dtype=float) * np.ones((m, m))
    G = 0.5 * (G + G.T)
    return sym_eig(G, tol=tol).scaled(1.0 / m, vector_factor=math.sqrt(m))


def polynomial_kernel_spectrum(Wbar: PolynomialKernel) -> Spectrum:
    """Nonzero spectrum of a polynomial kernel's integral operator, without discretisation.

    Writing ``Wbar(x, y) = sum C_ab x^a y^b``, the operator maps the span of
    ``1, x, .., x^p`` into itself and acts there as ``C G`` with ``G`` the
    Hilbert Gram matrix ``1 / (a + b + 1)``. Its eigenvalues are those of
    the symmetric ``L^T C L`` for the Cholesky factor ``G = L L^T``.
    Only eigenvalues are meaningful; vectors are omitted.
    """
    terms = Wbar.poly.terms_dict()
    p = max((max(e) for e in terms), default=0)
    C = np.zeros((p + 1, p + 1))
    for (a, b), c in terms.items():
        C[a, b] = float(c)
    idx = np.arange(p + 1)
    G = 1.0 / (idx[:, None] + idx[None, :] + 1)
    L = np.linalg.cholesky(G)
    S = L.T @ C @ L
    return Spectrum(sym_eig(0.5 * (S + S.T), vectors=False).values)


# text dumps -------------------------------------------------------------------


def format_matrix(M: RaisedAdjacency) -> str:
    """Header ``n d`` then one row per line, ``%.17g`` values."""
    lines = [f"{M.n} {M.d}"]
    lines += [" ".join("%.17g" % v for v in row) for row in M.matrix]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> RaisedAdjacency:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("matrix dump must start with an 'n d' header")
    n, d = int(rows[0][0]), int(rows[0][1])
    M = np.array([[float(v) for v in r] for r in rows[1:]], dtype=float)
    if M.shape != (n, n):
        raise ValueError(f"expected {n}x{n} values, got shape {M.shape}")
    return RaisedAdjacency(n, d, M)


def format_spectrum(spec: Spectrum, n: int, d: int) -> str:
    """Header ``n d`` then ``index eigenvalue`` per line in signed order."""
    lines = [f"{n} {d}"] + [f"{i} {'%.17g' % lam}" for i, lam in spec]
    return "\n".join(lines) + "\n"


def save_text(text: str, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
