"""Complexons, their marginals and homomorphism densities.

A complexon is a graded symmetric kernel ``W^(d): [0,1]^(d+1) -> [0,1]``
for ``d = 0..D`` with ``W^(0) == 1``. Two concrete families are supported:

* :class:`StepComplexon` - constant on the cells of the standard
  n-equipartition, stored as one dense symmetric table per dimension.
  Complexes induce these through :func:`induce_complexon`.
* :class:`PolynomialComplexon` - each component a symmetric polynomial with
  rational coefficients, so marginals can be taken symbolically.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .complex import HomDensity, SimplicialComplex, SizeGuardError
from .polynomial import Polynomial, as_fraction

__all__ = [
    "Equipartition",
    "Complexon",
    "StepComplexon",
    "PolynomialComplexon",
    "MarginalKernel",
    "StepKernel",
    "PolynomialKernel",
    "QuadratureKernel",
    "Quadrature",
    "induce_complexon",
    "evaluate",
    "marginal",
    "density_in_complexon",
    "step_cut_norm",
    "example_complexon",
    "constant_complexon",
    "complexon_to_dict",
    "complexon_from_dict",
    "load_complexon",
    "dump_complexon",
    "DEFAULT_TABLE_LIMIT",
    "DEFAULT_GRID_LIMIT",
]

DEFAULT_TABLE_LIMIT = 5 * 10**7
DEFAULT_GRID_LIMIT = 10**8
MAX_CUT_NORM_N = 22
_CHUNK = 1 << 16


@dataclass(frozen=True)
class Equipartition:
    """Standard n-equipartition of [0, 1]: ``I_j = [(j-1)/n, j/n)``, last interval closed."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("partition size must be a positive integer")

    def lookup(self, x) -> np.ndarray | int:
        """1-based index j with ``x`` in ``I_j``."""
        return self.cell(x) + 1

    def cell(self, x) -> np.ndarray | int:
        """0-based cell index, vectorised."""
        arr = np.asarray(x, dtype=float)
        if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
            raise ValueError("points must lie in [0, 1]")
        idx = np.minimum(np.floor(arr * self.n).astype(np.int64), self.n - 1)
        return int(idx) if idx.ndim == 0 else idx

    def midpoints(self) -> np.ndarray:
        return (np.arange(self.n) + 0.5) / self.n

    def bounds(self, j: int) -> tuple[float, float]:
        if not 1 <= j <= self.n:
            raise ValueError(f"interval index must be in 1..{self.n}")
        return (j - 1) / self.n, j / self.n


def _check_points(points, d: int) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.ndim != 2 or pts.shape[1] != d + 1:
        raise ValueError(f"dimension {d} takes points with {d + 1} coordinates")
    if np.any(np.isnan(pts)) or np.any((pts < 0) | (pts > 1)):
        raise ValueError("coordinates must lie in [0, 1]")
    return pts


class Complexon:
    """Interface shared by the concrete complexon families."""

    D: int

    def evaluate_rows(self, d: int, points) -> np.ndarray:
        """``W^(d)`` at each row of an ``(m, d+1)`` array of points."""
        if d < 0 or d > self.D:
            raise ValueError(f"dimension {d} outside 0..{self.D}")
        pts = _check_points(points, d)
        if d == 0:
            return np.ones(pts.shape[0])
        return self._evaluate(d, pts)

    def _evaluate(self, d: int, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, *x) -> float:
        return evaluate(self, len(x) - 1, x)


class StepComplexon(Complexon):
    """Complexon constant on the cells of the n-equipartition.

    ``tables[d]`` is a symmetric array of shape ``(n,) * (d + 1)`` with
    values in [0, 1], for ``d = 1..D``.
    """

    def __init__(self, n: int, tables: Mapping[int, np.ndarray] | Sequence[np.ndarray], validate: bool = True):
        self.partition = Equipartition(n)
        self.n = int(n)
        if not isinstance(tables, Mapping):
            tables = {d + 1: t for d, t in enumerate(tables)}
        if not tables:
            raise ValueError("a complexon needs at least one positive dimension")
        self.D = max(tables)
        self.tables: dict[int, np.ndarray] = {}
        for d in range(1, self.D + 1):
            if d not in tables:
                raise ValueError(f"missing table for dimension {d}")
            t = np.asarray(tables[d], dtype=float)
            if t.shape != (self.n,) * (d + 1):
                raise ValueError(f"dimension {d} table must have shape {(self.n,) * (d + 1)}")
            if validate:
                _validate_table(t)
            t = t.copy()
            t.setflags(write=False)
            self.tables[d] = t

    def _evaluate(self, d, pts):
        cells = self.partition.cell(pts)
        return self.tables[d][tuple(cells.T)]

    def is_binary(self) -> bool:
        return all(np.all((t == 0) | (t == 1)) for t in self.tables.values())

    def __repr__(self) -> str:
        return f"StepComplexon(n={self.n}, D={self.D})"


def _validate_table(t: np.ndarray) -> None:
    if np.any(np.isnan(t)) or np.any((t < 0) | (t > 1)):
        raise ValueError("step values must lie in [0, 1]")
    for k in range(t.ndim - 1):
        axes = list(range(t.ndim))
        axes[k], axes[k + 1] = axes[k + 1], axes[k]
        if not np.array_equal(t, np.transpose(t, axes)):
            raise ValueError("step table is not symmetric under argument permutation")


class PolynomialComplexon(Complexon):
    """Complexon whose components are symmetric polynomials.

    ``components[d]`` is a :class:`Polynomial` in ``d + 1`` variables.
    Range is checked on a grid of each unit cube, which is a sanity check
    rather than a proof for polynomials with interior extrema.
    """

    def __init__(self, components: Mapping[int, Polynomial], validate: bool = True):
        comps = dict(components)
        if 0 in comps:
            if comps[0] != Polynomial.constant(1, 1):
                raise ValueError("the 0-dimensional component must be identically 1")
            del comps[0]
        if not comps:
            raise ValueError("a complexon needs at least one positive dimension")
        self.D = max(comps)
        self.components: dict[int, Polynomial] = {}
        for d in range(1, self.D + 1):
            p = comps.get(d)
            if p is None:
                raise ValueError(f"missing component for dimension {d}")
            if p.nvars != d + 1:
                raise ValueError(f"dimension {d} component must have {d + 1} variables")
            if validate:
                if not p.is_symmetric():
                    raise ValueError(f"dimension {d} component is not symmetric")
                lo, hi = p.bounds_on_grid()
                if lo < -1e-12 or hi > 1 + 1e-12:
                    raise ValueError(f"dimension {d} component leaves [0, 1] (range {lo:.4g}..{hi:.4g})")
            self.components[d] = p

    def _evaluate(self, d, pts):
        return np.clip(self.components[d].evaluate_rows(pts), 0.0, 1.0)

    def __repr__(self) -> str:
        return f"PolynomialComplexon(D={self.D})"


def example_complexon() -> PolynomialComplexon:
    """``W^(1) == 1``, ``W^(2)(x, y, z) = (x + y + z) / 3``."""
    third = "1/3"
    return PolynomialComplexon(
        {
            1: Polynomial.constant(2, 1),
            2: Polynomial.from_terms(3, [(third, (1, 0, 0)), (third, (0, 1, 0)), (third, (0, 0, 1))]),
        }
    )


def constant_complexon(values: Sequence) -> PolynomialComplexon:
    """Complexon with ``W^(d) == values[d - 1]`` for ``d = 1..len(values)``."""
    return PolynomialComplexon({d: Polynomial.constant(d + 1, v) for d, v in enumerate(values, 1)})


def induce_complexon(F: SimplicialComplex, limit: int = DEFAULT_TABLE_LIMIT) -> StepComplexon:
    """Step complexon of a complex: 1 on cells whose indices form a simplex.

    Cells with a repeated index are 0 for ``d >= 1``. A complex of
    dimension 0 yields ``W^(1) == 0``.
    """
    n = F.n
    D = max(F.dim, 1)
    if n ** (D + 1) > limit:
        raise SizeGuardError(f"dense tables of size {n}^{D + 1} exceed the limit {limit}")
    tables = {}
    for d in range(1, D + 1):
        t = np.zeros((n,) * (d + 1))
        arr = F.simplex_array(d) - 1
        if arr.size:
            for perm in itertools.permutations(range(d + 1)):
                t[tuple(arr[:, perm].T)] = 1.0
        tables[d] = t
    return StepComplexon(n, tables, validate=False)


def evaluate(W: Complexon, d: int, x: Sequence[float]) -> float:
    """``W^(d)(x)`` for a single point."""
    return float(W.evaluate_rows(d, np.asarray(x, dtype=float).reshape(1, -1))[0])


# marginal kernels ---------------------------------------------------------


class MarginalKernel:
    """Symmetric two-argument kernel with values in [0, 1] (a graphon)."""

    def __call__(self, x, y):
        raise NotImplementedError

    def grid(self, m: int) -> np.ndarray:
        """Kernel sampled at midpoints of the m-equipartition."""
        mid = Equipartition(m).midpoints()
        return np.asarray(self(mid[:, None], mid[None, :]), dtype=float)


class StepKernel(MarginalKernel):
    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] == 0:
            raise ValueError("step kernel values must form a non-empty square matrix")
        if not np.allclose(values, values.T, rtol=0, atol=1e-12):
            raise ValueError("step kernel must be symmetric")
        values = values.copy()
        values.setflags(write=False)
        self.values = values
        self.partition = Equipartition(values.shape[0])

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __call__(self, x, y):
        out = self.values[self.partition.cell(x), self.partition.cell(y)]
        return float(out) if np.ndim(out) == 0 else out

    def __repr__(self) -> str:
        return f"StepKernel(n={self.n})"


class PolynomialKernel(MarginalKernel):
    def __init__(self, poly: Polynomial):
        if poly.nvars != 2:
            raise ValueError("a marginal kernel has two variables")
        if not poly.is_symmetric():
            raise ValueError("marginal kernel must be symmetric")
        self.poly = poly

    def __call__(self, x, y):
        return self.poly(x, y)

    def __repr__(self) -> str:
        return f"PolynomialKernel({self.poly.terms()})"


class QuadratureKernel(MarginalKernel):
    """Marginal evaluated on demand by a fixed quadrature rule over the free arguments."""

    def __init__(self, W: Complexon, d: int, nodes: np.ndarray, weights: np.ndarray):
        self.W, self.d = W, d
        self.nodes, self.weights = nodes, weights

    def __call__(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        flat_x, flat_y = x.ravel(), y.ravel()
        out = np.empty(flat_x.size)
        k = self.nodes.shape[0]
        step = max(1, _CHUNK // max(k, 1))
        for start in range(0, flat_x.size, step):
            xs, ys = flat_x[start : start + step], flat_y[start : start + step]
            pts = np.concatenate(
                [
                    np.repeat(xs, k)[:, None],
                    np.repeat(ys, k)[:, None],
                    np.tile(self.nodes, (xs.size, 1)),
                ],
                axis=1,
            )
            vals = self.W.evaluate_rows(self.d, pts).reshape(xs.size, k)
            out[start : start + step] = vals @ self.weights
        out = out.reshape(x.shape)
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Quadrature:
    """How to integrate out the free arguments of a marginal.

    ``exact`` is symbolic for polynomials and cell summation for steps.
    ``midpoint`` uses ``m`` points per axis; above ``max_tensor_dims``
    free axes it falls back to Monte Carlo with ``samples`` points.
    """

    method: str = "exact"
    m: int = 64
    samples: int = 4096
    seed: int = 0
    max_tensor_dims: int = 3

    def __post_init__(self):
        if self.method not in ("exact", "midpoint", "monte-carlo"):
            raise ValueError(f"unknown quadrature method {self.method!r}")
        if self.m <= 0 or self.samples <= 0:
            raise ValueError("quadrature resolution must be positive")


def marginal(W: Complexon, d: int, quad: Quadrature | None = None) -> MarginalKernel:
    """Integrate ``W^(d)(x, y, z_1..z_{d-1})`` over the z's."""
    quad = quad or Quadrature()
    if not 1 <= d <= W.D:
        raise ValueError(f"marginal dimension must be in 1..{W.D}")
    free = d - 1
    if isinstance(W, StepComplexon) and quad.method == "exact":
        t = W.tables[d]
        if free == 0:
            return StepKernel(t)
        return StepKernel(t.sum(axis=tuple(range(2, d + 1))) / W.n**free)
    if isinstance(W, PolynomialComplexon) and quad.method == "exact":
        return PolynomialKernel(W.components[d].integrate(range(2, d + 1)))
    if quad.method == "exact":
        raise TypeError(f"no exact marginal for {type(W).__name__}")
    if free == 0:
        return QuadratureKernel(W, d, np.zeros((1, 0)), np.ones(1))
    if quad.method == "midpoint" and free <= quad.max_tensor_dims:
        mid = Equipartition(quad.m).midpoints()
        nodes = np.array(list(itertools.product(mid, repeat=free)))
        weights = np.full(nodes.shape[0], 1.0 / nodes.shape[0])
    else:
        rng = np.random.Generator(np.random.Philox(quad.seed))
        nodes = rng.random((quad.samples, free))
        weights = np.full(quad.samples, 1.0 / quad.samples)
    return QuadratureKernel(W, d, nodes, weights)


# homomorphism densities ---------------------------------------------------


def density_in_complexon(
    F: SimplicialComplex,
    W: Complexon,
    estimator: str = "exact-grid",
    samples: int = 100_000,
    seed: int = 0,
    limit: int = DEFAULT_GRID_LIMIT,
) -> HomDensity:
    """``t(F, W)``: the integral over ``[0,1]^V(F)`` of the product of ``W`` over F's simplices.

    ``exact-grid`` (step complexons only) sums over all cell assignments;
    ``monte-carlo`` averages over ``samples`` uniform points and reports a
    standard error. Monte Carlo draws come in fixed-size chunks, each with
    its own Philox stream keyed by ``(seed, chunk)``.

    Components above ``W.D`` are zero, so an ``F`` with simplices there has
    density exactly 0.
    """
    if estimator not in ("exact-grid", "monte-carlo"):
        raise ValueError(f"unknown estimator {estimator!r}")
    if estimator == "exact-grid" and not isinstance(W, StepComplexon):
        raise TypeError("exact-grid needs a step complexon")
    if F.dim > W.D:
        if estimator == "exact-grid":
            return HomDensity(value=0.0, hom_count=0 if W.is_binary() else None)
        return HomDensity(value=0.0, stderr=0.0, samples=samples)
    simplex_sets = [(d, F.simplex_array(d) - 1) for d in range(1, F.dim + 1) if F.count(d)]
    v = F.n
    if estimator == "exact-grid":
        n = W.n
        total = n**v
        if total > limit:
            raise SizeGuardError(f"{n}^{v} = {total} cells exceeds the limit {limit}")
        radix = n ** np.arange(v - 1, -1, -1, dtype=np.int64)
        acc = 0.0
        for start in range(0, total, _CHUNK):
            codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
            cells = (codes[:, None] // radix[None, :]) % n
            prod = np.ones(codes.size)
            for d, fs in simplex_sets:
                table = W.tables[d]
                for s in fs:
                    prod *= table[tuple(cells[:, s].T)]
            acc += float(prod.sum())
        value = acc / total
        count = int(acc) if W.is_binary() else None
        return HomDensity(value=value, hom_count=count)
    if samples < 2:
        raise ValueError("monte-carlo needs at least two samples")
    total_sum = 0.0
    total_sq = 0.0
    for chunk, start in enumerate(range(0, samples, _CHUNK)):
        size = min(_CHUNK, samples - start)
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))
        x = rng.random((size, v))
        prod = np.ones(size)
        for d, fs in simplex_sets:
            for s in fs:
                prod *= W.evaluate_rows(d, x[:, s])
        total_sum += float(prod.sum())
        total_sq += float(np.dot(prod, prod))
    mean = total_sum / samples
    var = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return HomDensity(value=mean, stderr=math.sqrt(var / samples), samples=samples)


def step_cut_norm(A, B, max_n: int = MAX_CUT_NORM_N) -> float:
    """Cut norm of ``A - B`` for step kernels on the same equipartition.

    ``max |sum_{i in S, j in T} (A - B)_ij| / n^2`` over node subsets. For a
    fixed S the best T keeps all positive (or all negative) column sums,
    so only the ``2^n`` choices of S are enumerated.
    """
    a = A.values if isinstance(A, StepKernel) else np.asarray(A, dtype=float)
    b = B.values if isinstance(B, StepKernel) else np.asarray(B, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("step kernels must share the same equipartition")
    n = a.shape[0]
    if n > max_n:
        raise SizeGuardError(f"exhaustive cut norm limited to n <= {max_n}")
    diff = a - b
    bits = 1 << np.arange(n, dtype=np.int64)
    best = 0.0
    for start in range(0, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        S = ((masks[:, None] & bits[None, :]) != 0).astype(float)
        cols = S @ diff
        pos = np.where(cols > 0, cols, 0.0).sum(axis=1)
        neg = -np.where(cols < 0, cols, 0.0).sum(axis=1)
        best = max(best, float(pos.max()), float(neg.max()))
    return best / n**2


# serialization --------------------------------------------------------------


def _frac_str(c) -> str:
    c = as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def complexon_to_dict(W: Complexon) -> dict:
    if isinstance(W, PolynomialComplexon):
        return {
            "type": "polynomial",
            "D": W.D,
            "components": {
                str(d): [[_frac_str(c), list(e)] for c, e in p.terms()] for d, p in W.components.items()
            },
        }
    if isinstance(W, StepComplexon):
        return {
            "type": "step",
            "D": W.D,
            "n": W.n,
            "components": {str(d): t.tolist() for d, t in W.tables.items()},
        }
    raise TypeError(f"cannot serialize {type(W).__name__}")


def complexon_from_dict(spec: Mapping) -> Complexon:
    kind = spec.get("type")
    comps = spec.get("components")
    if not isinstance(comps, Mapping) or not comps:
        raise ValueError("complexon spec needs a non-empty 'components' mapping")
    if kind == "polynomial":
        polys = {}
        for key, terms in comps.items():
            d = int(key)
            polys[d] = Polynomial.from_terms(d + 1, [(c, e) for c, e in terms])
        W = PolynomialComplexon(polys)
    elif kind == "step":
        if "n" not in spec:
            raise ValueError("step complexon spec needs 'n'")
        W = StepComplexon(int(spec["n"]), {int(k): np.asarray(v, dtype=float) for k, v in comps.items()})
    else:
        raise ValueError(f"unknown complexon type {kind!r}")
    if "D" in spec and int(spec["D"]) != W.D:
        raise ValueError(f"declared D={spec['D']} but components reach {W.D}")
    return W


def load_complexon(source: str | os.PathLike) -> Complexon:
    """Load a JSON complexon file; the name ``paper-example`` selects the built-in one."""
    if str(source) == "paper-example":
        return example_complexon()
    with open(source, encoding="utf-8") as fh:
        return complexon_from_dict(json.load(fh))


def dump_complexon(W: Complexon, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(complexon_to_dict(W), fh, indent=2)
        fh.write("\n")
