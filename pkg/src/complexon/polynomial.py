"""Multivariate polynomials with exact rational coefficients.

Just enough algebra for analytic complexons: evaluation, products, exact
integration over the unit cube and symmetry checks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = ["Polynomial", "as_fraction"]


def as_fraction(value) -> Fraction:
    """Coerce ints, rational strings ("1/3") and floats to a Fraction.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a valid coefficient")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise ValueError("coefficient must be finite")
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational coefficient")


class Polynomial:
    """A polynomial in ``nvars`` variables, stored as ``{exponents: coeff}``.

    >>> p = Polynomial.from_terms(3, [("1/3", (1, 0, 0)), ("1/3", (0, 1, 0)), ("1/3", (0, 0, 1))])
    >>> p.integrate([2]).terms()
    [(Fraction(1, 6), (0, 0)), (Fraction(1, 3), (0, 1)), (Fraction(1, 3), (1, 0))]
    """

    __slots__ = ("nvars", "_coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[tuple[int, ...], Fraction] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = int(nvars)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise ValueError(f"exponent vector {exps} does not have {self.nvars} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self._coeffs = clean

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[tuple[object, Sequence[int]]]) -> "Polynomial":
        acc: dict[tuple[int, ...], Fraction] = {}
        for coeff, exps in terms:
            key = tuple(int(e) for e in exps)
            acc[key] = acc.get(key, Fraction(0)) + as_fraction(coeff)
        return cls(nvars, acc)

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: as_fraction(value)})

    def terms(self) -> list[tuple[Fraction, tuple[int, ...]]]:
        """Nonzero ``(coeff, exponents)`` pairs in lexicographic exponent order."""
        return [(self._coeffs[e], e) for e in sorted(self._coeffs)]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._coeffs), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.nvars, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {dict(self.terms_dict())})"

    def terms_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc = dict(self._coeffs)
        for e, c in other._coeffs.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, acc)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial(self.nvars, {e: v * c for e, v in self._coeffs.items()})
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc: dict[tuple[int, ...], Fraction] = {}
        for (ea, ca), (eb, cb) in itertools.product(self._coeffs.items(), other._coeffs.items()):
            e = tuple(a + b for a, b in zip(ea, eb))
            acc[e] = acc.get(e, Fraction(0)) + ca * cb
        return Polynomial(self.nvars, acc)

    __rmul__ = __mul__

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Same polynomial viewed in ``nvars`` variables; variable k goes to ``positions[k]``."""
        if len(positions) != self.nvars:
            raise ValueError("one target position per variable is required")
        acc = {}
        for e, c in self._coeffs.items():
            new = [0] * nvars
            for k, pos in enumerate(positions):
                new[pos] += e[k]
            acc[tuple(new)] = acc.get(tuple(new), Fraction(0)) + c
        return Polynomial(nvars, acc)

    def integrate(self, variables: Iterable[int]) -> "Polynomial":
        """Integrate the listed variables over [0, 1]; they are removed."""
        drop = sorted(set(variables))
        if any(v < 0 or v >= self.nvars for v in drop):
            raise ValueError("variable index out of range")
        keep = [k for k in range(self.nvars) if k not in drop]
        acc: dict[tuple[int, ...], Fraction] = {}
        for e, c in self._coeffs.items():
            w = c
            for v in drop:
                w /= e[v] + 1
            key = tuple(e[k] for k in keep)
            acc[key] = acc.get(key, Fraction(0)) + w
        return Polynomial(len(keep), acc)

    def permuted(self, perm: Sequence[int]) -> "Polynomial":
        """Polynomial q with q(x) = p(x[perm[0]], x[perm[1]], ...)."""
        acc = {}
        for e, c in self._coeffs.items():
            new = [0] * self.nvars
            for k, src in enumerate(perm):
                new[src] += e[k]
            acc[tuple(new)] = c
        return Polynomial(self.nvars, acc)

    def is_symmetric(self) -> bool:
        # adjacent transpositions generate the symmetric group
        for k in range(self.nvars - 1):
            perm = list(range(self.nvars))
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
            if self.permuted(perm) != self:
                return False
        return True

    def __call__(self, *xs) -> np.ndarray | float:
        """Evaluate; each argument may be a scalar or a broadcastable array."""
        if len(xs) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments, got {len(xs)}")
        arrays = [np.asarray(x, dtype=float) for x in xs]
        shape = np.broadcast_shapes(*(a.shape for a in arrays)) if arrays else ()
        out = np.zeros(shape)
        for e, c in self._coeffs.items():
            term = np.full(shape, float(c))
            for a, k in zip(arrays, e):
                if k:
                    term = term * a**k
            out = out + term
        if out.ndim == 0:
            return float(out)
        return out

    def evaluate_rows(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at each row of an ``(m, nvars)`` array."""
        points = np.asarray(points, dtype=float)
        return np.asarray(self(*[points[:, k] for k in range(self.nvars)]), dtype=float).reshape(points.shape[0])

    def bounds_on_grid(self, resolution: int = 5) -> tuple[float, float]:
        """Min and max over a regular grid including the cube corners."""
        ticks = np.linspace(0.0, 1.0, resolution)
        grids = np.meshgrid(*([ticks] * self.nvars), indexing="ij")
        vals = np.asarray(self(*grids), dtype=float)
        return float(vals.min()), float(vals.max())
