"""Abstract simplicial complexes and homomorphism counting.

Vertices are labelled ``1..n``. A d-simplex is stored as a strictly
increasing tuple of ``d + 1`` vertex labels.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SimplicialComplex",
    "HomDensity",
    "SizeGuardError",
    "build_complex",
    "skeleton",
    "hom_count",
    "hom_density",
    "load_complex",
    "dump_complex",
    "parse_complex",
    "format_complex",
    "DEFAULT_MAP_LIMIT",
]

DEFAULT_MAP_LIMIT = 10**8
_CHUNK = 1 << 18


class SizeGuardError(ValueError):
    """A brute-force enumeration would exceed its configured size limit."""


class SimplicialComplex:
    """Downward-closed family of vertex sets on ``n`` labelled nodes.

    ``simplices[d]`` is the frozenset of d-simplices. Construct through
    :func:`build_complex` unless the input is already closed; the
    constructor validates but does not close. Instances are immutable.
    """

    def __init__(self, n: int, simplices: Iterable[Iterable[Sequence[int]]]):
        if int(n) != n or n < 1:
            raise ValueError("a complex needs at least one node")
        levels = [frozenset(tuple(s) for s in level) for level in simplices]
        while len(levels) > 1 and not levels[-1]:
            levels.pop()
        if not levels or levels[0] != frozenset((v,) for v in range(1, n + 1)):
            raise ValueError("dimension 0 must hold exactly the singletons 1..n")
        for d, level in enumerate(levels):
            for s in level:
                if len(s) != d + 1:
                    raise ValueError(f"simplex {s} filed under dimension {d}")
                if any(b <= a for a, b in zip(s, s[1:])):
                    raise ValueError(f"simplex {s} is not strictly increasing")
                if s[0] < 1 or s[-1] > n:
                    raise ValueError(f"simplex {s} has a vertex outside 1..{n}")
                if d > 0:
                    for face in itertools.combinations(s, d):
                        if face not in levels[d - 1]:
                            raise ValueError(f"face {face} of {s} is missing")
        self.n = int(n)
        self._levels = levels
        self._arrays: dict[int, np.ndarray] = {}
        self._dim = len(levels) - 1

    @classmethod
    def _from_arrays(cls, n: int, arrays: Sequence[np.ndarray]) -> "SimplicialComplex":
        # for callers that build closed, lexicographically sorted layers by
        # construction; skips validation and defers building the tuple sets
        layers = {0: np.arange(1, n + 1, dtype=np.int64).reshape(n, 1)}
        for d, arr in enumerate(arrays, 1):
            layers[d] = np.asarray(arr, dtype=np.int64).reshape(-1, d + 1)
        dim = max(d for d, a in layers.items() if a.shape[0])
        for a in layers.values():
            a.setflags(write=False)
        obj = object.__new__(cls)
        obj.n = int(n)
        obj._arrays = {d: a for d, a in layers.items() if d <= dim}
        obj._levels = [None] * (dim + 1)
        obj._dim = dim
        return obj

    def __setattr__(self, name, value):
        if name in ("n", "_levels", "_arrays", "_dim") and hasattr(self, name):
            raise AttributeError("SimplicialComplex is immutable")
        object.__setattr__(self, name, value)

    @property
    def simplices(self) -> tuple[frozenset, ...]:
        return tuple(self.faces(d) for d in range(self._dim + 1))

    @property
    def dim(self) -> int:
        return self._dim

    def faces(self, d: int) -> frozenset:
        """The d-simplices; empty for dimensions above ``dim``."""
        if d < 0:
            raise ValueError("dimension must be non-negative")
        if d > self._dim:
            return frozenset()
        level = self._levels[d]
        if level is None:
            level = frozenset(map(tuple, self._arrays[d].tolist()))
            self._levels[d] = level
        return level

    def count(self, d: int) -> int:
        if d < 0:
            raise ValueError("dimension must be non-negative")
        if d > self._dim:
            return 0
        if d in self._arrays:
            return self._arrays[d].shape[0]
        return len(self._levels[d])

    def __contains__(self, simplex) -> bool:
        s = tuple(sorted(simplex))
        return s in self.faces(len(s) - 1) if s else False

    def __iter__(self):
        for d in range(self._dim + 1):
            yield from map(tuple, self.simplex_array(d).tolist())

    def __len__(self) -> int:
        return sum(self.count(d) for d in range(self._dim + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        if self.n != other.n or self._dim != other._dim:
            return False
        return all(np.array_equal(self.simplex_array(d), other.simplex_array(d)) for d in range(self._dim + 1))

    def __hash__(self):
        return hash((self.n, self.simplices))

    def __repr__(self) -> str:
        counts = ", ".join(str(self.count(d)) for d in range(self._dim + 1))
        return f"SimplicialComplex(n={self.n}, dim={self.dim}, f-vector=[{counts}])"

    def simplex_array(self, d: int) -> np.ndarray:
        """The d-simplices as a lexicographically sorted ``(m, d+1)`` int array."""
        if d > self._dim:
            return np.zeros((0, d + 1), dtype=np.int64)
        if d not in self._arrays:
            level = sorted(self._levels[d])
            arr = np.array(level, dtype=np.int64).reshape(len(level), d + 1)
            arr.setflags(write=False)
            self._arrays[d] = arr
        return self._arrays[d]

    @property
    def maximal_simplices(self) -> list[tuple[int, ...]]:
        out = []
        for d in range(self._dim + 1):
            level = self.faces(d)
            upper = self.faces(d + 1)
            covered = {f for s in upper for f in itertools.combinations(s, d + 1)}
            out.extend(sorted(level - covered))
        return out

    def relabel(self, perm: Sequence[int]) -> "SimplicialComplex":
        """Image under vertex map ``v -> perm[v - 1]`` (a permutation of 1..n)."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValueError("relabelling must be a permutation of 1..n")
        return SimplicialComplex(
            self.n,
            tuple(frozenset(tuple(sorted(perm[v - 1] for v in s)) for s in level) for level in self.simplices),
        )


def _closure(n: int, simplex_list: Iterable[Iterable[int]]) -> tuple[frozenset, ...]:
    levels: list[set] = [set((v,) for v in range(1, n + 1))]
    for raw in simplex_list:
        verts = sorted(set(int(v) for v in raw))
        if not verts:
            raise ValueError("empty simplex in input")
        if verts[0] < 1 or verts[-1] > n:
            raise ValueError(f"simplex {tuple(verts)} has a vertex outside 1..{n}")
        top = len(verts) - 1
        while len(levels) <= top:
            levels.append(set())
        if tuple(verts) in levels[top]:
            continue
        for d in range(1, top + 1):
            levels[d].update(itertools.combinations(verts, d + 1))
    return tuple(frozenset(level) for level in levels)


def build_complex(n: int, simplex_list: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of ``simplex_list`` on nodes ``1..n``.

    Every face of every listed simplex is added, as are all singletons.
    """
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    return SimplicialComplex(int(n), _closure(int(n), simplex_list))


def skeleton(K: SimplicialComplex, d: int) -> SimplicialComplex:
    """Sub-complex of all simplices of dimension at most ``d``."""
    if d < 0:
        raise ValueError("skeleton dimension must be non-negative")
    if d >= K.dim:
        return K
    return SimplicialComplex(K.n, K.simplices[: d + 1])


@dataclass(frozen=True)
class HomDensity:
    """A homomorphism density, with the exact count when one was taken.

    ``stderr`` is set by Monte Carlo estimates, ``hom_count`` by exact
    combinatorial counts.
    """

    value: float
    hom_count: int | None = None
    stderr: float | None = None
    samples: int | None = None

    def __float__(self) -> float:
        return self.value


def _encode(images: np.ndarray, base: int) -> np.ndarray:
    keys = np.zeros(images.shape[0], dtype=np.int64)
    for col in range(images.shape[1]):
        keys = keys * base + images[:, col]
    return keys


def hom_count(F: SimplicialComplex, K: SimplicialComplex, limit: int = DEFAULT_MAP_LIMIT) -> int:
    """Number of vertex maps sending every d-simplex of F onto a d-simplex of K.

    Images are taken as sets, so a map that collapses any simplex of F is
    not a homomorphism. All ``K.n ** F.n`` maps are enumerated; a
    :class:`SizeGuardError` is raised above ``limit``.
    """
    vf, vk = F.n, K.n
    total = vk**vf
    if total > limit:
        raise SizeGuardError(f"{vk}^{vf} = {total} maps exceeds the limit {limit}")
    # positive-dimension simplices of F; dimension 0 always maps onto a vertex
    checks = []
    for d in range(1, F.dim + 1):
        if F.count(d) == 0:
            continue
        if d > K.dim or K.count(d) == 0:
            return 0
        targets = np.sort(_encode(K.simplex_array(d) - 1, vk))
        checks.append((F.simplex_array(d) - 1, targets))
    count = 0
    radix = vk ** np.arange(vf - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        phi = (codes[:, None] // radix[None, :]) % vk  # phi[m, u] = image of vertex u+1
        ok = np.ones(codes.size, dtype=bool)
        for fs, targets in checks:
            for s in fs:
                img = np.sort(phi[:, s], axis=1)
                alive = ok & np.all(np.diff(img, axis=1) > 0, axis=1)
                keys = _encode(img[alive], vk)
                pos = np.searchsorted(targets, keys)
                hit = (pos < targets.size) & (targets[np.minimum(pos, targets.size - 1)] == keys)
                ok[:] = False
                ok[np.flatnonzero(alive)[hit]] = True
                if not ok.any():
                    break
            if not ok.any():
                break
        count += int(np.count_nonzero(ok))
    return count


def hom_density(F: SimplicialComplex, K: SimplicialComplex, limit: int = DEFAULT_MAP_LIMIT) -> HomDensity:
    """``hom(F, K) / n_K ** n_F``."""
    c = hom_count(F, K, limit=limit)
    return HomDensity(value=c / K.n**F.n, hom_count=c)


def parse_complex(text: str) -> SimplicialComplex:
    """Read the text format: a ``n <count>`` header, then one simplex per line.

    Blank lines and ``#`` comments are ignored; the result is closed.
    """
    n = None
    simplices = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "n" or len(parts) != 2:
                raise ValueError(f"line {lineno}: expected header 'n <count>'")
            n = int(parts[1])
            continue
        try:
            simplices.append([int(p) for p in parts])
        except ValueError:
            raise ValueError(f"line {lineno}: vertex labels must be integers") from None
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return build_complex(n, simplices)


def format_complex(K: SimplicialComplex, maximal_only: bool = True) -> str:
    """Serialize to the text format; maximal simplices suffice since loading closes."""
    rows = K.maximal_simplices if maximal_only else list(K)
    lines = [f"n {K.n}"] + [" ".join(str(v) for v in s) for s in rows]
    return "\n".join(lines) + "\n"


def load_complex(path: str | os.PathLike) -> SimplicialComplex:
    with open(path, encoding="utf-8") as fh:
        return parse_complex(fh.read())


def dump_complex(K: SimplicialComplex, path: str | os.PathLike, maximal_only: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_complex(K, maximal_only=maximal_only))
