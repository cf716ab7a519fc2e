"""Eigenvalue convergence of sampled complexes towards their limit complexon.

For each node count ``n`` and trial, a complex is sampled from the
complexon, the spectrum of its induced shift operator is computed and the
tracked signed eigenvalues are recorded. Results go to a per-trial CSV, a
per-n summary CSV and an SVG plot.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .kernels import Complexon, PolynomialComplexon, StepComplexon, load_complexon, marginal
from .linalg import sym_eig
from .sampling import SampleConfig, derive_seed, sample_complex
from .spectral import cso_spectrum, polynomial_kernel_spectrum

__all__ = [
    "ExperimentConfig",
    "ConvergenceResult",
    "run_convergence",
    "reference_eigenvalues",
    "write_trials_csv",
    "write_summary_csv",
    "emit_plot",
    "LAMBDA_PLUS",
    "LAMBDA_MINUS",
]

logger = logging.getLogger(__name__)

LAMBDA_PLUS = 0.25 + math.sqrt(93) / 36
LAMBDA_MINUS = 0.25 - math.sqrt(93) / 36

_FMT = "%.12g"


@dataclass
class ExperimentConfig:
    n_min: int = 6
    n_max: int = 149
    d: int = 2
    indices: tuple[int, ...] = (1, 2, -1, -2)
    trials: int = 1
    seed: int = 0
    complexon: str = "paper-example"
    out_csv: str | None = None
    summary_csv: str | None = None
    out_svg: str | None = None

    def __post_init__(self):
        self.indices = tuple(int(i) for i in self.indices)
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if self.n_min < self.d + 1:
            raise ValueError(f"n_min must be at least d + 1 = {self.d + 1}")
        if self.n_max < self.n_min:
            raise ValueError("n_max must not be below n_min")
        if not self.indices or any(i == 0 for i in self.indices):
            raise ValueError("tracked indices must be nonzero")
        if self.trials < 1:
            raise ValueError("trials must be positive")

    @classmethod
    def from_json(cls, path: str | os.PathLike) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        unknown = set(raw) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**raw)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["indices"] = list(self.indices)
        return out

    def node_counts(self) -> range:
        return range(self.n_min, self.n_max + 1)


@dataclass
class ConvergenceResult:
    config: ExperimentConfig
    # rows[k] = (n, trial, eigenvalues for config.indices)
    rows: list[tuple[int, int, tuple[float, ...]]] = field(default_factory=list)
    references: dict[int, float] | None = None

    def values(self, n: int, index: int) -> np.ndarray:
        col = self.config.indices.index(index)
        return np.array([r[2][col] for r in self.rows if r[0] == n])

    def summary(self) -> list[tuple[int, int, list[float], list[float]]]:
        """Per n: ``(n, trials, means, stds)`` with stds over trials (ddof=1, 0 for one trial)."""
        out = []
        for n in sorted({r[0] for r in self.rows}):
            block = np.array([r[2] for r in self.rows if r[0] == n])
            means = block.mean(axis=0)
            stds = block.std(axis=0, ddof=1) if block.shape[0] > 1 else np.zeros(block.shape[1])
            out.append((n, block.shape[0], means.tolist(), stds.tolist()))
        return out

    def mean(self, index: int, ns: Sequence[int] | None = None) -> float:
        col = self.config.indices.index(index)
        vals = [r[2][col] for r in self.rows if ns is None or r[0] in ns]
        return float(np.mean(vals))


def reference_eigenvalues(W: Complexon, d: int, indices: Sequence[int]) -> dict[int, float]:
    """Limit eigenvalues of the d-dimensional shift operator of ``W``.

    Polynomial complexons use the finite-rank monomial reduction; step
    complexons the eigenvalues of the marginal step matrix over ``n``.
    """
    kernel = marginal(W, d)
    if isinstance(W, PolynomialComplexon):
        spec = polynomial_kernel_spectrum(kernel)
    elif isinstance(W, StepComplexon):
        spec = sym_eig(kernel.values, vectors=False).scaled(1.0 / W.n)
    else:  # pragma: no cover - no other families exist
        raise TypeError(f"no reference spectrum for {type(W).__name__}")
    return {i: spec.eigenvalue(i) for i in indices}


def run_convergence(cfg: ExperimentConfig, W: Complexon | None = None) -> ConvergenceResult:
    """Sample, decompose and record the tracked eigenvalues for every (n, trial)."""
    if W is None:
        try:
            W = load_complexon(cfg.complexon)
        except (OSError, ValueError, TypeError, KeyError) as exc:
            raise ValueError(f"invalid complexon spec {cfg.complexon!r}: {exc}") from exc
    if cfg.d > W.D:
        raise ValueError(f"d={cfg.d} exceeds the complexon dimension {W.D}")
    result = ConvergenceResult(cfg, references=reference_eigenvalues(W, cfg.d, cfg.indices))
    for n in cfg.node_counts():
        for trial in range(cfg.trials):
            sample = sample_complex(W, SampleConfig(n=n, D=cfg.d, seed=derive_seed(cfg.seed, n, trial)))
            spec = cso_spectrum(sample.complex, cfg.d)
            result.rows.append((n, trial, tuple(spec.eigenvalue(i) for i in cfg.indices)))
        logger.debug("n=%d done", n)
    result.rows.sort(key=lambda r: (r[0], r[1]))
    return result


def _label(i: int) -> str:
    return f"lambda_{i}"


def write_trials_csv(result: ConvergenceResult, path: str | os.PathLike) -> None:
    """Columns ``n, trial, lambda_<i>...`` with ``%.12g`` values."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "trial"] + [_label(i) for i in result.config.indices])
        for n, trial, vals in result.rows:
            w.writerow([n, trial] + [_FMT % v for v in vals])


def write_summary_csv(result: ConvergenceResult, path: str | os.PathLike) -> None:
    """Per-n means and standard deviations, plus reference limits when known."""
    idx = result.config.indices
    header = ["n", "trials"]
    for i in idx:
        header += [f"mean_{_label(i)}", f"std_{_label(i)}"]
    if result.references is not None:
        header += [f"ref_{_label(i)}" for i in idx]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for n, trials, means, stds in result.summary():
            row = [n, trials]
            for m, s in zip(means, stds):
                row += [_FMT % m, _FMT % s]
            if result.references is not None:
                row += [_FMT % result.references[i] for i in idx]
            w.writerow(row)


_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def _nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    span = hi - lo
    raw = span / max(count - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


def emit_plot(
    summary: Sequence[tuple[int, int, Sequence[float], Sequence[float]]],
    indices: Sequence[int],
    path: str | os.PathLike,
    references: dict[int, float] | None = None,
    title: str = "Eigenvalue convergence",
) -> str:
    """Write a self-contained SVG line chart of mean eigenvalue against n.

    One series per tracked index; dashed horizontal lines mark the
    reference limits. With a single n only point markers are drawn.
    Returns the SVG text.
    """
    width, height = 760, 460
    left, right, top, bottom = 70, 150, 40, 50
    pw, ph = width - left - right, height - top - bottom
    ns = [row[0] for row in summary]
    series = {i: [row[2][k] for row in summary] for k, i in enumerate(indices)}
    ys = [v for vals in series.values() for v in vals]
    if references:
        ys += list(references.values())
    ys = ys or [0.0]
    ylo, yhi = min(ys), max(ys)
    if yhi - ylo < 1e-9:
        ylo, yhi = ylo - 0.5, yhi + 0.5
    pad = 0.05 * (yhi - ylo)
    ylo, yhi = ylo - pad, yhi + pad
    xlo, xhi = (min(ns), max(ns)) if ns else (0, 1)
    if xhi == xlo:
        xlo, xhi = xlo - 1, xhi + 1

    def sx(x):
        return left + (x - xlo) / (xhi - xlo) * pw

    def sy(y):
        return top + (yhi - y) / (yhi - ylo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left + pw / 2:.1f}" y="22" text-anchor="middle" font-size="15">{title}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _nice_ticks(ylo, yhi):
        y = sy(t)
        out.append(f'<line x1="{left - 4}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 7}" y="{y + 4:.2f}" text-anchor="end">{t:g}</text>')
    for t in _nice_ticks(xlo, xhi):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle">{t:g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">n</text>')
    out.append(
        f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + ph / 2:.1f})">eigenvalue</text>'
    )
    for k, i in enumerate(indices):
        color = _COLORS[k % len(_COLORS)]
        if references and i in references:
            y = sy(references[i])
            out.append(
                f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="{color}" '
                f'stroke-dasharray="6 4" stroke-opacity="0.7"/>'
            )
        pts = [(sx(n), sy(v)) for n, v in zip(ns, series[i])]
        if len(pts) > 1:
            coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        else:
            out.extend(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="{color}"/>' for x, y in pts)
        ly = top + 16 + 20 * k
        lx = left + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly}">&#955;<tspan baseline-shift="sub" font-size="9">{i}</tspan></text>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
