"""Command line front end.

Subcommands::

    complexon converge --n-min 6 --n-max 149 --trials 20 --out-csv run.csv --out-svg run.svg
    complexon spectrum complex.txt --dim 2
    complexon raise complex.txt --dim 2
    complexon density F.txt --K K.txt
    complexon density F.txt --W paper-example --estimator monte-carlo --samples 100000
    complexon sample --complexon paper-example --n 20 --seed 7 --out K.txt
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .complex import SizeGuardError, dump_complex, hom_density, load_complex
from .experiment import (
    ExperimentConfig,
    emit_plot,
    run_convergence,
    write_summary_csv,
    write_trials_csv,
)
from .kernels import density_in_complexon, load_complexon
from .sampling import SampleConfig, format_latent, sample_complex
from .spectral import cso_spectrum, format_matrix, format_spectrum, raised_adjacency

logger = logging.getLogger("complexon")


def _indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_converge(args) -> int:
    base = ExperimentConfig.from_json(args.config).to_dict() if args.config else {}
    overrides = {
        "n_min": args.n_min,
        "n_max": args.n_max,
        "d": args.dim,
        "indices": args.indices,
        "trials": args.trials,
        "seed": args.seed,
        "complexon": args.complexon,
        "out_csv": args.out_csv,
        "summary_csv": args.summary_csv,
        "out_svg": args.out_svg,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    cfg = ExperimentConfig(**base)
    for path in (cfg.out_csv, cfg.summary_csv, cfg.out_svg):
        if path and not Path(path).resolve().parent.is_dir():
            raise OSError(f"output directory for {path} does not exist")
    result = run_convergence(cfg)
    if cfg.out_csv:
        write_trials_csv(result, cfg.out_csv)
        summary_path = cfg.summary_csv or str(Path(cfg.out_csv).with_suffix("")) + "_summary.csv"
        write_summary_csv(result, summary_path)
    elif cfg.summary_csv:
        write_summary_csv(result, cfg.summary_csv)
    if cfg.out_svg:
        emit_plot(result.summary(), cfg.indices, cfg.out_svg, references=result.references)
    last = result.summary()[-1]
    print(f"n={last[0]} trials={last[1]}")
    for i, m, s in zip(cfg.indices, last[2], last[3]):
        ref = result.references.get(i) if result.references else None
        tail = f"  limit {ref:.6f}" if ref is not None else ""
        print(f"  lambda_{i}: mean {m:.6f}  std {s:.6f}{tail}")
    return 0


def cmd_spectrum(args) -> int:
    K = load_complex(args.complex)
    spec = cso_spectrum(K, args.dim)
    _emit(format_spectrum(spec, K.n, args.dim), args.out)
    return 0


def cmd_raise(args) -> int:
    K = load_complex(args.complex)
    _emit(format_matrix(raised_adjacency(K, args.dim, ordered=not args.unordered)), args.out)
    return 0


def cmd_density(args) -> int:
    F = load_complex(args.F)
    if (args.K is None) == (args.W is None):
        raise ValueError("give exactly one of --K (complex) or --W (complexon)")
    if args.K is not None:
        res = hom_density(F, load_complex(args.K), limit=args.limit)
    else:
        res = density_in_complexon(
            F, load_complexon(args.W), estimator=args.estimator, samples=args.samples, seed=args.seed, limit=args.limit
        )
    line = "%.17g" % res.value
    if res.stderr is not None:
        line += " %.17g" % res.stderr
    if res.hom_count is not None:
        line += f" {res.hom_count}"
    print(line)
    return 0


def cmd_sample(args) -> int:
    W = load_complexon(args.complexon)
    D = W.D if args.dim is None else args.dim
    K, latent = sample_complex(W, SampleConfig(n=args.n, D=D, seed=args.seed))
    dump_complex(K, args.out)
    latent_path = args.latent or args.out + ".latent"
    Path(latent_path).write_text(format_latent(latent), encoding="utf-8")
    logger.info("wrote %s and %s", args.out, latent_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="complexon", description="Complexon shift operators on simplicial complexes.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("converge", help="eigenvalue convergence of sampled complexes")
    c.add_argument("--config", help="JSON file with ExperimentConfig fields; flags override it")
    c.add_argument("--n-min", type=int)
    c.add_argument("--n-max", type=int)
    c.add_argument("--dim", type=int)
    c.add_argument("--indices", type=_indices, help="comma-separated signed indices, e.g. 1,2,-1,-2")
    c.add_argument("--trials", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--complexon", help="complexon JSON file or 'paper-example'")
    c.add_argument("--out-csv")
    c.add_argument("--summary-csv", help="defaults to <out-csv>_summary.csv")
    c.add_argument("--out-svg")
    c.set_defaults(func=cmd_converge)

    s = sub.add_parser("spectrum", help="shift-operator spectrum of a complex")
    s.add_argument("complex")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--out")
    s.set_defaults(func=cmd_spectrum)

    r = sub.add_parser("raise", help="raised adjacency matrix of a complex")
    r.add_argument("complex")
    r.add_argument("--dim", type=int, default=2)
    r.add_argument("--unordered", action="store_true", help="count each completing face once")
    r.add_argument("--out")
    r.set_defaults(func=cmd_raise)

    dn = sub.add_parser("density", help="homomorphism density of F in a complex or complexon")
    dn.add_argument("F")
    dn.add_argument("--K", help="target complex file")
    dn.add_argument("--W", help="target complexon JSON file or 'paper-example'")
    dn.add_argument("--estimator", choices=["exact-grid", "monte-carlo"], default="exact-grid")
    dn.add_argument("--samples", type=int, default=100_000)
    dn.add_argument("--seed", type=int, default=0)
    dn.add_argument("--limit", type=int, default=10**8)
    dn.set_defaults(func=cmd_density)

    sm = sub.add_parser("sample", help="sample a complex from a complexon")
    sm.add_argument("--complexon", default="paper-example")
    sm.add_argument("--n", type=int, required=True)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--dim", type=int)
    sm.add_argument("--out", required=True)
    sm.add_argument("--latent", help="defaults to <out>.latent")
    sm.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError, TypeError, SizeGuardError) as exc:
        print(f"complexon {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
