"""Command-line front end: ``romkit <experiment> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 I/O or dataset error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import experiments as ex

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p):
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--seed", help="master seed (required here or in the config)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.add_argument("--threads", help="worker threads; results do not depend on it")
    p.add_argument("--dataset", help="numeric CSV, one point per row")
    p.add_argument("--subset", help="keep a seeded random subset of this many rows")
    p.add_argument("--drop-label", action="store_true", default=None, help="ignore the last CSV column")
    p.add_argument("--n", help="dimension for synthetic data (power of 2)")
    p.add_argument("--m", dest="m_grid", help="row counts, e.g. 2,4,8 or 1:16 or 2:16:2")
    p.add_argument("--k", dest="k_grid", help="SD block counts, same grid syntax")
    p.add_argument("--estimators", help="comma list of estimator ids")
    p.add_argument("--trials", help="Monte Carlo trials per result row")
    p.add_argument("--repetitions", help="matrix draws per Gram-error row")
    p.add_argument("--pairs", help="vector pairs averaged per MSE row")
    p.add_argument("--count", help="number of synthetic points")
    p.add_argument("--synthetic", help="gaussian, spherical or sparse")
    p.add_argument("--kernel", help="dot, angular or both")
    p.add_argument("--structure", help="hadamard or walsh")
    p.add_argument("--policy", help="row subsampling: without, with or first")
    p.add_argument("--thetas", help="angles as fractions of pi, e.g. 1/6,1/3")
    p.add_argument("--markov-n", help="matrix size for the Markov analysis")
    p.add_argument("--tolerance", help="relative tolerance for verify checks")


def build_parser():
    parser = _Parser(prog="romkit", description="Structured random orthogonal embedding experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "mse-curve": "estimator MSE against m, with closed forms",
        "gram-error": "normalized Frobenius error of approximate Gram matrices",
        "angular": "angular-kernel MSE and pairwise event covariances",
        "markov": "exact analysis of the Hadamard-Rademacher walk",
        "pair-count": "paired-row counts of the without-replacement sampler",
        "verify": "oracle checks of the closed forms; JSON report",
    }
    for name in ex.EXPERIMENTS:
        _common(sub.add_parser(name, help=helps[name]))
    return parser


_FIELDS = ("seed", "out", "format", "threads", "dataset", "subset", "drop_label", "n", "m_grid", "k_grid",
           "estimators", "trials", "repetitions", "pairs", "count", "synthetic", "kernel", "structure",
           "policy", "thetas", "markov_n", "tolerance")


def config_from_args(args):
    file_values = ex.read_config_file(args.config) if args.config else {}
    flags = {}
    for name in _FIELDS:
        raw = getattr(args, name)
        if raw is None:
            continue
        try:
            flags[name] = ex.coerce(name, raw)
        except ValueError:
            raise ex.ConfigError(f"bad value for --{name.replace('_', '-')}: {raw!r}") from None
    return ex.build_config(args.command, file_values, flags)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.kind == "verify":
            report = ex.run_verify(cfg)
            _emit(json.dumps(report, indent=2) + "\n", cfg.out)
            return EXIT_OK if report["passed"] else EXIT_VERIFY
        rows = ex.RUNNERS[cfg.kind](cfg)
        _emit(ex.render_rows(rows, cfg.format), cfg.out)
        return EXIT_OK
    except ex.ConfigError as exc:
        print(f"romkit: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ex.DatasetError as exc:
        print(f"romkit: dataset error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # data-dependent failures such as an all-zero Gram matrix
        print(f"romkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"romkit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
