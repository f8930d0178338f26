"""Command-line surface: m-function export, fixed-point iteration, the
Jacobi-to-Hamiltonian conversion, and named verification suites.

Exit codes: 0 success, 1 assertion failure, 2 parse error, 3 precondition
violation, 4 unsupported input.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass

import click
import numpy as np

from .acceptance import SUITES, run_suite
from .herglotz import RealizedFunction, SampleSet, is_psd_gram, nevanlinna_gram
from .jacobi import BlockJacobi, m_cf, m_resolvent
from .kac import StepHamiltonian, evaluate_H, kac_algorithm
from .transforms import iterate_gamma_hat

EXIT_ASSERTION = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_UNSUPPORTED = 4

#: default minimum |Im lambda| for grid evaluation
DEFAULT_FLOOR = 1e-6


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _fmt(x: float) -> str:
    """Shortest round-trip decimal, never more than 17 significant digits."""
    return repr(float(x))


def _parse_lambda(text: str) -> complex:
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError:
        _fail(EXIT_PARSE, f"--lambda expects RE,IM, got {text!r}")


@dataclass(frozen=True)
class GridSpec:
    """Rectangular lambda grid with a half-plane floor |Im lambda| >= floor."""

    re_min: float
    re_max: float
    n_re: int
    im_min: float
    im_max: float
    n_im: int
    floor: float = DEFAULT_FLOOR

    def __post_init__(self):
        if self.n_re < 1 or self.n_im < 1:
            raise ValueError("grid counts must be >= 1")
        if not self.floor > 0:
            raise ValueError("half-plane floor must be positive")

    def points(self) -> list:
        res = np.linspace(self.re_min, self.re_max, self.n_re)
        ims = np.linspace(self.im_min, self.im_max, self.n_im)
        if np.min(np.abs(ims)) < self.floor:
            raise ValueError("grid violates half-plane floor")
        return [complex(re, im) for re in res for im in ims]


def _parse_grid(text: str, floor: float) -> GridSpec:
    try:
        re_part, im_part = text.split(",")
        re0, re1, n_re = re_part.split(":")
        im0, im1, n_im = im_part.split(":")
        return GridSpec(
            re_min=float(re0), re_max=float(re1), n_re=int(n_re),
            im_min=float(im0), im_max=float(im1), n_im=int(n_im),
            floor=floor,
        )
    except ValueError:
        _fail(EXIT_PARSE, f"--grid expects re0:re1:n,im0:im1:n, got {text!r}")


def _load_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        _fail(EXIT_PARSE, f"cannot read {path}: {exc}")


def _write_text(path, text: str):
    if path is None or path == "-":
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


@click.group()
def main():
    """Numerical toolkit for Nevanlinna-function transformations, block Jacobi
    m-functions, and canonical-system Hamiltonians."""


@main.command("mfun")
@click.argument("jacobi_file", type=click.Path())
@click.option("--lambda", "lam_text", default=None, help="single point RE,IM")
@click.option("--grid", "grid_text", default=None, help="re0:re1:n,im0:im1:n")
@click.option("--floor", type=float, default=DEFAULT_FLOOR, show_default=True,
              help="minimum |Im lambda| allowed on the grid")
@click.option("--out", "out_path", default=None, help="CSV output path (default stdout)")
def cmd_mfun(jacobi_file, lam_text, grid_text, floor, out_path):
    """Evaluate the m-function of a block Jacobi matrix on points or a grid.

    Runs both the direct block-tridiagonal solve and the continued-fraction
    recursion; rows come from the direct solve and the max discrepancy
    between the two algorithms is printed.
    """
    try:
        J = BlockJacobi.from_json(_load_text(jacobi_file))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        _fail(EXIT_PARSE, f"invalid Jacobi JSON: {exc}")
    if (lam_text is None) == (grid_text is None):
        _fail(EXIT_PARSE, "exactly one of --lambda / --grid is required")
    if lam_text is not None:
        lam = _parse_lambda(lam_text)
        if abs(lam.imag) < floor:
            _fail(EXIT_PRECONDITION, "grid violates half-plane floor")
        points = [lam]
    else:
        spec = _parse_grid(grid_text, floor)
        try:
            points = spec.points()
        except ValueError as exc:
            _fail(EXIT_PRECONDITION, str(exc))
    d = J.d
    header = ["re_lambda", "im_lambda"]
    for i in range(d):
        for j in range(d):
            header += [f"re_m{i}{j}", f"im_m{i}{j}"]
    lines = [",".join(header)]
    discrepancy = 0.0
    for lam in points:
        M1 = m_resolvent(J, lam)
        M2 = m_cf(J, lam)
        discrepancy = max(discrepancy, float(np.max(np.abs(M1 - M2))))
        row = [_fmt(lam.real), _fmt(lam.imag)]
        for i in range(d):
            for j in range(d):
                row += [_fmt(M1[i, j].real), _fmt(M1[i, j].imag)]
        lines.append(",".join(row))
    _write_text(out_path, "\n".join(lines) + "\n")
    click.echo(f"max discrepancy between algorithms: {_fmt(discrepancy)}", err=True)


def _nevanlinna_warning_check(F: RealizedFunction, lam: complex):
    rng = np.random.default_rng(0)
    pts = [complex(rng.uniform(-2, 2), rng.uniform(0.3, 2)) for _ in range(6)]
    vecs = [rng.standard_normal(F.dim) + 1j * rng.standard_normal(F.dim) for _ in range(6)]
    try:
        G = nevanlinna_gram(F, SampleSet.of(pts, vecs))
        if not is_psd_gram(G):
            click.echo(
                "warning: starting function fails the Nevanlinna kernel test; "
                "iterating anyway", err=True,
            )
    except Exception:
        click.echo("warning: Nevanlinna kernel test could not be evaluated", err=True)


@main.command("iterate")
@click.argument("start")
@click.option("--lambda", "lam_text", required=True, help="evaluation point RE,IM")
@click.option("--n", "n_steps", type=int, required=True, help="number of iteration steps")
@click.option("--dim", type=int, default=1, show_default=True,
              help="matrix dimension when START is 'zero'")
@click.option("--out", "out_path", default=None, help="CSV output path (default stdout)")
def cmd_iterate(start, lam_text, n_steps, dim, out_path):
    """Iterate M -> -(M + lambda)^{-1} from START ('zero' or a function JSON file)."""
    lam = _parse_lambda(lam_text)
    if n_steps < 1:
        raise click.UsageError("--n must be >= 1")
    if lam.imag == 0.0:
        _fail(EXIT_PRECONDITION, "iteration requires Im lambda != 0")
    if start == "zero":
        F = RealizedFunction.zero(dim)
    else:
        try:
            # parsed leniently: a start violating the Nevanlinna invariants is
            # flagged by the kernel test below but still iterated
            F = RealizedFunction.from_json(_load_text(start), validate=False)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            _fail(EXIT_PARSE, f"invalid function JSON: {exc}")
        _nevanlinna_warning_check(F, lam)
    trace = iterate_gamma_hat(F, lam, n_steps)
    _write_text(out_path, trace.to_csv())
    max_ratio = max(trace.ratios) if trace.ratios else float("nan")
    click.echo(f"final residual: {_fmt(trace.residuals[-1])}", err=True)
    click.echo(f"max contraction ratio: {_fmt(max_ratio)}", err=True)


@main.command("kac")
@click.argument("jacobi_file", type=click.Path())
@click.option("--m", "m_intervals", type=int, required=True, help="number of Hamiltonian intervals")
@click.option("--out", "out_path", default=None, help="JSON output path (default stdout)")
def cmd_kac(jacobi_file, m_intervals, out_path):
    """Convert scalar Jacobi coefficients to a step Hamiltonian."""
    try:
        J = BlockJacobi.from_json(_load_text(jacobi_file))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        _fail(EXIT_PARSE, f"invalid Jacobi JSON: {exc}")
    if J.d != 1:
        _fail(EXIT_UNSUPPORTED, "the coefficient-to-Hamiltonian conversion needs scalar (d=1) input")
    a = [float(blk[0, 0].real) for blk in J.a]
    b = [float(blk[0, 0].real) for blk in J.b]
    try:
        H = kac_algorithm(a, b, m_intervals)
    except ValueError as exc:
        _fail(EXIT_PRECONDITION, str(exc))
    _write_text(out_path, H.to_json() + "\n")
    first = evaluate_H(H, 0.0)
    ok = np.max(np.abs(first - np.array([[0.0, 0.0], [0.0, 1.0]]))) < 1e-12
    click.echo(
        "first interval H = [[{}, {}], [{}, {}]] (expected [[0,0],[0,1]]: {})".format(
            _fmt(first[0, 0]), _fmt(first[0, 1]), _fmt(first[1, 0]), _fmt(first[1, 1]),
            "ok" if ok else "MISMATCH",
        ),
        err=True,
    )
    if not ok:
        sys.exit(EXIT_ASSERTION)


@main.command("verify")
@click.argument("suite", required=False)
def cmd_verify(suite):
    """Run one named verification suite (or list the available ones)."""
    if suite is None or suite not in SUITES:
        if suite is not None:
            click.echo(f"unknown suite: {suite}", err=True)
        click.echo("available suites:")
        for name in SUITES:
            click.echo(f"  {name}")
        sys.exit(0 if suite is None else EXIT_PRECONDITION)
    ok, detail = run_suite(suite)
    click.echo(f"{'PASS' if ok else 'FAIL'} {suite}: {detail}")
    sys.exit(0 if ok else EXIT_ASSERTION)


if __name__ == "__main__":
    main()
