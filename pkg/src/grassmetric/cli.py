"""Command-line front end.

Usage:
    grassmetric inner --form gram:standard --left a.csv --right b.csv
    grassmetric angle --left s1.csv --right s2.csv
    grassmetric check-axioms --form gram:standard --m 4 --n 2 --seed 7 --trials 200
    grassmetric distmat s1.csv s2.csv s3.csv --csv

CSV inputs hold one vector per row; '#' starts a comment line. Reports are JSON
on stdout (or --out). Exit status: 0 success, 1 mathematical failure (an axiom
fails, an inequality or identity is violated), 2 bad input.

Forms:
    gram:standard        dot product on R^m
    gram:PATH.csv        ambient Gram matrix read from CSV
    diagonal:ones        all coefficients 1
    diagonal:PATH.json   {"m":..,"n":..,"C":[{"idx":[1-based..],"value":..}]}
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import click
import numpy as np

from . import axioms, grassmann, subspace
from .errors import (
    EmptyFile,
    GrassmetricError,
    IdentityViolated,
    InputError,
    MathematicalFailure,
    NonNumericToken,
    NotOrthogonal,
    ParseError,
    RaggedRows,
)
from .ninner import DiagonalNForm, GramNForm, n_inner, n_norm

__all__ = ["JobSpec", "main", "parse_form", "parse_matrix_csv", "run"]

COMMANDS = (
    "inner", "norm", "decompose", "angle", "distmat",
    "complement", "dual-check", "check-axioms", "minor-check",
)
DEFAULT_TOL = 1e-9
DUAL_GAP_TOL = 1e-7
TOL_ENV = "GRASSMETRIC_TOL"


def parse_matrix_csv(path) -> np.ndarray:
    """Read a comma-separated matrix, one vector per row."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = []
        for token in next(csv.reader([stripped])):
            try:
                value = float(token)
            except ValueError:
                raise NonNumericToken(f"{path}:{lineno}: {token.strip()!r} is not a number") from None
            if not math.isfinite(value):
                raise NonNumericToken(f"{path}:{lineno}: {token.strip()!r} is not finite")
            row.append(value)
        if rows and len(row) != len(rows[0]):
            raise RaggedRows(f"{path}:{lineno}: {len(row)} entries, expected {len(rows[0])}")
        rows.append(row)
    if not rows:
        raise EmptyFile(f"{path} has no data rows")
    return np.array(rows)


def parse_form(desc: str, m: int, n: int):
    kind, _, arg = desc.partition(":")
    if kind == "gram":
        if arg == "standard":
            return GramNForm.standard(m, n)
        form = GramNForm(parse_matrix_csv(arg), n)
    elif kind == "diagonal":
        if arg == "ones":
            return DiagonalNForm(m, n)
        try:
            obj = json.loads(Path(arg).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read coefficient table {arg}: {exc}") from exc
        form = DiagonalNForm.from_json(obj)
    else:
        raise InputError(f"unknown form {desc!r}; expected gram:... or diagonal:...")
    if (form.m, form.n) != (m, n):
        raise InputError(f"form {desc!r} has (m, n) = {(form.m, form.n)}, inputs need {(m, n)}")
    return form


@dataclass
class JobSpec:
    command: str
    form: str = "gram:standard"
    inputs: dict = field(default_factory=dict)
    seed: int = 0
    trials: int = 200
    tol: float = DEFAULT_TOL
    m: int | None = None
    n: int | None = None


def _rows(x) -> list:
    # adding 0.0 turns -0.0 into 0.0
    return (np.asarray(x, dtype=float) + 0.0).tolist()


def _subspace(job: JobSpec, path, form=None) -> subspace.Subspace:
    B = parse_matrix_csv(path)
    form = form or parse_form(job.form, B.shape[1], B.shape[0])
    return subspace.Subspace(B, form)


def _pair(job: JobSpec, form=None):
    left = _subspace(job, job.inputs["left"], form)
    return left, _subspace(job, job.inputs["right"], form or left.form)


def _inner(job, form):
    A, B = parse_matrix_csv(job.inputs["left"]), parse_matrix_csv(job.inputs["right"])
    form = form or parse_form(job.form, A.shape[1], A.shape[0])
    return 0, {"value": n_inner(form, A, B)}


def _norm(job, form):
    A = parse_matrix_csv(job.inputs["input"])
    form = form or parse_form(job.form, A.shape[1], A.shape[0])
    return 0, {"value": n_norm(form, A)}


def _decompose(job, form):
    S = _subspace(job, job.inputs["basis"], form)
    out = []
    for x in parse_matrix_csv(job.inputs["x"]):
        d = subspace.decompose(x, S, tol=max(job.tol, 1e-12))
        out.append({
            "lambdas": _rows(d.lambdas),
            "projection": _rows(d.projection),
            "residual": _rows(d.residual),
        })
    return 0, {"decompositions": out}


def _angle(job, form):
    left, right = _pair(job, form)
    return 0, asdict(grassmann.subspace_angle(left, right))


def _distmat(job, form):
    paths = job.inputs["subspaces"]
    if not paths:
        raise InputError("distmat needs at least one subspace file")
    first = _subspace(job, paths[0], form)
    spaces = [first] + [_subspace(job, p, first.form) for p in paths[1:]]
    return 0, {"distances": _rows(grassmann.distance_matrix(spaces))}


def _complement(job, form):
    C = grassmann.orthogonal_complement(_subspace(job, job.inputs["basis"], form))
    return 0, {"m": C.m, "n": C.n, "basis": _rows(C.basis)}


def _dual_check(job, form):
    left, right = _pair(job, form)
    result = asdict(grassmann.dual_angle_check(left, right))
    result["holds"] = result["gap"] < DUAL_GAP_TOL
    return (0 if result["holds"] else 1), result


def _axiom_form(job: JobSpec):
    kind, _, arg = job.form.partition(":")
    if kind == "diagonal" and arg != "ones":
        try:
            obj = json.loads(Path(arg).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read coefficient table {arg}: {exc}") from exc
        return DiagonalNForm.from_json(obj)
    if kind == "gram" and arg != "standard":
        if job.n is None:
            raise InputError("--n is required for gram forms")
        return parse_form(job.form, parse_matrix_csv(arg).shape[0], job.n)
    if job.m is None or job.n is None:
        raise InputError(f"--m and --n are required for {job.form}")
    return parse_form(job.form, job.m, job.n)


def _check_axioms(job, form):
    form = form or _axiom_form(job)
    m, n = form.m, form.n
    if (job.m is not None and job.m != m) or (job.n is not None and job.n != n):
        raise InputError(f"form has (m, n) = {(m, n)}, options ask for {(job.m, job.n)}")
    cfg = axioms.SampleConfig(m=m, n=n, seed=job.seed, trials=job.trials, tol=job.tol)
    reports = axioms.check_all(form, cfg)
    verdict = axioms.aggregate_verdict(reports)
    report = {
        "m": m,
        "n": n,
        "seed": job.seed,
        "trials": job.trials,
        "tol": job.tol,
        "verdict": verdict,
        "reports": [r.to_dict() for r in reports],
    }
    return (1 if verdict == "fail" else 0), report


def _minor_check(job, form):
    A = parse_matrix_csv(job.inputs["matrix"])
    n = job.n
    if n is None:
        raise InputError("--n is required")
    det = grassmann.determinant(A) if A.shape[0] == A.shape[1] else None
    laplace = grassmann.laplace_identity_check(A, n)
    ok = laplace <= 1e-8 * (1.0 + abs(det))
    report = {"determinant": det, "laplace_residual": laplace}
    try:
        minors = []
        for I in grassmann.index_tuples(A.shape[0], n):
            try:
                rec = grassmann.complementary_minor(A, I)
                holds = True
            except IdentityViolated:
                rec = grassmann.complementary_minor(A, I, tol=math.inf)
                holds = False
            ok = ok and holds
            minors.append({"idx": [i + 1 for i in I], **asdict(rec), "holds": holds})
        report["orthogonal"] = True
        report["minors"] = minors
        report["pluecker_norm"] = grassmann.pluecker_norm(A[:n])
    except NotOrthogonal:
        report["orthogonal"] = False
    report["holds"] = ok
    return (0 if ok else 1), report


_HANDLERS = {
    "inner": _inner,
    "norm": _norm,
    "decompose": _decompose,
    "angle": _angle,
    "distmat": _distmat,
    "complement": _complement,
    "dual-check": _dual_check,
    "check-axioms": _check_axioms,
    "minor-check": _minor_check,
}


def run(job: JobSpec, form=None) -> tuple[int, dict]:
    """Execute one job and return (exit status, report).

    ``form`` overrides ``job.form`` with an already-built form object; it is
    how tests feed in deliberately non-conforming forms.
    """
    if job.command not in _HANDLERS:
        return 2, {"error": "UnknownCommand", "message": f"unknown command {job.command!r}"}
    try:
        return _HANDLERS[job.command](job, form)
    except InputError as exc:
        return 2, {"error": type(exc).__name__, "message": str(exc)}
    except MathematicalFailure as exc:
        return 1, {"error": type(exc).__name__, "message": str(exc)}
    except GrassmetricError as exc:
        return 1, {"error": type(exc).__name__, "message": str(exc)}


def dumps(report: dict) -> str:
    # repr-based floats: shortest round-trip digits
    return json.dumps(report, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise click.UsageError(f"{TOL_ENV}={raw!r} is not a number") from None


def _emit(status: int, report: dict, out: str | None, as_csv: bool = False) -> None:
    if as_csv and status == 0:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(
            [repr(float(v)) for v in row] for row in report["distances"]
        )
        text = buf.getvalue()
    else:
        text = dumps(report)
    if status == 2:
        click.echo(text, err=True, nl=False)
    elif out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    sys.exit(status)


def _common(f):
    f = click.option("--out", type=click.Path(dir_okay=False), help="Write the report here.")(f)
    f = click.option("--tol", type=float, default=None,
                     help=f"Tolerance (default ${TOL_ENV} or {DEFAULT_TOL}).")(f)
    return f


def _form_option(f):
    return click.option("--form", "form_desc", default="gram:standard", show_default=True,
                        help="gram:standard | gram:FILE.csv | diagonal:ones | diagonal:FILE.json")(f)


def _file(*decls, **kw):
    return click.option(*decls, type=click.Path(), required=True, **kw)


def _go(command, form_desc, tol, out, inputs, as_csv=False, **extra):
    job = JobSpec(command=command, form=form_desc, inputs=inputs,
                  tol=_default_tol() if tol is None else tol, **extra)
    status, report = run(job)
    _emit(status, report, out, as_csv)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """n-inner products, subspace angles and Grassmann distances."""


@main.command()
@_form_option
@_file("--left")
@_file("--right")
@_common
def inner(form_desc, left, right, tol, out):
    """<A|B> for the tuples in LEFT and RIGHT."""
    _go("inner", form_desc, tol, out, {"left": left, "right": right})


@main.command()
@_form_option
@_file("--input", "input_")
@_common
def norm(form_desc, input_, tol, out):
    """n-norm of the tuple in INPUT."""
    _go("norm", form_desc, tol, out, {"input": input_})


@main.command()
@_form_option
@_file("--basis")
@_file("--x", "x")
@_common
def decompose(form_desc, basis, x, tol, out):
    """Split each row of X into a part in span(BASIS) plus an orthogonal part."""
    _go("decompose", form_desc, tol, out, {"basis": basis, "x": x})


@main.command()
@_form_option
@_file("--left")
@_file("--right")
@_common
def angle(form_desc, left, right, tol, out):
    """Angle between the subspaces spanned by LEFT and RIGHT."""
    _go("angle", form_desc, tol, out, {"left": left, "right": right})


@main.command()
@_form_option
@click.argument("subspaces", nargs=-1, type=click.Path())
@click.option("--csv", "as_csv", is_flag=True, help="Emit the matrix as CSV instead of JSON.")
@_common
def distmat(form_desc, subspaces, as_csv, tol, out):
    """Pairwise Grassmann distances between the given subspace files."""
    _go("distmat", form_desc, tol, out, {"subspaces": list(subspaces)}, as_csv=as_csv)


@main.command()
@_form_option
@_file("--basis")
@_common
def complement(form_desc, basis, tol, out):
    """Orthonormal basis of the orthogonal complement of span(BASIS)."""
    _go("complement", form_desc, tol, out, {"basis": basis})


@main.command("dual-check")
@_form_option
@_file("--left")
@_file("--right")
@_common
def dual_check(form_desc, left, right, tol, out):
    """Angle of a pair of subspaces versus the angle of their complements."""
    _go("dual-check", form_desc, tol, out, {"left": left, "right": right})


@main.command("check-axioms")
@_form_option
@click.option("--m", "m", type=int, default=None)
@click.option("--n", "n", type=int, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=200, show_default=True)
@_common
def check_axioms(form_desc, m, n, seed, trials, tol, out):
    """Randomized conformance report for a form."""
    _go("check-axioms", form_desc, tol, out, {}, m=m, n=n, seed=seed, trials=trials)


@main.command("minor-check")
@_file("--matrix")
@click.option("--n", "n", type=int, required=True)
@_common
def minor_check(matrix, n, tol, out):
    """Laplace expansion and complementary-minor identities for MATRIX."""
    _go("minor-check", "gram:standard", tol, out, {"matrix": matrix}, n=n)


if __name__ == "__main__":
    main()
