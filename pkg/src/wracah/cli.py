"""Command-line frontend: single symbols, tables, and verification sweeps.

Exit codes: 0 when every check passes, 1 when a verification fails, 2 for
usage errors.  Output is deterministic: canonical JSON (insertion-ordered
keys, 17 significant digits) or CSV with complex values rendered re+imi.

Environment:
  WRACAH_TOL      overrides the default absolute/relative tolerance.
  WRACAH_CORRUPT  test hook; when set, the report command falsifies one
                  check so the failure path can be exercised end to end.
"""

from __future__ import annotations

import os
import sys

import click

from .errors import WracahError
from .fock import quon_operators, verify_quon_relations
from .qarith import HalfInt, ToleranceRule, halfint_range
from .report import Check, VerificationReport
from .serialize import dumps, fmt_complex, fmt_float, matrix_to_csv, rows_to_csv
from .sphere import QuadratureGrid, SphericalPoint, verify_sphere, y_r_eigenfunction, y_r_grid_values
from .su2 import ShiftParams, shift_eigenbasis, verify_shift_eigenbasis, verify_sine_algebra, verify_su2
from .urcoupling import (
    alpha_labels,
    cg_ur_table,
    fbar_table,
    ninej_from_fbar,
    verify_cg_ur_interchange,
    verify_cg_ur_unitarity,
    verify_f_interchange,
    verify_fbar_orthogonality,
    verify_fbar_permutation,
    verify_tensor_transform,
    verify_wigner_eckart,
)
from .wigner import triangle, verify_cg_against_lowering, verify_cg_orthogonality


class HalfIntParam(click.ParamType):
    """Half-integers given as '3/2', '1.5', or '3'."""

    name = "halfint"

    def convert(self, value, param, ctx):
        if isinstance(value, HalfInt):
            return value
        try:
            return HalfInt.parse(str(value))
        except WracahError as exc:
            self.fail(str(exc), param, ctx)


HALFINT = HalfIntParam()


def _resolve_tol(explicit: float | None) -> ToleranceRule | None:
    """--tol beats WRACAH_TOL beats each suite's own default."""
    if explicit is not None:
        return ToleranceRule(explicit, explicit)
    env = os.environ.get("WRACAH_TOL")
    if env:
        value = float(env)
        return ToleranceRule(value, value)
    return None


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def _report_csv(reports: list[VerificationReport]) -> str:
    rows = []
    for rep in reports:
        for check in rep.checks:
            rows.append(
                {
                    "suite": rep.suite,
                    "k": "" if rep.k is None else rep.k,
                    "r": "" if rep.r is None else fmt_float(rep.r),
                    "name": check.name,
                    "residual": check.residual,
                    "tol": check.tol,
                    "pass": check.passed,
                }
            )
    return rows_to_csv(["suite", "k", "r", "name", "residual", "tol", "pass"], rows)


def _report_text(reports: list[VerificationReport]) -> str:
    lines = []
    for rep in reports:
        where = rep.suite
        if rep.k is not None:
            where += f" k={rep.k}"
        if rep.r is not None:
            where += f" r={fmt_float(rep.r)}"
        for check in rep.checks:
            status = "pass" if check.passed else "FAIL"
            lines.append(
                f"{status}  {where}  {check.name}  residual={check.residual:.3e}  tol={check.tol:.1e}"
            )
    return "\n".join(lines)


def _finish_verification(payload: dict, reports: list[VerificationReport], fmt: str, output: str | None) -> None:
    ok = all(rep.passed for rep in reports)
    if fmt == "json":
        _write(dumps(payload), output)
    elif fmt == "csv":
        _write(_report_csv(reports), output)
    else:
        _write(_report_text(reports), output)
    sys.exit(0 if ok else 1)


def _records_out(payload: dict, records: list[dict], columns: list[str], fmt: str, output: str | None) -> None:
    if fmt == "json":
        _write(dumps(payload), output)
    elif fmt == "csv":
        rows = []
        for rec in records:
            row = dict(rec)
            row["value"] = complex(rec["re"], rec["im"])
            rows.append(row)
        _write(rows_to_csv(columns + ["value"], rows), output)
    else:
        lines = []
        for rec in records:
            head = " ".join(f"{col}={_plain(rec[col])}" for col in columns)
            lines.append(f"{head} value={fmt_complex(complex(rec['re'], rec['im']))}")
        _write("\n".join(lines) if lines else "(no records)", output)
    sys.exit(0)


def _plain(value) -> str:
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


FORMAT = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json", show_default=True
)
OUTPUT = click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None)
TOL = click.option("--tol", type=float, default=None, help="override the default tolerance")


@click.group()
@click.version_option(package_name="wracah")
def main() -> None:
    """su(2) from twin deformed oscillators, with coupling calculus in the
    cyclic-shift eigenbasis."""


@main.command("quon-check")
@click.option("--k", type=int, required=True, help="order of the root of unity")
@FORMAT
@OUTPUT
@TOL
def quon_check(k: int, fmt: str, output: str | None, tol: float | None) -> None:
    """Verify the deformed commutators, number operators, and nilpotency."""
    try:
        report = verify_quon_relations(quon_operators(k), _resolve_tol(tol))
    except WracahError as exc:
        raise click.UsageError(str(exc))
    payload = {"command": "quon-check", "k": k, "pass": report.passed, "suites": [report.to_dict()]}
    _finish_verification(payload, [report], fmt, output)


@main.command("su2-check")
@click.option("--k", type=int, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@FORMAT
@OUTPUT
@TOL
def su2_check(k: int, r: float, seed: int, fmt: str, output: str | None, tol: float | None) -> None:
    """Verify the polar construction and its analytic eigenbasis."""
    rule = _resolve_tol(tol)
    try:
        params = ShiftParams(k, r)
        reports = [
            verify_su2(params, rule, seed=seed),
            verify_shift_eigenbasis(params.j, r, rule),
        ]
    except WracahError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "command": "su2-check",
        "k": k,
        "r": r,
        "pass": all(rep.passed for rep in reports),
        "suites": [rep.to_dict() for rep in reports],
    }
    _finish_verification(payload, reports, fmt, output)


@main.command("basis")
@click.option("--j", type=HALFINT, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@FORMAT
@OUTPUT
def basis(j: HalfInt, r: float, fmt: str, output: str | None) -> None:
    """Emit the shift eigenbasis: labels, eigenvalues, transform matrix."""
    try:
        data = shift_eigenbasis(j, r)
    except WracahError as exc:
        raise click.UsageError(str(exc))
    if fmt == "csv":
        _write(matrix_to_csv(data.transform), output)
    elif fmt == "text":
        lines = [
            f"s={s} alpha={fmt_float(data.alphas[s])} eigenvalue={fmt_complex(data.eigenvalues[s])}"
            for s in range(len(data.alphas))
        ]
        _write("\n".join(lines), output)
    else:
        _write(dumps({"command": "basis", **data.to_dict()}), output)
    sys.exit(0)


@main.command("cg-ur")
@click.option("--j1", type=HALFINT, required=True)
@click.option("--j2", type=HALFINT, required=True)
@click.option("--j", type=HALFINT, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option("--s1", type=int, default=None)
@click.option("--s2", type=int, default=None)
@click.option("--s", type=int, default=None)
@FORMAT
@OUTPUT
def cg_ur_cmd(j1, j2, j, r, s1, s2, s, fmt, output) -> None:
    """Transformed coupling coefficients, one record or the full table."""
    chosen = (s1, s2, s)
    if any(x is not None for x in chosen) and not all(x is not None for x in chosen):
        raise click.UsageError("give all of --s1 --s2 --s or none of them")
    try:
        records = []
        if triangle(j1, j2, j):
            table = cg_ur_table(j1, j2, j, r)
            a1, a2, a = alpha_labels(j1, r), alpha_labels(j2, r), alpha_labels(j, r)
            if s1 is not None:
                if not (0 <= s1 <= j1.twice and 0 <= s2 <= j2.twice and 0 <= s <= j.twice):
                    raise click.UsageError("s labels out of range")
                triples = [(s1, s2, s)]
            else:
                triples = [
                    (x1, x2, x)
                    for x1 in range(j1.twice + 1)
                    for x2 in range(j2.twice + 1)
                    for x in range(j.twice + 1)
                ]
            for x1, x2, x in triples:
                value = table[x1, x2, x]
                records.append(
                    {
                        "j1": float(j1),
                        "j2": float(j2),
                        "j": float(j),
                        "alpha1": a1[x1],
                        "alpha2": a2[x2],
                        "alpha": a[x],
                        "r": float(r),
                        "re": value.real,
                        "im": value.imag,
                    }
                )
    except click.UsageError:
        raise
    except WracahError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "command": "cg-ur",
        "j1": str(j1),
        "j2": str(j2),
        "j": str(j),
        "r": float(r),
        "records": records,
    }
    _records_out(payload, records, ["j1", "j2", "j", "alpha1", "alpha2", "alpha", "r"], fmt, output)


@main.command("fbar")
@click.option("--j1", type=HALFINT, required=True)
@click.option("--j2", type=HALFINT, required=True)
@click.option("--j3", type=HALFINT, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@FORMAT
@OUTPUT
def fbar_cmd(j1, j2, j3, r, fmt, output) -> None:
    """The symmetric recoupling symbol over all label triples."""
    try:
        table = fbar_table(j1, j2, j3, r)
        a1, a2, a3 = alpha_labels(j1, r), alpha_labels(j2, r), alpha_labels(j3, r)
    except WracahError as exc:
        raise click.UsageError(str(exc))
    records = []
    for x1 in range(j1.twice + 1):
        for x2 in range(j2.twice + 1):
            for x3 in range(j3.twice + 1):
                value = table[x1, x2, x3]
                records.append(
                    {
                        "j1": float(j1),
                        "j2": float(j2),
                        "j3": float(j3),
                        "alpha1": a1[x1],
                        "alpha2": a2[x2],
                        "alpha3": a3[x3],
                        "r": float(r),
                        "re": value.real,
                        "im": value.imag,
                    }
                )
    payload = {
        "command": "fbar",
        "j1": str(j1),
        "j2": str(j2),
        "j3": str(j3),
        "r": float(r),
        "records": records,
    }
    _records_out(
        payload, records, ["j1", "j2", "j3", "alpha1", "alpha2", "alpha3", "r"], fmt, output
    )


@main.command("ortho")
@click.option("--j1", type=HALFINT, required=True)
@click.option("--j2", type=HALFINT, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option(
    "--mismatch-r",
    type=float,
    default=None,
    help="negative control: use a different family parameter in the second factor",
)
@FORMAT
@OUTPUT
@TOL
def ortho(j1, j2, r, mismatch_r, fmt, output, tol) -> None:
    """Both orthogonality sums of the symmetric symbol."""
    try:
        report = verify_fbar_orthogonality(j1, j2, r, _resolve_tol(tol), mismatched_r=mismatch_r)
    except WracahError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "command": "ortho",
        "j1": str(j1),
        "j2": str(j2),
        "r": float(r),
        "pass": report.passed,
        "suites": [report.to_dict()],
    }
    _finish_verification(payload, [report], fmt, output)


@main.command("we-check")
@click.option("--j", type=HALFINT, required=True)
@click.option("--rank", type=int, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@FORMAT
@OUTPUT
@TOL
def we_check(j, rank, r, fmt, output, tol) -> None:
    """Factorize shift-basis tensor matrix elements through the first symbol."""
    try:
        report = verify_wigner_eckart(j, [rank], r, _resolve_tol(tol))
    except WracahError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "command": "we-check",
        "j": str(j),
        "rank": rank,
        "r": float(r),
        "pass": report.passed,
        "suites": [report.to_dict()],
    }
    _finish_verification(payload, [report], fmt, output)


@main.command("winf")
@click.option("--k", type=int, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option("--max-index", type=int, default=2, show_default=True)
@FORMAT
@OUTPUT
@TOL
def winf(k, r, max_index, fmt, output, tol) -> None:
    """Sine-algebra commutators of the clock-shift monomials."""
    if max_index < 0:
        raise click.UsageError("--max-index must be nonnegative")
    try:
        report = verify_sine_algebra(
            ShiftParams(k, r), range(-max_index, max_index + 1), _resolve_tol(tol)
        )
    except WracahError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "command": "winf",
        "k": k,
        "r": float(r),
        "max_index": max_index,
        "pass": report.passed,
        "suites": [report.to_dict()],
    }
    _finish_verification(payload, [report], fmt, output)


@main.command("yr")
@click.option("--l", "ell", type=int, required=True)
@click.option("--s", type=int, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option("--theta", type=float, required=True)
@click.option("--phi", type=float, required=True)
@click.option("--grid-theta", type=int, default=None, help="also dump the family member on an n_theta x n_phi grid")
@click.option("--grid-phi", type=int, default=None)
@FORMAT
@OUTPUT
def yr(ell, s, r, theta, phi, grid_theta, grid_phi, fmt, output) -> None:
    """Pointwise value of a shift-family eigenfunction on the sphere."""
    try:
        point = SphericalPoint(theta, phi)
        value = y_r_eigenfunction(ell, s, r, point)
    except WracahError as exc:
        raise click.UsageError(str(exc))
    if (grid_theta is None) != (grid_phi is None):
        raise click.UsageError("give both --grid-theta and --grid-phi or neither")
    if grid_theta is not None:
        try:
            grid = QuadratureGrid(grid_theta, grid_phi)
            samples = y_r_grid_values(ell, r, grid)[s]
        except WracahError as exc:
            raise click.UsageError(str(exc))
        rows = []
        for it, th in enumerate(grid.thetas):
            for ip, ph in enumerate(grid.phis):
                rows.append(
                    {
                        "theta": float(th),
                        "phi": float(ph),
                        "re": samples[it, ip].real,
                        "im": samples[it, ip].imag,
                    }
                )
        if fmt == "json":
            _write(
                dumps({"command": "yr", "l": ell, "s": s, "r": float(r), "grid": rows}), output
            )
        else:
            _write(rows_to_csv(["theta", "phi", "re", "im"], rows), output)
        sys.exit(0)
    record = {
        "command": "yr",
        "l": ell,
        "s": s,
        "r": float(r),
        "theta": float(theta),
        "phi": float(phi),
        "re": value.real,
        "im": value.imag,
    }
    if fmt == "csv":
        _write(rows_to_csv(["theta", "phi", "re", "im"], [record]), output)
    elif fmt == "text":
        _write(f"y[l={ell}, s={s}, r={fmt_float(float(r))}]({fmt_float(theta)}, {fmt_float(phi)}) = {fmt_complex(value)}", output)
    else:
        _write(dumps(record), output)
    sys.exit(0)


def _merged(suite: str, r: float | None, tagged: list[tuple[str, VerificationReport]]) -> VerificationReport:
    out = VerificationReport(suite=suite, k=None, r=r)
    for tag, rep in tagged:
        for check in rep.checks:
            out.add(Check(f"{tag}_{check.name}", check.residual, check.tol, check.passed))
    return out


def _ninej_cases(max_j: HalfInt) -> list[tuple]:
    cap = min(HalfInt(2), max_j)
    cases = [tuple(HalfInt(0) for _ in range(9))]
    if cap.twice >= 1:
        h = HalfInt(1)
        one = HalfInt(2)
        zero = HalfInt(0)
        cases.append((h, h, one, h, h, one, one, one, zero))
    if cap.twice >= 2:
        one = HalfInt(2)
        zero = HalfInt(0)
        cases.append((one, one, one, zero, one, one, one, zero, one))
        cases.append((one, one, zero, one, one, one, zero, one, one))
    return cases


def _build_report(max_j: HalfInt, r: float, seed: int, rule: ToleranceRule | None) -> list[VerificationReport]:
    reports: list[VerificationReport] = []
    kmax = max_j.twice + 1

    for k in range(2, kmax + 1):
        reports.append(verify_quon_relations(quon_operators(k), rule))
    for k in range(2, kmax + 1):
        params = ShiftParams(k, r)
        reports.append(verify_su2(params, rule, seed=seed))
    for j in halfint_range(HalfInt(1), max_j):
        reports.append(verify_shift_eigenbasis(j, r, rule))

    sine_rs = [0.0] if r == 0.0 else [0.0, float(r)]
    for k in (3, 5):
        if k <= kmax:
            for rv in sine_rs:
                reports.append(verify_sine_algebra(ShiftParams(k, rv), range(-2, 3), rule))

    reports.append(verify_cg_against_lowering(max_j, rule))
    reports.append(verify_cg_orthogonality(max_j, rule))

    pairs = [(a, b) for a in halfint_range(0, max_j) for b in halfint_range(0, max_j)]
    reports.append(
        _merged(
            "cg-ur-unitarity",
            r,
            [(f"tj1_{a.twice}_tj2_{b.twice}", verify_cg_ur_unitarity(a, b, r, rule)) for a, b in pairs],
        )
    )
    reports.append(
        _merged(
            "cg-ur-interchange",
            r,
            [(f"tj1_{a.twice}_tj2_{b.twice}", verify_cg_ur_interchange(a, b, r, rule)) for a, b in pairs],
        )
    )
    reports.append(
        _merged(
            "fbar-orthogonality",
            r,
            [(f"tj1_{a.twice}_tj2_{b.twice}", verify_fbar_orthogonality(a, b, r, rule)) for a, b in pairs],
        )
    )

    triple_cap = min(max_j, HalfInt(2))
    triples = [
        (a, b, c)
        for a in halfint_range(0, triple_cap)
        for b in halfint_range(0, triple_cap)
        for c in halfint_range(0, triple_cap)
    ]
    reports.append(
        _merged(
            "fbar-permutation",
            r,
            [
                (f"tj_{a.twice}_{b.twice}_{c.twice}", verify_fbar_permutation(a, b, c, r, rule))
                for a, b, c in triples
            ],
        )
    )
    reports.append(
        _merged(
            "f-interchange",
            r,
            [
                (f"tj_{a.twice}_{b.twice}_{c.twice}", verify_f_interchange(a, b, c, r, rule))
                for a, b, c in triples
            ],
        )
    )

    we_js = halfint_range(HalfInt(1), max_j)
    reports.append(
        _merged(
            "tensor-transform",
            r,
            [(f"tj_{j.twice}", verify_tensor_transform(j, 1, r, rule)) for j in we_js],
        )
    )
    reports.append(
        _merged(
            "wigner-eckart",
            r,
            [
                (
                    f"tj_{j.twice}",
                    verify_wigner_eckart(
                        j, [0, 1] + ([2] if j.twice >= 2 else []), r, rule
                    ),
                )
                for j in we_js
            ],
        )
    )

    ninej_report = VerificationReport(suite="ninej-substitution", k=None, r=float(r))
    bound = rule.abs_tol if rule is not None else 1e-10
    for case in _ninej_cases(max_j):
        outcome = ninej_from_fbar(*case, r)
        tag = "_".join(str(j.twice) for j in case)
        ninej_report.add(Check.residual_check(f"tj_{tag}", outcome.residual, bound))
    reports.append(ninej_report)

    family_max = min(2 * (max_j.twice // 2) or 1, 4)
    sphere_rs = [0.0, float(r)] if float(r) != 0.0 else [0.0, 1.0]
    reports.append(
        verify_sphere(l_max=8, family_l_max=max(1, family_max), rs=sphere_rs, tol=rule)
    )
    return reports


@main.command("report")
@click.option("--max-j", "max_j", type=HALFINT, required=True)
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@FORMAT
@OUTPUT
@TOL
def report_cmd(max_j, r, seed, fmt, output, tol) -> None:
    """Full verification sweep across every suite, sized by --max-j."""
    if max_j.twice < 1:
        raise click.UsageError("--max-j must be at least 1/2")
    try:
        reports = _build_report(max_j, float(r), seed, _resolve_tol(tol))
    except WracahError as exc:
        raise click.UsageError(str(exc))

    if os.environ.get("WRACAH_CORRUPT"):
        first = reports[0].checks[0]
        reports[0].checks[0] = Check(first.name, first.tol * 10.0 + 1.0, first.tol, False)

    payload = {
        "command": "report",
        "max_j": str(max_j),
        "r": float(r),
        "pass": all(rep.passed for rep in reports),
        "suites": [rep.to_dict() for rep in reports],
    }
    _finish_verification(payload, reports, fmt, output)
