"""Certification reports and the R-matrix file format.

The file format is sparse JSON with 1-based indices and coefficients in the
shared grammar:

    {"dim": N,
     "nu": "<text>",                      # optional
     "comment": "<text>",                 # optional
     "entries": [{"out": [k, l], "in": [i, j], "coeff": "<text>"}, ...]}

Omitted entries are zero; duplicate (out, in) pairs are an error.  Reports
serialize with a fixed key order and canonical scalar text, so identical
configurations produce byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from . import __version__
from .errors import DimensionMismatch, ParseError
from .scalars import SYMBOLIC, parse as parse_scalar
from .tensors import TensorOperator


@dataclass
class Report:
    """One verification run: config echo, derived values, ordered checks."""

    status: str
    metadata: dict
    derived: dict
    checks: list
    reason: Optional[str] = None
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return self.status == "pass"


def build_report(result, config_echo, field, notes=()):
    """Assemble a Report from a VerificationResult."""
    derived = dict(result.derived)
    for key in ("nu", "mu", "trace_C", "trace_D"):
        if derived.get(key) is not None:
            derived[key] = field.to_text(derived[key])
    if derived.get("X_diag") is not None:
        derived["X_diag"] = [field.to_text(x) for x in derived["X_diag"]]
    checks = []
    for o in result.outcomes:
        entry = {"id": o.id, "equation": o.equation, "pass": o.passed}
        if o.witness is not None:
            out, inp, value = o.witness
            entry["witness"] = {
                "out": list(out),
                "in": list(inp),
                "value": field.to_text(value),
            }
        checks.append(entry)
    return Report(
        status=result.status,
        metadata={"tool": "bmwcert", "version": __version__, "config": config_echo},
        derived=derived,
        checks=checks,
        reason=result.aborted,
        notes=list(notes),
    )


def render_json(report):
    doc = {"status": report.status}
    if report.reason is not None:
        doc["reason"] = report.reason
    doc["metadata"] = report.metadata
    doc["notes"] = report.notes
    doc["derived"] = report.derived
    doc["checks"] = report.checks
    return json.dumps(doc, indent=2) + "\n"


def render_text(report):
    lines = [f"status: {report.status}"]
    if report.reason is not None:
        lines.append(f"reason: {report.reason}")
    for note in report.notes:
        lines.append(f"note: {note}")
    for key, value in report.derived.items():
        if key == "X_diag" and value is not None:
            value = "[" + ", ".join(value) + "]"
        lines.append(f"{key}: {value}")
    lines.append("checks:")
    for chk in report.checks:
        flag = "pass" if chk["pass"] else "FAIL"
        line = f"  [{flag}] {chk['id']}: {chk['equation']}"
        if "witness" in chk:
            w = chk["witness"]
            line += f"  witness out={w['out']} in={w['in']} value={w['value']}"
        lines.append(line)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# R-matrix files


def import_rmatrix(path):
    """Read an operator file; returns (TensorOperator arity 2, nu or None).

    Raises ParseError on malformed JSON, grammar errors or duplicate cells,
    and DimensionMismatch on indices outside 1..dim.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"bad dim {dim!r}")
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise ParseError("missing entries list")
    f = SYMBOLIC
    seen = set()
    triples = []
    for k, entry in enumerate(entries):
        out = entry.get("out")
        inp = entry.get("in")
        coeff = entry.get("coeff")
        for pair in (out, inp):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, int) for x in pair)
            ):
                raise ParseError(f"entry {k}: indices must be pairs of integers")
            if not all(1 <= x <= dim for x in pair):
                raise DimensionMismatch(
                    f"entry {k}: index {pair} outside 1..{dim} (indices are 1-based)"
                )
        cell = (tuple(out), tuple(inp))
        if cell in seen:
            raise ParseError(f"entry {k}: duplicate cell out={out} in={inp}")
        seen.add(cell)
        if not isinstance(coeff, str):
            raise ParseError(f"entry {k}: coeff must be grammar text")
        try:
            value = parse_scalar(coeff)
        except ParseError as exc:
            raise ParseError(f"entry {k}: {exc}") from exc
        triples.append((cell[0], cell[1], value))
    op = TensorOperator.from_entries(dim, 2, f, triples)
    nu_text = doc.get("nu")
    nu = parse_scalar(nu_text) if isinstance(nu_text, str) else None
    return op, nu


def export_rmatrix(op, nu, path, comment=None, provenance=None):
    """Write an arity-2 operator in the file format; round-trips through
    import_rmatrix."""
    f = op.field
    doc = {"dim": op.N}
    if nu is not None:
        doc["nu"] = f.to_text(nu)
    if comment:
        doc["comment"] = comment
    if provenance:
        doc["provenance"] = provenance
    doc["entries"] = [
        {"out": list(out), "in": list(inp), "coeff": f.to_text(v)}
        for (out, inp), v in op.items()
    ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, indent=2) + "\n")


def import_twist(path):
    """Read a twist file: {"d": [["<coeff>", ...], ...]} with grammar text."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    grid = doc.get("d") if isinstance(doc, dict) else None
    if not isinstance(grid, list) or not grid:
        raise ParseError("twist file needs a nonempty 'd' array")
    rows = []
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != len(grid):
            raise ParseError(f"twist row {i} is not a list of {len(grid)} entries")
        rows.append(tuple(parse_scalar(str(c)) for c in row))
    return tuple(rows)
