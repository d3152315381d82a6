"""Deterministic text / JSON / CSV rendering of reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Dict, List, Sequence

from .algebra import ValidationReport
from .cocyclic import HCReport
from .correspondence import VerificationReport

FORMATS = ("text", "json", "csv")
HC_FIELDS = ("degree", "kernel_dim", "image_rank", "hc_dim", "truncation_stable")


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv(header: Sequence[str], rows: List[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([json.dumps(x, sort_keys=True) if isinstance(x, (dict, list)) else x for x in r])
    return buf.getvalue()


def _bool(x: bool) -> str:
    return "true" if x else "false"


# HC tables -----------------------------------------------------------------------

def render_hc(rep: HCReport, fmt: str, meta: Dict[str, Any]) -> str:
    if fmt == "json":
        return _json({**meta, "name": rep.name, "rows": [r.to_dict() for r in rep.rows]})
    if fmt == "csv":
        return _csv(HC_FIELDS, [[getattr(r, f) if f != "truncation_stable" else _bool(r.truncation_stable)
                                 for f in HC_FIELDS] for r in rep.rows])
    lines = [rep.name]
    lines += [f"  {k}: {meta[k]}" for k in sorted(meta)]
    lines.append(f"  {'n':>3} {'ker':>8} {'im':>8} {'HC^n':>6}  stable")
    for r in rep.rows:
        lines.append(f"  {r.degree:>3} {r.kernel_dim:>8} {r.image_rank:>8} {r.hc_dim:>6}  {_bool(r.truncation_stable)}")
    return "\n".join(lines) + "\n"


# validation ----------------------------------------------------------------------

def render_validation(reps: Sequence[ValidationReport], fmt: str) -> str:
    if fmt == "json":
        return _json({"passed": all(r.passed for r in reps), "reports": [r.to_dict() for r in reps]})
    if fmt == "csv":
        rows = []
        for r in reps:
            if r.passed:
                rows.append([r.subject, "", "", "true"])
            for v in r.violations:
                rows.append([r.subject, v.axiom, list(v.witness), "false"])
        return _csv(["subject", "axiom", "witness", "passed"], rows)
    lines = []
    for r in reps:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.subject} ({', '.join(r.checked)})")
        for v in r.violations:
            lines.append(f"  {v}")
    lines.append(f"verdict: {'pass' if all(r.passed for r in reps) else 'fail'}")
    return "\n".join(lines) + "\n"


# verification --------------------------------------------------------------------

def render_verification(reps: Sequence[VerificationReport], fmt: str, meta: Dict[str, Any]) -> str:
    passed = all(r.passed for r in reps)
    if fmt == "json":
        return _json({**meta, "passed": passed, "reports": [r.to_dict() for r in reps]})
    if fmt == "csv":
        rows = []
        for r in reps:
            for c in r.checks:
                d = c.to_dict()
                rows.append([r.subject, c.name, "" if c.degree is None else c.degree, _bool(c.passed), d["detail"]])
            if r.skipped:
                rows.append([r.subject, "skipped", "", "true", {"reason": r.skipped}])
        return _csv(["report", "check", "degree", "passed", "detail"], rows)
    lines = [f"  {k}: {meta[k]}" for k in sorted(meta)]
    for r in reps:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.subject}")
        if r.skipped:
            lines.append(f"  skipped: {r.skipped}")
        for c in r.checks:
            deg = "" if c.degree is None else f" n={c.degree}"
            detail = " ".join(f"{k}={c.detail[k]}" for k in sorted(c.detail))
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}{deg}" + (f"  {detail}" if detail else ""))
        for key in sorted(r.tables):
            t = r.tables[key]
            lines.append(f"  table {key}: {t.name} = {', '.join(str(x) for x in t.dims())}")
    lines.append(f"verdict: {'pass' if passed else 'fail'}")
    return "\n".join(lines) + "\n"


def render_listing(entries: Dict[str, List[str]], fmt: str) -> str:
    if fmt == "json":
        return _json(entries)
    if fmt == "csv":
        return _csv(["kind", "name"], [[k, n] for k in entries for n in entries[k]])
    lines = []
    for k in entries:
        lines.append(f"{k}:")
        lines += [f"  {n}" for n in entries[k]]
    return "\n".join(lines) + "\n"
