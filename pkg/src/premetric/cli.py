"""Command-line interface: ``premetric COMMAND [--input PATH | --catalog builtin] ...``.

Every command prints a report (JSON by default).  Mismatches with closed-form
predictions are findings and exit 0; bad input and size guards exit 1;
usage errors exit 2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, replace
from typing import NamedTuple

from . import abelian_cohomology as coh
from .abelian_groups import GroupHom
from .catalog import FormSpec, builtin_catalog, parse_form
from .center import center_form, embeddings, enumerate_trivializable
from .config import _current, current_limits
from .errors import InvalidCocycle, InvalidForm, ParseError, PropertyViolation, SizeGuard
from .module_categories import enumerate_module_cats, is_invertible_modcat
from .picard import (Comparison, classify, cokernel_partial, kernel_partial, paper_predictions,
                     verify_crossed_module)
from .quadratic_forms import is_nondegenerate, orthogonal_group, radical, sigma_tilde

COMMANDS = ("describe", "picard", "orthogonal", "modcats", "crossed-module", "kernel",
            "cokernel", "center", "cohomology", "paper-check", "catalog")


@dataclass(frozen=True)
class RunConfig:
    max_group_order: int | None = None
    max_candidates: int | None = None
    threads: int | None = None
    fmt: str = "json"
    catalog: str | None = None

    def __post_init__(self):
        for name in ("max_group_order", "max_candidates", "threads"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.fmt not in ("json", "table", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")


class CommandResult(NamedTuple):
    code: int
    output: str


def _mat(h: GroupHom) -> list:
    return h.to_list()


def _form_json(q) -> dict:
    return FormSpec.from_form(q).to_json()


# per-form reports


def _kernel_json(k) -> dict:
    return {
        "order": len(k.kernel),
        "elements": [_mat(f) for f in k.kernel],
        "radical_basis": [list(b) for b in k.radical.basis],
        "radical_orders": list(k.radical.basis_orders),
        "radical_picard_order": len(k.radical_picard),
        "isomorphism_ok": k.isomorphism_ok,
        "violations": list(k.violations),
    }


def _cokernel_json(c) -> dict:
    return {
        "order": c.order,
        "orthogonal_order": c.orthogonal_order,
        "image_order": c.image_order,
        "image_normal": c.image_normal,
        "tannakian_radical": c.tannakian_radical,
        "radical_order": c.radical_order,
        "hom_quotient_order": c.hom_quotient_order,
        "unipotent_order": c.unipotent_order,
        "unipotent_star_closed": c.unipotent_star_closed,
        "image_meets_unipotent": c.image_meets_unipotent,
        "restriction_kernel_order": c.restriction_kernel_order,
        "restriction_well_defined": c.restriction_well_defined,
        "exactness_claim_holds": c.exactness_claim_holds,
    }


def kernel_comparison(k) -> Comparison:
    return Comparison("Kernel proposition: ker d = P(A_perp, q|A_perp)",
                      len(k.radical_picard), len(k.kernel),
                      f"j and i mutually inverse: {k.isomorphism_ok}")


def cokernel_comparison(c) -> Comparison | None:
    if c.hom_quotient_order is None:
        return None
    return Comparison("Cokernel proposition: Hom(A/A_perp, A_perp) injects into coker d",
                      c.hom_quotient_order, c.restriction_kernel_order,
                      f"coker order {c.order}; restriction well defined: {c.restriction_well_defined}")


def picard_report(q) -> dict:
    cm = verify_crossed_module(q)
    k = kernel_partial(q)
    c = cokernel_partial(q)
    comps = paper_predictions(q, cm.picard, cm.orthogonal)
    comps.append(kernel_comparison(k))
    cc = cokernel_comparison(c)
    if cc is not None:
        comps.append(cc)
    return {
        "form": _form_json(q),
        "classification": classify(q),
        "picard_order": len(cm.picard),
        "orthogonal_order": len(cm.orthogonal),
        "picard_elements": [_mat(f) for f in cm.picard],
        "partial_table": [{"f": _mat(f), "partial": _mat(cm.orthogonal[i])}
                          for f, i in zip(cm.picard, cm.partial)],
        "axioms_ok": cm.axioms_ok,
        "violations": list(cm.violations),
        "kernel": _kernel_json(k),
        "cokernel": _cokernel_json(c),
        "paper_comparison": [x.to_dict() for x in comps],
    }


def describe_report(q) -> dict:
    rad = radical(q)
    return {
        "form": _form_json(q),
        "group_order": q.group.order,
        "invariant_factors": list(q.group.invariant_factors()),
        "classification": classify(q),
        "nondegenerate": is_nondegenerate(q),
        "radical_basis": [list(b) for b in rad.subgroup.basis],
        "radical_order": rad.subgroup.order,
        "radical_tannakian": rad.tannakian,
        "sigma_tilde": _mat(sigma_tilde(q)),
    }


def orthogonal_report(q) -> dict:
    O = orthogonal_group(q)
    return {"form": _form_json(q), "orthogonal_order": len(O), "elements": [_mat(g) for g in O]}


def modcats_report(q, invertible_only=False) -> dict:
    data = enumerate_module_cats(q)
    inv = sum(1 for d in data if is_invertible_modcat(d))
    if invertible_only:
        data = [d for d in data if is_invertible_modcat(d)]
    return {"form": _form_json(q), "count": len(data), "invertible_count": inv,
            "data": [d.to_json() for d in data]}


def crossed_module_report(q) -> dict:
    cm = verify_crossed_module(q)
    return {
        "form": _form_json(q),
        "picard_order": len(cm.picard),
        "orthogonal_order": len(cm.orthogonal),
        "axioms_ok": cm.axioms_ok,
        "violations": list(cm.violations),
        "kernel_order": len(cm.kernel),
        "image_order": len(cm.image),
        "action_table": cm.action,
        "partial_table": cm.partial,
    }


def kernel_report(q) -> dict:
    k = kernel_partial(q)
    out = _kernel_json(k)
    out["form"] = _form_json(q)
    out["paper_comparison"] = [kernel_comparison(k).to_dict()]
    return out


def cokernel_report(q) -> dict:
    c = cokernel_partial(q)
    out = _cokernel_json(c)
    out["form"] = _form_json(q)
    out["cosets"] = c.cosets
    cc = cokernel_comparison(c)
    out["paper_comparison"] = [cc.to_dict()] if cc else []
    return out


def center_report(q) -> dict:
    c = center_form(q)
    embeddings(q, c)
    T = enumerate_trivializable(q, c)
    spec = c.form.to_spec()
    return {
        "form": _form_json(q),
        "center_orders": spec["orders"],
        "center_q_diag": spec["q_diag"],
        "center_sigma_offdiag": spec["sigma_offdiag"],
        "center_nondegenerate": is_nondegenerate(c.form),
        "trivializable_count": len(T),
        "trivializable": [_mat(a) for a in T],
    }


def cohomology_report(q) -> dict:
    p = coh.standard_cocycle(q)
    rep = coh.validate_abelian_cocycle(p)
    trace = coh.trace_form(p)
    return {
        "form": _form_json(q),
        "valid": rep.valid,
        "coboundary_convention": rep.convention,
        "standard_sign": coh.standard_sign(),
        "trace_matches": trace == q,
        "cocycle": coh.cocycle_to_json(p),
    }


def paper_check_rows(forms) -> list:
    rows = []
    for q in forms:
        comps = paper_predictions(q)
        comps.append(kernel_comparison(kernel_partial(q)))
        cc = cokernel_comparison(cokernel_partial(q))
        if cc is not None:
            comps.append(cc)
        for x in comps:
            row = {"form": q.name}
            row.update(x.to_dict())
            row["status"] = "MATCH" if x.match else "FLAGGED"
            rows.append(row)
    return rows


PER_FORM = {
    "describe": describe_report,
    "picard": picard_report,
    "orthogonal": orthogonal_report,
    "crossed-module": crossed_module_report,
    "kernel": kernel_report,
    "cokernel": cokernel_report,
    "center": center_report,
    "cohomology": cohomology_report,
}


# formatting


def _scalar(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return ""
    return str(v).lower() if isinstance(v, bool) else str(v)


def _rows_of(report) -> list:
    if isinstance(report, list):
        return [r if isinstance(r, dict) else {"value": r} for r in report]
    if "rows" in report:
        return report["rows"]
    return [report]


def render(report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = _rows_of(report)
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_scalar(r.get(k)) for k in keys])
        return buf.getvalue()
    cells = [[_scalar(r.get(k)) for k in keys] for r in rows]
    widths = [max([len(k)] + [len(c[i]) for c in cells]) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


# argument handling


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="JSON form document")
    src.add_argument("--catalog", choices=["builtin"], help="use the builtin catalog")
    common.add_argument("--name", help="select one catalog form by name")
    common.add_argument("--format", dest="fmt", choices=["json", "table", "csv"], default="json")
    common.add_argument("--max-group-order", type=int, metavar="N",
                        help="largest |A| to enumerate (default 36)")
    common.add_argument("--max-candidates", type=int, metavar="N",
                        help="largest candidate count (default 10^7)")
    common.add_argument("--threads", type=int, metavar="N", help="worker threads")

    parser = _Parser(prog="premetric", description="Pre-metric groups and their Picard crossed modules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "modcats":
            p.add_argument("--invertible-only", action="store_true")
        if name == "catalog":
            p.add_argument("--list", action="store_true", help="print names and group orders")
    return parser


def _forms(args) -> list:
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc.strerror}") from None
        q = parse_form(text)
        if args.name and q.name != args.name:
            raise ParseError(f"{args.input} holds form {q.name!r}, not {args.name!r}")
        return [q]
    specs = builtin_catalog()
    if args.name:
        specs = [s for s in specs if s.name == args.name]
        if not specs:
            raise ParseError(f"no builtin form named {args.name!r}")
    elif not args.catalog and args.command not in ("paper-check", "catalog"):
        raise _UsageError(f"premetric {args.command}: error: one of --input, --catalog or --name is required")
    return [s.to_form() for s in specs]


def _run(args) -> object:
    cmd = args.command
    if cmd == "catalog":
        specs = [s for s in builtin_catalog() if not args.name or s.name == args.name]
        if args.list:
            rows = [{"name": s.name, "orders": list(s.orders),
                     "group_order": s.to_form().group.order} for s in specs]
            if args.fmt == "json":
                return rows
            return {"rows": rows}
        return [s.to_json() for s in specs]
    forms = _forms(args)
    if cmd == "paper-check":
        rows = paper_check_rows(forms)
        if args.fmt == "json":
            return {"rows": rows, "flagged": [r for r in rows if not r["match"]]}
        return {"rows": rows}
    if cmd == "modcats":
        reports = [modcats_report(q, args.invertible_only) for q in forms]
    else:
        reports = [PER_FORM[cmd](q) for q in forms]
    if args.input or args.name:
        return reports[0]
    return reports


def run_command(argv) -> CommandResult:
    """Parse ``argv``, run the command and return (exit code, rendered text)."""
    try:
        args = build_parser().parse_args(list(argv))
        cfg = RunConfig(args.max_group_order, args.max_candidates, args.threads, args.fmt,
                        args.catalog)
    except _UsageError as exc:
        return CommandResult(2, str(exc) + "\n")
    except ValueError as exc:
        return CommandResult(2, f"premetric: error: {exc}\n")
    except SystemExit as exc:  # --help
        return CommandResult(int(exc.code or 0), "")
    try:
        lim = current_limits()
    except ValueError as exc:
        return CommandResult(1, f"premetric: {exc}\n")
    overrides = {k: v for k, v in (("max_group_order", cfg.max_group_order),
                                   ("max_candidates", cfg.max_candidates),
                                   ("threads", cfg.threads)) if v is not None}
    token = _current.set(replace(lim, **overrides))
    try:
        report = _run(args)
    except _UsageError as exc:
        return CommandResult(2, str(exc) + "\n")
    except (ParseError, InvalidForm, InvalidCocycle, SizeGuard) as exc:
        return CommandResult(1, f"premetric: {type(exc).__name__}: {exc}\n")
    except PropertyViolation as exc:
        return CommandResult(1, f"premetric: internal check failed: {exc}\n")
    finally:
        _current.reset(token)
    return CommandResult(0, render(report, cfg.fmt))


def main(argv=None) -> int:
    res = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if res.code == 0 else sys.stderr
    stream.write(res.output)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
