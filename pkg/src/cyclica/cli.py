"""Command line workbench.

Exit codes: 0 success, 1 a verification or validation failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence

from . import registry
from .algebra import StructureConstantAlgebra, SubalgebraInclusion, ValidationReport, validate_algebra, validate_inclusion
from .algebra_complex import AlgebraCochainComplex, hc_constant, hc_lambda, hc_plain
from .cocyclic import DifferentialSquareNonzero, build_total_complex, verify_cocyclic, verify_mixed_identities
from .correspondence import (
    CorrespondencePair,
    NotDeclaredSemisimple,
    VerificationReport,
    verify_bconstant_generalization,
    verify_corollary_semisimple,
    verify_cyclic_map,
    verify_image_constant,
    verify_theorem,
)
from .equivariant import (
    ambient_cyclic_order_defect,
    check_closure,
    equivariant_subspace,
    equivariant_subspace_alt,
    hc_equivariant,
)
from .hopf import (
    HopfAlgebraData,
    InvalidAction,
    ModuleAlgebraAction,
    NotActionStable,
    antipode_antihomomorphism,
    crossed_product,
    validate_action,
    validate_crossed_product,
    validate_hopf,
)
from .linalg import ImageEscapesCodomain
from .report import FORMATS, render_hc, render_listing, render_validation, render_verification
from .specfile import ParseError, ValidationError, parse_spec

MAX_UNFORCED_DIM = 8
VERIFY_TARGETS = ("cocyclic", "complex", "lemma", "cyclic-map", "image", "theorem", "corollary", "bconstant", "all")


class BadInput(Exception):
    pass


class Failed(Exception):
    """Validation failed while loading an input; carries the report text."""


# resolution ----------------------------------------------------------------------

def _is_file(value: str) -> bool:
    return os.path.isfile(value) or value.endswith(".json")


def _load(value: str, validate: bool = True):
    try:
        return parse_spec(value, validate=validate)
    except ParseError as exc:
        raise BadInput(f"{value}: {exc}") from None
    except ValidationError as exc:
        raise Failed(f"{value}: {exc}") from None


def resolve_algebra(value: str, validate: bool = True) -> StructureConstantAlgebra:
    if _is_file(value):
        return _load(value, validate).algebra
    try:
        return registry.algebra(value)
    except registry.UnknownName as exc:
        raise BadInput(exc.args[0]) from None


def resolve_hopf(value: str, validate: bool = True) -> HopfAlgebraData:
    if _is_file(value):
        spec = _load(value, validate)
        if spec.hopf is None:
            raise BadInput(f"{value}: no hopf block")
        return spec.hopf
    try:
        return registry.hopf(value)
    except registry.UnknownName as exc:
        raise BadInput(exc.args[0]) from None


def resolve_action(value: str, validate: bool = True) -> ModuleAlgebraAction:
    if _is_file(value):
        spec = _load(value, validate)
        if spec.action is None:
            raise BadInput(f"{value}: no action block")
        return spec.action
    try:
        return registry.action(value)
    except registry.UnknownName as exc:
        raise BadInput(exc.args[0]) from None


def resolve_subalgebra(value: Optional[str], big: StructureConstantAlgebra,
                       crossed_of: Optional[str] = None) -> SubalgebraInclusion:
    """``unit``, ``full``, ``hopf``/``base`` (crossed products only) or a spec file with a subalgebra block."""
    value = value or "unit"
    if value == "unit":
        return registry.unit_subalgebra(big)
    if value == "full":
        return registry.full_subalgebra(big)
    if value in ("hopf", "base"):
        if crossed_of is None:
            raise BadInput(f"subalgebra {value!r} needs a crossed:<action> algebra")
        cp = registry.crossed(crossed_of)
        return cp.include_H if value == "hopf" else cp.include_A
    if _is_file(value):
        spec = _load(value)
        if spec.subalgebra is None:
            raise BadInput(f"{value}: no subalgebra block")
        if spec.algebra != big:
            raise BadInput(f"{value}: subalgebra lives in a different algebra")
        return SubalgebraInclusion(spec.subalgebra.small, big, spec.subalgebra.embed, spec.subalgebra.name)
    raise BadInput(f"unknown subalgebra {value!r}")


def resolve_degree(requested: Optional[int], dim: int, force: bool) -> int:
    if dim > MAX_UNFORCED_DIM and not force:
        raise BadInput(f"dimension {dim} exceeds {MAX_UNFORCED_DIM}; pass --force to compute anyway")
    if requested is not None:
        if requested < 0:
            raise BadInput("--max-degree must be non-negative")
        return requested
    if dim <= 2:
        return 3
    if dim <= 4:
        return 2
    return 1


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


# commands ------------------------------------------------------------------------

def cmd_list(args) -> int:
    entries = {
        "algebras": registry.algebra_names() + [f"crossed:{a}" for a in registry.builtin_crossed_products()],
        "hopf": registry.hopf_names(),
        "actions": list(registry.builtin_crossed_products()) + ["trivial:<hopf>-on-<algebra>"],
        "subalgebras": ["unit", "full", "hopf", "base", "<spec file>"],
    }
    _emit(render_listing(entries, args.format))
    return 0


def cmd_validate(args) -> int:
    reps: List[ValidationReport] = []
    if args.spec:
        spec = _load(args.spec, validate=False)
        reps = spec.validation_reports()
        if spec.action is not None:
            reps += _crossed_reports(spec.action)
    elif args.action:
        act = resolve_action(args.action, validate=False)
        reps = [validate_algebra(act.alg), validate_hopf(act.hopf), antipode_antihomomorphism(act.hopf),
                validate_action(act)]
        reps += _crossed_reports(act)
    elif args.hopf:
        h = resolve_hopf(args.hopf, validate=False)
        reps = [validate_hopf(h), antipode_antihomomorphism(h)]
    elif args.algebra:
        alg = resolve_algebra(args.algebra, validate=False)
        reps = [validate_algebra(alg)]
        if args.subalgebra:
            sub = resolve_subalgebra(args.subalgebra, alg, _crossed_name(args.algebra))
            reps += [validate_algebra(sub.small), validate_inclusion(sub)]
    else:
        raise BadInput("validate needs one of --spec, --algebra, --hopf, --action")
    _emit(render_validation(reps, args.format))
    return 0 if all(r.passed for r in reps) else 1


def _crossed_reports(act: ModuleAlgebraAction) -> List[ValidationReport]:
    if not validate_action(act).passed:
        return []
    return [validate_crossed_product(crossed_product(act))]


def _crossed_name(algebra_arg: str) -> Optional[str]:
    return algebra_arg[len("crossed:"):] if algebra_arg.startswith("crossed:") else None


def cmd_compute(args) -> int:
    if args.kind == "hc":
        if not args.algebra:
            raise BadInput("compute hc needs --algebra")
        alg = resolve_algebra(args.algebra)
        n = resolve_degree(args.max_degree, alg.dim, args.force)
        meta = {"algebra": args.algebra, "complex": args.complex, "max_degree": n}
        if args.complex == "plain":
            rep = hc_plain(alg, n)
        elif args.complex == "lambda":
            rep = hc_lambda(alg, n)
        else:
            sub = resolve_subalgebra(args.subalgebra, alg, _crossed_name(args.algebra))
            meta["subalgebra"] = args.subalgebra or "unit"
            rep = hc_constant(alg, sub, n)
    else:
        if not args.action:
            raise BadInput("compute hc-equivariant needs --action")
        act = resolve_action(args.action)
        n = resolve_degree(args.max_degree, act.alg.dim * act.hopf.dim, args.force)
        meta = {"action": args.action, "max_degree": n, "normalized": args.normalized}
        sub = None
        if args.subalgebra:
            sub = resolve_subalgebra(args.subalgebra, act.alg)
            meta["subalgebra"] = args.subalgebra
        rep = hc_equivariant(act, n, sub, normalized=args.normalized)
    _emit(render_hc(rep, args.format, meta))
    return 0


def _from_validation(rep: ValidationReport, name: str) -> VerificationReport:
    out = VerificationReport(name)
    failed = {v.axiom for v in rep.violations}
    for axiom in rep.checked:
        witnesses = [list(v.witness) for v in rep.violations if v.axiom == axiom]
        out.add(axiom, None, axiom not in failed, witnesses=witnesses)
    return out


def _verify_cocyclic_algebra(alg: StructureConstantAlgebra, n: int) -> VerificationReport:
    return _from_validation(verify_cocyclic(AlgebraCochainComplex(alg), n), f"cocyclic({alg.name})")


def _verify_complex(module, n: int, name: str) -> VerificationReport:
    rep = _from_validation(verify_mixed_identities(module, n), name)
    try:
        build_total_complex(module, n + 1)
        rep.add("D^2", None, True)
    except DifferentialSquareNonzero as exc:
        rep.add("D^2", None, False, error=str(exc))
    return rep


def _verify_cocyclic_action(pair: CorrespondencePair, n: int) -> VerificationReport:
    ec = pair.equivariant
    try:
        check_closure(ec, n)
        closure = (True, "")
    except ImageEscapesCodomain as exc:
        closure = (False, exc.label or str(exc))
    rep = _from_validation(verify_cocyclic(ec, n), f"cocyclic({pair.name})")
    rep.add("carrier-closure", None, closure[0], operator=closure[1])
    if n >= 1:
        # negative control: off the carrier the twisted rotation has no finite order
        defect = ambient_cyclic_order_defect(ec, 1)
        trivial = ModuleAlgebraAction.trivial(pair.action.hopf, pair.action.alg).entries() == pair.action.entries()
        if not trivial:
            rep.add("ambient-cyclic-order-fails", 1, defect is not None,
                    witness=[defect[0], defect[1]] if defect else None)
    return rep


def _verify_lemma(act: ModuleAlgebraAction, n: int) -> VerificationReport:
    rep = VerificationReport(f"lemma({act.name})")
    for k in range(n + 1):
        a, b = equivariant_subspace(act, k), equivariant_subspace_alt(act, k)
        rep.add("equivariance-forms-agree", k, a == b, dim=a.dim, alt_dim=b.dim)
    return rep


def cmd_verify(args) -> int:
    which = args.which
    meta: Dict[str, object] = {"target": which}
    reports: List[VerificationReport] = []
    if args.action:
        act = resolve_action(args.action)
        n = resolve_degree(args.max_degree, act.alg.dim * act.hopf.dim, args.force)
        meta.update({"action": args.action, "max_degree": n})
        pair = CorrespondencePair(act)
        sub = resolve_subalgebra(args.subalgebra, act.alg) if which in ("bconstant", "all") else None
        steps: Dict[str, Callable[[], VerificationReport]] = {
            "lemma": lambda: _verify_lemma(act, n),
            "cocyclic": lambda: _verify_cocyclic_action(pair, n),
            "complex": lambda: _verify_complex(pair.equivariant, n, f"complex({pair.name})"),
            "cyclic-map": lambda: verify_cyclic_map(pair, n),
            "image": lambda: verify_image_constant(pair, n),
            "theorem": lambda: verify_theorem(pair, n),
            "corollary": lambda: _corollary(act, n, pair, strict=which == "corollary"),
            "bconstant": lambda: verify_bconstant_generalization(act, sub, n, pair),
        }
        order = list(steps) if which == "all" else [which]
        for key in order:
            reports.append(steps[key]())
    elif args.algebra:
        if which not in ("cocyclic", "complex", "all"):
            raise BadInput(f"verify {which} needs --action")
        alg = resolve_algebra(args.algebra)
        n = resolve_degree(args.max_degree, alg.dim, args.force)
        meta.update({"algebra": args.algebra, "max_degree": n})
        if which in ("cocyclic", "all"):
            reports.append(_verify_cocyclic_algebra(alg, n))
        if which in ("complex", "all"):
            reports.append(_verify_complex(AlgebraCochainComplex(alg), n, f"complex({alg.name})"))
    else:
        raise BadInput("verify needs --action or --algebra")
    _emit(render_verification(reports, args.format, meta))
    return 0 if all(r.passed for r in reports) else 1


def _corollary(act: ModuleAlgebraAction, n: int, pair: CorrespondencePair, strict: bool) -> VerificationReport:
    try:
        return verify_corollary_semisimple(act, n, pair)
    except NotDeclaredSemisimple as exc:
        if strict:
            raise BadInput(str(exc)) from None
        rep = VerificationReport(f"corollary({pair.name})")
        rep.skipped = "semisimple flag not declared"
        return rep


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclica", description="Exact cyclic cohomology workbench")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inputs: Sequence[str]):
        for name in inputs:
            sp.add_argument(f"--{name}", help=f"built-in {name} name or spec file")
        sp.add_argument("--format", choices=FORMATS, default="text")

    def sized(sp):
        sp.add_argument("--max-degree", type=int, default=None, help="highest degree to report")
        sp.add_argument("--force", action="store_true", help="allow algebras above dimension 8")

    sp = sub.add_parser("list", help="list built-in objects")
    common(sp, [])
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("validate", help="check axioms")
    common(sp, ["algebra", "hopf", "action", "subalgebra"])
    sp.add_argument("--spec", help="spec file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("compute", help="cyclic cohomology dimensions")
    sp.add_argument("kind", choices=("hc", "hc-equivariant"))
    common(sp, ["algebra", "action", "subalgebra"])
    sized(sp)
    sp.add_argument("--complex", choices=("plain", "lambda", "constant"), default="plain")
    sp.add_argument("--normalized", action="store_true", help="use normalized equivariant cochains")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("which", choices=VERIFY_TARGETS)
    common(sp, ["algebra", "action", "subalgebra"])
    sized(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BadInput as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except Failed as exc:
        sys.stderr.write(f"validation failed: {exc}\n")
        return 1
    except (InvalidAction, NotActionStable) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
