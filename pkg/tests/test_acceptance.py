"""Acceptance criteria 1-12.  Each test records one PASS/FAIL line with its runtime and bound."""

import subprocess
import sys
import time

from cyclica import registry as R
from cyclica.algebra import validate_algebra, validate_inclusion
from cyclica.algebra_complex import (
    AlgebraCochainComplex,
    connes_B_direct,
    hc_constant,
    hc_lambda,
    hc_plain,
)
from cyclica.cocyclic import (
    ExplicitCocyclicModule,
    build_total_complex,
    check_square_zero,
    derived_B,
    verify_cocyclic,
    verify_mixed_identities,
)
from cyclica.correspondence import (
    CorrespondencePair,
    verify_bconstant_generalization,
    verify_corollary_semisimple,
    verify_cyclic_map,
    verify_theorem,
)
from cyclica.equivariant import (
    EquivariantComplex,
    build_equivariant_complex,
    equivariant_subspace,
    equivariant_subspace_alt,
)
from cyclica.hopf import validate_action, validate_crossed_product, validate_hopf

ACTIONS = ["z2-on-dual-numbers", "h4-on-dual-numbers"]

# runtime bounds in seconds
BOUND_AXIOMS = 5
BOUND_COMPLEX = 60
BOUND_COCYCLIC = 60
BOUND_LEMMA = 30
BOUND_THEOREM = 300
BOUND_DEFAULT = 120  # criteria with no stated bound


def all_algebras():
    return R.algebra_names() + [f"crossed:{a}" for a in ACTIONS]


def judge(verdict, label, bound, body):
    t0 = time.perf_counter()
    failures = body()
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < bound
    verdict(label, ok, elapsed, bound, "; ".join(map(str, failures[:5])))
    assert not failures, failures
    assert elapsed < bound, f"{label} took {elapsed:.1f}s"


def test_criterion_01_axiom_suites(verdict):
    def body():
        bad = []
        for name in R.algebra_names():
            alg = R.algebra(name)
            if not validate_algebra(alg).passed:
                bad.append(name)
            for inc in (R.unit_subalgebra(alg), R.full_subalgebra(alg)):
                if not validate_inclusion(inc).passed:
                    bad.append(inc.name)
        bad += [n for n in R.hopf_names() if not validate_hopf(R.hopf(n)).passed]
        for name in ACTIONS:
            if not validate_action(R.action(name)).passed:
                bad.append(name)
            cp = R.crossed(name)
            # validate_crossed_product covers the algebra and both inclusions
            if not validate_crossed_product(cp).passed:
                bad.append(cp.product.name)
        return bad
    judge(verdict, "1 axiom suites", BOUND_AXIOMS, body)


def test_criterion_02_complex_identities(verdict):
    def body():
        bad = []
        targets = [(n, 4) for n in all_algebras() if R.algebra(n).dim <= 2]
        targets += [(f"crossed:{a}", 3) for a in ACTIONS]
        for name, top in targets:
            c = AlgebraCochainComplex(R.algebra(name))
            rep = verify_mixed_identities(c, top)
            bad += [f"{name}:{v}" for v in rep.violations]
            try:
                check_square_zero(build_total_complex(c, top + 1, check=False))
            except ArithmeticError as exc:
                bad.append(f"{name}: {exc}")
        return bad
    judge(verdict, "2 b^2 = B^2 = bB+Bb = D^2 = 0", BOUND_COMPLEX, body)


def test_criterion_03_cocyclic_suite(verdict):
    def body():
        bad = []
        for name in all_algebras():
            rep = verify_cocyclic(AlgebraCochainComplex(R.algebra(name)), 3)
            bad += [f"{name}:{v}" for v in rep.violations]
        for name in ACTIONS:
            ec = build_equivariant_complex(R.action(name), 3, check=False)
            rep = verify_cocyclic(ec, 3)
            bad += [f"{name}:{v}" for v in rep.violations]
        # negative control: forget the carrier and t^2 = id must fail at n = 1
        ec = EquivariantComplex(R.action("z2-on-dual-numbers"))
        ambient = ExplicitCocyclicModule.replacing(ec, 1)
        ambient._carriers = {}
        control = verify_cocyclic(ambient, 1)
        if not any(v.axiom == "cyclic-order" and v.witness == (1,) for v in control.violations):
            bad.append("negative control: ambient t^2 = id at n = 1 did not fail")
        return bad
    judge(verdict, "3 cocyclic identities (+ ambient negative control)", BOUND_COCYCLIC, body)


def test_criterion_04_B_agreement(verdict):
    def body():
        bad = []
        for name in all_algebras():
            alg = R.algebra(name)
            c = AlgebraCochainComplex(alg)
            bad += [f"{name}@{n}" for n in range(4) if derived_B(c, n) != connes_B_direct(alg, n)]
        return bad
    judge(verdict, "4 derived B equals direct B", BOUND_DEFAULT, body)


def test_criterion_05_lemma(verdict):
    def body():
        bad = []
        for name, top in (("z2-on-dual-numbers", 3), ("h4-on-dual-numbers", 2)):
            act = R.action(name)
            bad += [f"{name}@{n}" for n in range(top + 1)
                    if equivariant_subspace(act, n) != equivariant_subspace_alt(act, n)]
        return bad
    judge(verdict, "5 equivariance: two descriptions agree", BOUND_LEMMA, body)


def test_criterion_06_psi_cyclic(verdict):
    def body():
        bad = []
        for name in ACTIONS:
            rep = verify_cyclic_map(CorrespondencePair(R.action(name)), 2)
            bad += [f"{name}:{c.name}@{c.degree}" for c in rep.failures()]
        return bad
    judge(verdict, "6 Psi commutes with faces, degeneracies and t", BOUND_DEFAULT, body)


def test_criterion_07_theorem(verdict):
    def body():
        bad = []
        for name, top, hc_top in (("z2-on-dual-numbers", 3, 2), ("h4-on-dual-numbers", 1, 1)):
            rep = verify_theorem(CorrespondencePair(R.action(name)), top)
            bad += [f"{name}:{c.name}@{c.degree}" for c in rep.failures()]
            eq, cons = rep.tables["equivariant"].dims(), rep.tables["crossed-constant"].dims()
            if eq[:hc_top + 1] != cons[:hc_top + 1]:
                bad.append(f"{name}: HC_H {eq} vs constant {cons}")
        return bad
    judge(verdict, "7 Psi/Phi inverse isomorphisms and HC agreement", BOUND_THEOREM, body)


def test_criterion_08_corollary(verdict):
    def body():
        bad = []
        for name in ("z2-on-dual-numbers", "trivial:group-algebra:z3-on-dual-numbers"):
            rep = verify_corollary_semisimple(R.action(name), 2)
            if rep.skipped:
                bad.append(f"{name}: skipped")
            bad += [f"{name}:{c.name}@{c.degree} {c.detail}" for c in rep.failures()]
        return bad
    judge(verdict, "8 semisimple: constant HC equals plain HC", BOUND_DEFAULT, body)


def test_criterion_09_known_values(verdict):
    def body():
        bad = []
        got = hc_plain(R.algebra("ground-field"), 3).dims()
        if got != [1, 0, 1, 0]:
            bad.append(f"ground field {got}")
        if hc_plain(R.algebra("dual-numbers"), 0).dims() != [2]:
            bad.append("HC^0 dual numbers")
        cp = R.crossed("z2-on-dual-numbers")
        if hc_plain(cp.product, 0).dims() != [2]:
            bad.append("HC^0 crossed product")
        if hc_constant(cp.product, cp.include_H, 0).dims() != [2]:
            bad.append("constant HC^0 crossed product")
        return bad
    judge(verdict, "9 known dimension values", BOUND_DEFAULT, body)


def test_criterion_10_lambda_oracle(verdict):
    def body():
        bad = []
        for name in all_algebras():
            alg = R.algebra(name)
            top = 3 if alg.dim <= 2 else 2
            c = AlgebraCochainComplex(alg)
            lam, plain = hc_lambda(alg, top, complex_=c).dims(), hc_plain(alg, top, complex_=c).dims()
            if lam != plain:
                bad.append(f"{name}: lambda {lam} vs plain {plain}")
        return bad
    judge(verdict, "10 lambda complex agrees with (b, B)", BOUND_DEFAULT, body)


def test_criterion_11_normalization(verdict):
    def body():
        bad = []
        for name in all_algebras():
            alg = R.algebra(name)
            c = AlgebraCochainComplex(alg)
            const = hc_constant(alg, R.unit_subalgebra(alg), 2, complex_=c).dims()
            plain = hc_plain(alg, 2, complex_=c).dims()
            if const != plain:
                bad.append(f"{name}: constant {const} vs plain {plain}")
        for name, top in (("z2-on-dual-numbers", 2), ("h4-on-dual-numbers", 1)):
            pair = CorrespondencePair(R.action(name))
            unit = R.unit_subalgebra(pair.action.alg)
            gen = verify_bconstant_generalization(pair.action, unit, top, pair=pair)
            thm = verify_theorem(pair, top)
            bad += [f"{name}:{c.name}@{c.degree}" for c in gen.failures()]
            if gen.tables["equivariant-bconstant"].dims() != thm.tables["equivariant"].dims():
                bad.append(f"{name}: B = k1 table differs from the theorem table")
            if gen.tables["crossed-bconstant"].dims() != thm.tables["crossed-constant"].dims():
                bad.append(f"{name}: crossed B = k1 table differs")
        return bad
    judge(verdict, "11 unit-constant equals plain; B = k1 reproduces the theorem", BOUND_DEFAULT, body)


def test_criterion_12_determinism(verdict):
    cmd = [sys.executable, "-m", "cyclica", "verify", "theorem", "--action", "z2-on-dual-numbers",
           "--max-degree", "3", "--format", "json"]

    def body():
        runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
        bad = [f"exit {r.returncode}: {r.stderr.decode()[-200:]}" for r in runs if r.returncode != 0]
        if runs[0].stdout != runs[1].stdout:
            bad.append("outputs differ")
        if not runs[0].stdout:
            bad.append("empty output")
        return bad
    judge(verdict, "12 byte-identical JSON across runs", BOUND_DEFAULT, body)
