"""Acceptance criteria 1-8, one test each.

Every test records its verdict in ``conftest.ACCEPTANCE`` and the terminal
summary prints a PASS/FAIL line per criterion.  The file can also be run as
a script.
"""

import math
import random

import pytest

from conftest import ACCEPTANCE, make
from premetric.abelian_cohomology import (apply_coboundary, cohomologous, random_cochain,
                                          standard_cocycle, trace_form, validate_abelian_cocycle)
from premetric.abelian_groups import QZ, GroupHom, dual_hom
from premetric.catalog import builtin_catalog
from premetric.center import alpha_f, center_form, enumerate_trivializable, picard_of_alpha
from premetric.cli import COMMANDS, run_command
from premetric.config import limits
from premetric.module_categories import (enumerate_module_cats, from_picard, is_invertible_modcat,
                                         to_picard)
from premetric.picard import (cokernel_partial, diamond, enumerate_picard, kernel_partial,
                              partial, verify_crossed_module)
from premetric.quadratic_forms import is_nondegenerate, orthogonal_group


def forms():
    return [(s.name, s.to_form()) for s in builtin_catalog()]


def record(number, problems, detail):
    ok = not problems
    ACCEPTANCE[number] = (ok, detail if ok else "; ".join(problems[:3]))
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {ACCEPTANCE[number][1]}")
    assert ok, problems[:5]


def test_criterion_1_three_way_oracle():
    problems = []
    for name, q in forms():
        P = enumerate_picard(q)
        inv = [d for d in enumerate_module_cats(q) if is_invertible_modcat(d)]
        T = enumerate_trivializable(q, check=False)
        if not len(P) == len(inv) == len(T):
            problems.append(f"{name}: |P|={len(P)} modcats={len(inv)} center={len(T)}")
            continue
        if sorted((to_picard(d) for d in inv), key=GroupHom.sort_key) != P:
            problems.append(f"{name}: to_picard is not onto P")
        for d in inv:
            if from_picard(q, to_picard(d)) != d:
                problems.append(f"{name}: module datum round trip failed")
        for f in P:
            if to_picard(from_picard(q, f)) != f:
                problems.append(f"{name}: Picard round trip through data failed")
        c = center_form(q)
        if sorted((picard_of_alpha(q, t, c) for t in T), key=GroupHom.sort_key) != P:
            problems.append(f"{name}: center automorphisms do not recover P")
        for f in P:
            if picard_of_alpha(q, alpha_f(q, f, c), c) != f:
                problems.append(f"{name}: Picard round trip through the center failed")
    record(1, problems, "module data, Picard homs and center automorphisms agree on 11 forms")


def test_criterion_2_crossed_module_axioms():
    problems = []
    for name, q in forms():
        rep = verify_crossed_module(q)
        if not rep.axioms_ok:
            problems.append(f"{name}: {rep.violations[:2]}")
    record(2, problems, "zero violations on every catalog form")


def test_criterion_3_group_laws():
    problems = []
    for name, q in forms():
        P = enumerate_picard(q)
        zero = GroupHom.zero(q.group.dual(), q.group)
        S = set(P)
        for f in P:
            fs = dual_hom(f)
            if diamond(q, f, fs, check=False) != zero or diamond(q, fs, f, check=False) != zero:
                problems.append(f"{name}: f <> f* != 0 for {f}")
            for g in P:
                fg = diamond(q, f, g, check=False)
                if fg not in S:
                    problems.append(f"{name}: not closed")
                if partial(q, fg, check=False) != partial(q, f, check=False) @ partial(q, g, check=False):
                    problems.append(f"{name}: d is not a homomorphism")
                for h in P:
                    if diamond(q, fg, h, check=False) != diamond(q, f, diamond(q, g, h, check=False), check=False):
                        problems.append(f"{name}: associativity fails")
    record(3, problems, "associativity, inverses and d multiplicative, exhaustively")


def _example_i(q, problems, label):
    P = enumerate_picard(q)
    O = orthogonal_group(q)
    images = {partial(q, f, check=False) for f in P}
    if not (len(P) == len(O) == len(images) and images == set(O)):
        problems.append(f"{label}: |P|={len(P)} |O|={len(O)} |d(P)|={len(images)}")
    return len(P)


def test_criterion_4_closed_forms():
    problems = []
    sizes = {}
    catalog = dict(forms())
    for name in ("toric", "semion", "z3", "z4std"):
        assert is_nondegenerate(catalog[name])
        sizes[name] = _example_i(catalog[name], problems, name)
    with limits(max_group_order=64):
        for name, q in catalog.items():
            c = center_form(q).form
            if not is_nondegenerate(c):
                problems.append(f"center of {name} is degenerate")
            sizes[f"Z({name})"] = _example_i(c, problems, f"Z({name})")
    zero_forms = {"klein0": catalog["klein0"], "cube0": catalog["cube0"],
                  "z2xz4": make([2, 4], ["0", "0"])}
    for label, q in zero_forms.items():
        n = q.group.orders
        want = math.prod(math.gcd(n[i], n[j]) for i in range(len(n)) for j in range(i + 1, len(n)))
        got = len(enumerate_picard(q))
        if got != want:
            problems.append(f"{label}: |P(A,0)|={got}, expected {want}")
    for name, q in catalog.items():
        k = kernel_partial(q)
        if not k.isomorphism_ok:
            problems.append(f"{name}: kernel maps {k.violations[:2]}")
    record(4, problems, f"Example (i) on {len(sizes)} nondegenerate forms "
                        f"(largest |P|={max(sizes.values())}), Example (ii), kernel isomorphism")


def test_criterion_5_derived_values():
    problems = []
    catalog = dict(forms())

    def hom(q, m):
        return GroupHom(q.group.dual(), q.group, m)

    toric = catalog["toric"]
    if enumerate_picard(toric) != [hom(toric, [[0, 0], [0, 0]]), hom(toric, [[1, 1], [1, 1]])]:
        problems.append("P(toric)")
    if partial(toric, hom(toric, [[1, 1], [1, 1]])).to_list() != [[0, 1], [1, 0]]:
        problems.append("d(all-ones) on toric is not the swap")
    svec = catalog["svec"]
    if len(enumerate_picard(svec)) != 2 or not all(partial(svec, f).is_identity()
                                                    for f in enumerate_picard(svec)):
        problems.append("P(svec)")
    if len(enumerate_picard(catalog["semion"])) != 1:
        problems.append("P(semion)")
    z4 = catalog["z4tan"]
    if enumerate_picard(z4) != [hom(z4, [[0]]), hom(z4, [[1]])]:
        problems.append("P(z4tan)")
    if partial(z4, hom(z4, [[1]])).to_list() != [[3]]:
        problems.append("d(1) on z4tan is not -id")
    if cokernel_partial(z4).order != 1:
        problems.append("coker d on z4tan is not trivial")
    if [g.to_list() for g in orthogonal_group(catalog["z3"])] != [[[1]], [[2]]]:
        problems.append("O(z3)")
    record(5, problems, "toric, svec, semion, z4tan and z3 values reproduced")


def _cyclic_forms(n):
    m = 2 * n if n % 2 == 0 else n
    return [make([n], [QZ(k, m)]) for k in range(m)]


def test_criterion_6_eilenberg_maclane():
    problems = []
    rng = random.Random(20240601)
    total = 0
    for n in (2, 3, 4):
        qs = _cyclic_forms(n)
        pairs = []
        for q in qs:
            p = standard_cocycle(q)
            if not validate_abelian_cocycle(p).valid:
                problems.append(f"standard cocycle of {q} is invalid")
            if trace_form(p) != q:
                problems.append(f"trace does not invert standard_cocycle on {q}")
            pairs.append((q, p))
        for _ in range(20):
            q, p = rng.choice(pairs[:len(qs)])
            pp = apply_coboundary(p, random_cochain(q.group, rng))
            if not validate_abelian_cocycle(pp).valid:
                problems.append(f"perturbation of {q} left the cocycles")
            if cohomologous(p, pp) is None:
                problems.append(f"perturbation of {q} is not cohomologous to its source")
            pairs.append((q, pp))
        for i, (q1, p1) in enumerate(pairs):
            for q2, p2 in pairs[i:]:
                total += 1
                if trace_form(p1) != q1:
                    problems.append(f"trace of a perturbed pair moved off {q1}")
                if (cohomologous(p1, p2) is not None) != (trace_form(p1) == trace_form(p2)):
                    problems.append(f"cohomologous disagrees with traces on {q1}, {q2}")
    record(6, problems, f"{total} pairs over Z/2, Z/3, Z/4 with 20 perturbations each")


def test_criterion_7_discrepancy_harness():
    import json
    res = run_command(["paper-check", "--catalog", "builtin"])
    problems = [] if res.code == 0 else [f"exit code {res.code}"]
    rep = json.loads(res.output)
    flagged = {(r["form"], r["claim"].split(":")[0]): (r["predicted"], r["computed"])
               for r in rep["flagged"]}
    expected = {("svec", "Example (iii)"): (1, 2), ("z4ferm", "Example (iii)"): (2, 1),
                ("z4tan", "Cokernel proposition"): (2, 1)}
    if flagged != expected:
        problems.append(f"flagged rows {flagged}")
    others = [r for r in rep["rows"] if (r["form"], r["claim"].split(":")[0]) not in expected]
    if any(r["status"] != "MATCH" for r in others):
        problems.append("a non-flagged row is not MATCH")
    record(7, problems, f"3 flagged rows in 2 classes, {len(others)} rows MATCH")


def test_criterion_8_determinism():
    problems = []
    runs = {}
    for threads in ("1", "4"):
        out = []
        for cmd in COMMANDS:
            if cmd == "center":
                argv = [cmd, "--catalog", "builtin", "--max-group-order", "64"]
            elif cmd in ("paper-check", "catalog"):
                argv = [cmd]
            else:
                argv = [cmd, "--catalog", "builtin"]
            if cmd == "cohomology":
                argv = [cmd, "--name", "z4std"]
            res = run_command(argv + ["--threads", threads])
            if res.code != 0:
                problems.append(f"{cmd} exited {res.code}: {res.output[:80]}")
            out.append(res.output)
        runs[threads] = "".join(out).encode()
    if runs["1"] != runs["4"]:
        problems.append("reports differ between 1 and 4 threads")
    record(8, problems, f"{len(runs['1'])} report bytes identical for 1 and 4 threads")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
