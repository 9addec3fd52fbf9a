"""The group P(A, q) and the crossed module (P(A, q), O(A, q)).

Elements of P(A, q) are homomorphisms ``f: A^ -> A`` (plain ``GroupHom``
objects) such that ``id - sigma~ f`` is invertible and
``<phi, f(phi)> = q(f(phi))`` for every character ``phi``.  The product is
``f <> g = f + g - f sigma~ g``, the boundary is ``d(f) = id - f sigma~`` and
``O(A, q)`` acts by ``g . f = g f g^`` where ``g^(phi) = phi o g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from .abelian_groups import (QZ, FinAbGroup, GroupHom, Subgroup, dual_hom, enumerate_homs,
                             enumerate_subgroups)
from .config import check_order
from .errors import PropertyViolation
from .quadratic_forms import (QuadraticForm, bilinear, is_nondegenerate, orthogonal_group,
                              preserves, radical, restrict, sigma_tilde)
from .search import element_array, is_injective_matrix, search_images

PicardElement = GroupHom


# membership


def condition_invertible(q: QuadraticForm, f: GroupHom) -> bool:
    A = q.group
    return (GroupHom.identity(A.dual()) - sigma_tilde(q) @ f).is_bijective()


def condition_isotropic(q: QuadraticForm, f: GroupHom) -> bool:
    """<phi, f(phi)> = q(f(phi)) for every character phi (exhaustive)."""
    A = q.group
    return all(A.pairing(phi, f(phi)) == q(f(phi)) for phi in A.dual().elements)


def condition_isotropic_fast(q: QuadraticForm, f: GroupHom) -> bool:
    """The same condition decided on generators and pairs of generators.

    phi -> <phi, f(phi)> - q(f(phi)) is a quadratic function, so it vanishes
    iff it vanishes on each generator and its polarization vanishes on each
    pair of generators.
    """
    A = q.group
    n = A.orders
    ys = f.images()
    for k, y in enumerate(ys):
        if q(y) != _coord(y, k, n):
            return False
    for k in range(len(ys)):
        for l in range(k):
            if _coord(ys[k], l, n) + _coord(ys[l], k, n) != bilinear(q, ys[l], ys[k]):
                return False
    return True


def _coord(y, k, orders) -> QZ:
    return QZ(y[k], orders[k])


def is_picard_element(q: QuadraticForm, f: GroupHom) -> bool:
    A = q.group
    if f.source != A.dual() or f.target != A:
        return False
    return condition_isotropic(q, f) and condition_invertible(q, f)


def enumerate_picard(q: QuadraticForm) -> list:
    """P(A, q) sorted by matrix.

    Backtracks over images of the dual generators, pruning with the
    generator/pair form of the isotropy condition, then keeps the maps with
    ``id - sigma~ f`` invertible.
    """
    A = q.group
    check_order(f"P({A}, q)", A.order)
    E = element_array(A)
    D = q.level
    scale = np.array([D // n for n in A.orders], dtype=np.int64)
    qv = q.int_values(E)
    G = q.int_gram
    unary = [((E[:, k] * scale[k] - qv) % D == 0) for k in range(A.rank)]

    def pair(l, k, yl, C):
        return (C[:, l] * scale[l] + int(yl[k]) * scale[k] - C @ ((G @ yl) % D)) % D == 0

    found = search_images(A, A.orders, unary, pair)
    S = np.array(sigma_tilde(q).matrix, dtype=np.int64).reshape(A.rank, A.rank)
    ords = np.array(A.orders, dtype=np.int64).reshape(-1, 1)
    eye = np.eye(A.rank, dtype=np.int64)
    out = []
    for ims in found:
        F = np.array(ims, dtype=np.int64).reshape(A.rank, A.rank).T
        M = (eye - S @ F) % ords
        if is_injective_matrix(M, A, A, E):
            out.append(GroupHom(A.dual(), A, F.tolist(), check=False))
    return sorted(out, key=GroupHom.sort_key)


def enumerate_picard_bruteforce(q: QuadraticForm) -> list:
    """Filter of all of Hom(A^, A) by the exhaustive membership test."""
    A = q.group
    return [f for f in enumerate_homs(A.dual(), A) if is_picard_element(q, f)]


# group structure


def diamond(q: QuadraticForm, f: GroupHom, g: GroupHom, check: bool = True) -> GroupHom:
    """f <> g = f + g - f sigma~ g."""
    h = f + g - f @ sigma_tilde(q) @ g
    if check and not (condition_isotropic_fast(q, h) and condition_invertible(q, h)):
        raise PropertyViolation(f"P(A, q) not closed: {f} <> {g} = {h}")
    return h


def picard_inverse(q: QuadraticForm, f: GroupHom, check: bool = True) -> GroupHom:
    """The inverse of f in P(A, q), which is its transpose f*."""
    fs = dual_hom(f)
    if check:
        zero = GroupHom.zero(f.source, f.target)
        if diamond(q, f, fs, check=False) != zero or diamond(q, fs, f, check=False) != zero:
            raise PropertyViolation(f"f* is not the inverse of {f}")
        A = q.group
        u = (f @ sigma_tilde(q) - GroupHom.identity(A)).inverse()
        if u is not None and u @ f != fs:
            raise PropertyViolation(f"(f sigma~ - id)^-1 f != f* for {f}")
    return fs


def partial(q: QuadraticForm, f: GroupHom, check: bool = True) -> GroupHom:
    """d(f) = id_A - f sigma~, an element of O(A, q)."""
    g = GroupHom.identity(q.group) - f @ sigma_tilde(q)
    if check and not (preserves(q, g) and g.is_bijective()):
        raise PropertyViolation(f"d({f}) = {g} is not in O(A, q)")
    return g


def act(q: QuadraticForm, g: GroupHom, f: GroupHom, check: bool = True) -> GroupHom:
    """g . f = g o f o g^, with g^(phi) = phi o g."""
    h = g @ f @ dual_hom(g)
    if check and not (condition_isotropic_fast(q, h) and condition_invertible(q, h)):
        raise PropertyViolation(f"O(A, q)-action leaves P(A, q): {g} . {f}")
    return h


# crossed module verification


@dataclass
class CrossedModuleReport:
    form: QuadraticForm
    picard: list
    orthogonal: list
    partial: list          # partial[i] = index into orthogonal of d(picard[i])
    action: list           # action[g][f] = index into picard of g . f
    violations: list = field(default_factory=list)
    kernel: list = field(default_factory=list)   # indices into picard
    image: list = field(default_factory=list)    # indices into orthogonal

    @property
    def axioms_ok(self) -> bool:
        return not self.violations


def verify_crossed_module(q: QuadraticForm) -> CrossedModuleReport:
    """Exhaustively check both crossed-module axioms and the group laws."""
    P = enumerate_picard(q)
    O = orthogonal_group(q)
    pidx = {f: i for i, f in enumerate(P)}
    oidx = {g: i for i, g in enumerate(O)}
    bad = []
    A = q.group
    zero = pidx.get(GroupHom.zero(A.dual(), A))
    ident = oidx.get(GroupHom.identity(A))
    if zero is None or ident is None:
        bad.append("identity element missing")

    def lookup(table, h, what):
        i = table.get(h)
        if i is None:
            bad.append(f"{what}: {h} not found")
        return i

    omul = [[lookup(oidx, g @ h, "O closure") for h in O] for g in O]
    oinv = [lookup(oidx, g.inverse(), "O inverse") for g in O]
    dia = [[lookup(pidx, diamond(q, f, g, check=False), "P closure") for g in P] for f in P]
    pinv = [lookup(pidx, picard_inverse(q, f, check=False), "P inverse") for f in P]
    part = [lookup(oidx, partial(q, f, check=False), "d(f) in O") for f in P]
    action = [[lookup(pidx, act(q, g, f, check=False), "action closure") for f in P] for g in O]
    report = CrossedModuleReport(q, P, O, part, action, bad)
    if bad:
        return report
    nP, nO = len(P), len(O)
    for a in range(nP):
        if dia[a][pinv[a]] != zero or dia[pinv[a]][a] != zero:
            bad.append(f"f <> f* != 0 for {P[a]}")
        for b in range(nP):
            if part[dia[a][b]] != omul[part[a]][part[b]]:
                bad.append(f"d not a homomorphism at {P[a]}, {P[b]}")
            for c in range(nP):
                if dia[dia[a][b]][c] != dia[a][dia[b][c]]:
                    bad.append(f"<> not associative at {P[a]}, {P[b]}, {P[c]}")
    for g in range(nO):
        for h in range(nO):
            gh = omul[g][h]
            for a in range(nP):
                if action[gh][a] != action[g][action[h][a]]:
                    bad.append(f"not an action: ({O[g]} {O[h]}) . {P[a]}")
        for a in range(nP):
            for b in range(nP):
                if action[g][dia[a][b]] != dia[action[g][a]][action[g][b]]:
                    bad.append(f"action not by automorphisms at {O[g]}, {P[a]}, {P[b]}")
    # axiom 1: d(g . f) = g d(f) g^-1
    for g in range(nO):
        for a in range(nP):
            if part[action[g][a]] != omul[omul[g][part[a]]][oinv[g]]:
                bad.append(f"axiom 1 fails at g={O[g]}, f={P[a]}")
    # axiom 2: d(f) . f' = f <> f' <> f^-1
    for a in range(nP):
        for b in range(nP):
            if action[part[a]][b] != dia[dia[a][b]][pinv[a]]:
                bad.append(f"axiom 2 fails at f={P[a]}, f'={P[b]}")
    report.kernel = [a for a in range(nP) if part[a] == ident]
    report.image = sorted(set(part))
    for a in report.kernel:
        if any(dia[a][b] != dia[b][a] for b in range(nP)):
            bad.append(f"ker d not central: {P[a]}")
    img = set(report.image)
    for g in range(nO):
        if any(omul[omul[g][h]][oinv[g]] not in img for h in img):
            bad.append(f"im d not normal under {O[g]}")
    return report


# kernel of d


@dataclass
class KernelReport:
    kernel: list                 # elements of P(A, q) with d(f) = id
    radical: Subgroup
    radical_form: QuadraticForm
    radical_picard: list         # P(A_perp, q|A_perp)
    j_images: list               # j(g) for g in radical_picard
    i_images: list               # i(f) for f in kernel
    violations: list = field(default_factory=list)

    @property
    def isomorphism_ok(self) -> bool:
        return not self.violations


def _restriction_to_radical(R: Subgroup) -> GroupHom:
    return dual_hom(R.inclusion())


def kernel_j(q: QuadraticForm, R: Subgroup, g: GroupHom) -> GroupHom:
    """A^ -> (A_perp)^ -> A_perp -> A."""
    return R.inclusion() @ g @ _restriction_to_radical(R)


def kernel_i(q: QuadraticForm, R: Subgroup, f: GroupHom) -> GroupHom:
    """Descend f through A^ -> (A_perp)^; f must take values in A_perp."""
    A = q.group
    res = _restriction_to_radical(R)
    Rab = R.abstract()
    pre = {}
    for phi in A.dual().elements:
        pre.setdefault(res(phi), phi)
    zero = A.zero()
    for phi in A.dual().elements:
        if res(phi) == Rab.zero() and f(phi) != zero:
            raise PropertyViolation(f"{f} does not vanish on characters trivial on the radical")
        if f(phi) not in R:
            raise PropertyViolation(f"{f} does not take values in the radical")
    ims = [R.coords(f(pre[e])) for e in Rab.dual().gens()]
    return GroupHom.from_images(Rab.dual(), Rab, ims)


def kernel_partial(q: QuadraticForm) -> KernelReport:
    A = q.group
    P = enumerate_picard(q)
    ident = GroupHom.identity(A)
    K = [f for f in P if partial(q, f) == ident]
    R = radical(q).subgroup
    qR = restrict(q, R)
    PR = enumerate_picard(qR)
    bad = []
    J = [kernel_j(q, R, g) for g in PR]
    if sorted(J, key=GroupHom.sort_key) != K:
        bad.append("j(P(A_perp)) != ker d")
    I = []
    for f in K:
        try:
            I.append(kernel_i(q, R, f))
        except PropertyViolation as exc:
            bad.append(str(exc))
    if not bad:
        pr_set = set(PR)
        for f, i_f in zip(K, I):
            if i_f not in pr_set:
                bad.append(f"i({f}) not in P(A_perp)")
            elif kernel_j(q, R, i_f) != f:
                bad.append(f"j(i(f)) != f for {f}")
        for g, j_g in zip(PR, J):
            if kernel_i(q, R, j_g) != g:
                bad.append(f"i(j(g)) != g for {g}")
        for g in PR:
            for h in PR:
                if kernel_j(q, R, diamond(qR, g, h)) != diamond(q, kernel_j(q, R, g),
                                                               kernel_j(q, R, h)):
                    bad.append(f"j not a homomorphism at {g}, {h}")
    return KernelReport(K, R, qR, PR, J, I, bad)


# cokernel of d


@dataclass
class CokernelReport:
    orthogonal_order: int
    image_order: int
    image_normal: bool
    cosets: list                       # lists of indices into O(A, q)
    tannakian_radical: bool
    radical_order: int
    # filled only when the radical is Tannakian
    hom_quotient_order: int | None = None        # |Hom(A/A_perp, A_perp)|
    unipotent_order: int | None = None           # |ker(O(A,q) -> O(A/A_perp))|
    unipotent_star_closed: bool | None = None
    image_meets_unipotent: int | None = None     # |im d  cap  that kernel|
    restriction_kernel_order: int | None = None  # |ker(coker -> Aut(A_perp))|
    restriction_well_defined: bool | None = None

    @property
    def order(self) -> int:
        return len(self.cosets)

    @property
    def exactness_claim_holds(self) -> bool | None:
        if self.hom_quotient_order is None:
            return None
        return self.hom_quotient_order == self.restriction_kernel_order


def _on_subgroup(g: GroupHom, R: Subgroup) -> GroupHom:
    """The automorphism of R's abstract group induced by g (g must preserve R)."""
    Rab = R.abstract()
    return GroupHom.from_images(Rab, Rab, [R.coords(g(b)) for b in R.basis])


def cokernel_partial(q: QuadraticForm) -> CokernelReport:
    A = q.group
    O = orthogonal_group(q)
    P = enumerate_picard(q)
    oidx = {g: i for i, g in enumerate(O)}
    im = sorted({oidx[partial(q, f)] for f in P})
    im_set = {O[i] for i in im}
    normal = all(g @ h @ g.inverse() in im_set for g in O for h in im_set)
    seen, cosets = set(), []
    for i, g in enumerate(O):
        if i in seen:
            continue
        coset = sorted(oidx[g @ h] for h in im_set)
        seen.update(coset)
        cosets.append(coset)
    rad = radical(q)
    R = rad.subgroup
    rep = CokernelReport(len(O), len(im), normal, cosets, rad.tannakian, R.order)
    if not rad.tannakian:
        return rep
    homs = [phi for phi in enumerate_homs(A, A)
            if all(phi(a) in R for a in A.gens()) and all(phi(b) == A.zero() for b in R.basis)]
    rep.hom_quotient_order = len(homs)
    ident = GroupHom.identity(A)
    unip = [g for g in O if all(A.sub(g(a), a) in R for a in A.gens())]
    rep.unipotent_order = len(unip)
    phis = {g - ident for g in unip}
    rep.unipotent_star_closed = all(p + s + p @ s in phis for p in phis for s in phis)
    rep.image_meets_unipotent = len(im_set.intersection(unip))
    R_id = GroupHom.identity(R.abstract())
    rep.restriction_well_defined = all(_on_subgroup(h, R) == R_id for h in im_set)
    fixing = [g for g in O if _on_subgroup(g, R) == R_id]
    rep.restriction_kernel_order = len(fixing) // len(im)
    return rep


# closed-form comparisons


@dataclass
class Comparison:
    claim: str
    predicted: int
    computed: int
    detail: str = ""

    @property
    def match(self) -> bool:
        return self.predicted == self.computed

    def to_dict(self) -> dict:
        return {"claim": self.claim, "predicted": self.predicted, "computed": self.computed,
                "match": self.match, "detail": self.detail}


def wedge2_order(orders) -> int:
    """|wedge^2 A| = prod_{i<j} gcd(n_i, n_j)."""
    orders = list(orders)
    return prod(gcd(orders[i], orders[j])
                for i in range(len(orders)) for j in range(i + 1, len(orders)))


def classify(q: QuadraticForm) -> str:
    if is_nondegenerate(q):
        return "nondegenerate"
    if q.is_zero():
        return "tannakian"
    if q.is_symmetric():
        return "symmetric"
    return "general"


def character_of_symmetric_form(q: QuadraticForm):
    """For sigma = 0, q is additive; return it as an element of A^."""
    return tuple(v.num * n // v.den for v, n in zip(q.diag, q.group.orders))


def is_direct_summand(G: FinAbGroup, x) -> bool:
    """Whether <x> has a complement in G (exhaustive search)."""
    C = Subgroup.generated_by(G, [x])
    target = G.order // C.order
    for H in enumerate_subgroups(G):
        if H.order == target and not (H.element_set & C.element_set) - {G.zero()}:
            return True
    return False


def paper_predictions(q: QuadraticForm, picard: list | None = None,
                      orthogonal: list | None = None) -> list:
    """Compare |P(A, q)| against the closed forms that apply to q."""
    P = enumerate_picard(q) if picard is None else picard
    kind = classify(q)
    A = q.group
    out = []
    if kind == "nondegenerate":
        O = orthogonal_group(q) if orthogonal is None else orthogonal
        images = {partial(q, f) for f in P}
        bij = len(images) == len(P) == len(O) and images == set(O)
        out.append(Comparison("Example (i): d is an isomorphism P(A,q) -> O(A,q)",
                              len(O), len(P), f"d bijective: {bij}"))
        if not bij:
            out[-1].computed = -len(P)
    elif kind == "tannakian":
        out.append(Comparison("Example (ii): P(A,q) = wedge^2 A", wedge2_order(A.orders), len(P)))
    elif kind == "symmetric":
        chi = character_of_symmetric_form(q)
        summand = is_direct_summand(A.dual(), chi)
        h2 = wedge2_order(A.orders)
        predicted = h2 if summand else 2 * h2
        out.append(Comparison(
            "Example (iii): P(A,q) = H^2(A^) if <q> is a summand, else H^2(A^) x Z/2",
            predicted, len(P),
            f"<q> direct summand: {summand}; summand-case value {h2}, "
            f"non-summand-case value {2 * h2}"))
    return out
