"""Indecomposable module categories as pairs (B, beta).

``B`` is a subgroup of ``A`` and ``beta: B x B -> Q/Z`` is bimultiplicative
with ``beta(x, x) = q(x)``.  Invertible data (beta nondegenerate) are in
bijection with P(A, q) through ``<phi, x> = beta(x, f(phi))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .abelian_groups import QZ, ZERO, GroupHom, Subgroup, enumerate_subgroups
from .config import check_candidates
from .errors import PropertyViolation, WellDefinednessError
from .picard import act, is_picard_element, partial
from .quadratic_forms import QuadraticForm, bilinear, orthogonal_group


@dataclass(frozen=True, eq=False)
class ModuleCategoryDatum:
    form: QuadraticForm
    B: Subgroup
    beta: tuple  # beta[i][j] = beta(B.elements[i], B.elements[j])

    @classmethod
    def from_function(cls, form: QuadraticForm, B: Subgroup, fn) -> "ModuleCategoryDatum":
        return cls(form, B, tuple(tuple(fn(x, y) for y in B.elements) for x in B.elements))

    @classmethod
    def from_generators(cls, form: QuadraticForm, B: Subgroup, gens) -> "ModuleCategoryDatum":
        """Expand ``gens[r][s] = beta(b_r, b_s)`` bimultiplicatively."""
        def fn(x, y):
            cx, cy = B.coords(x), B.coords(y)
            total = ZERO
            for r, xr in enumerate(cx):
                for s, ys in enumerate(cy):
                    if xr and ys:
                        total = total + gens[r][s] * (xr * ys)
            return total
        return cls.from_function(form, B, fn)

    @property
    def _pos(self) -> dict:
        pos = self.__dict__.get("_pos_cache")
        if pos is None:
            pos = {x: i for i, x in enumerate(self.B.elements)}
            self.__dict__["_pos_cache"] = pos
        return pos

    def __call__(self, x, y) -> QZ:
        return self.beta[self._pos[x]][self._pos[y]]

    def generators(self) -> tuple:
        bs = self.B.basis
        return tuple(tuple(self(b, c) for c in bs) for b in bs)

    def violations(self) -> list:
        """Exhaustive check of bimultiplicativity and beta(x, x) = q(x)."""
        A, q, els = self.form.group, self.form, self.B.elements
        out = []
        for x in els:
            if self(x, x) != q(x):
                out.append(f"beta({x},{x}) = {self(x, x)} != q = {q(x)}")
            for y in els:
                for z in els:
                    if self(A.add(x, y), z) != self(x, z) + self(y, z):
                        out.append(f"beta not additive on the left at {x},{y},{z}")
                    if self(z, A.add(x, y)) != self(z, x) + self(z, y):
                        out.append(f"beta not additive on the right at {x},{y},{z}")
        return out

    def sort_key(self):
        return (self.B.sort_key(),
                tuple((v.num, v.den) for row in self.beta for v in row))

    def __eq__(self, other):
        if not isinstance(other, ModuleCategoryDatum):
            return NotImplemented
        return self.form == other.form and self.B == other.B and self.beta == other.beta

    def __hash__(self):
        return hash((self.B, self.beta))

    def to_json(self) -> dict:
        return {
            "order": self.B.order,
            "basis": [list(b) for b in self.B.basis],
            "basis_orders": list(self.B.basis_orders),
            "beta_generators": [[str(v) for v in row] for row in self.generators()],
            "invertible": is_invertible_modcat(self),
        }

    def __repr__(self):
        return f"ModuleCategoryDatum(B={list(self.B.basis)}, beta={[[str(v) for v in r] for r in self.generators()]})"


def enumerate_module_cats(q: QuadraticForm) -> list:
    """All (B, beta), ordered by (|B|, B's elements, table)."""
    out = []
    for B in enumerate_subgroups(q.group):
        bs, os = B.basis, B.basis_orders
        k = len(bs)
        diag = [q(b) for b in bs]
        if any(v * o for v, o in zip(diag, os)):
            continue
        pairs = [(r, s) for r in range(k) for s in range(r + 1, k)]
        choices = [[QZ(t, gcd(os[r], os[s])) for t in range(gcd(os[r], os[s]))] for r, s in pairs]
        count = 1
        for ch in choices:
            count *= len(ch)
        check_candidates("module category tables", count)
        for pick in product(*choices):
            gens = [[ZERO] * k for _ in range(k)]
            for r in range(k):
                gens[r][r] = diag[r]
            for (r, s), v in zip(pairs, pick):
                gens[r][s] = v
                gens[s][r] = bilinear(q, bs[r], bs[s]) - v
            d = ModuleCategoryDatum.from_generators(q, B, gens)
            bad = d.violations()
            if bad:
                raise PropertyViolation(f"generator data do not expand to a valid beta: {bad[0]}")
            out.append(d)
    return sorted(out, key=ModuleCategoryDatum.sort_key)


def is_invertible_modcat(d: ModuleCategoryDatum) -> bool:
    """x -> beta(x, .) is injective on B."""
    z = d.form.group.zero()
    return all(x == z or any(d(x, y) for y in d.B.elements) for x in d.B.elements)


def to_picard(d: ModuleCategoryDatum) -> GroupHom:
    """f(phi) = the b in B with beta(x, b) = <phi, x> for all x in B."""
    q, B = d.form, d.B
    A = q.group
    ims = []
    for phi in A.dual().gens():
        sols = [b for b in B.elements if all(d(x, b) == A.pairing(phi, x) for x in B.elements)]
        if len(sols) != 1:
            raise PropertyViolation(f"{len(sols)} solutions for the character {phi} in {d}")
        ims.append(sols[0])
    f = GroupHom.from_images(A.dual(), A, ims)
    if not is_picard_element(q, f):
        raise PropertyViolation(f"to_picard({d}) = {f} is not in P(A, q)")
    return f


def from_picard(q: QuadraticForm, f: GroupHom) -> ModuleCategoryDatum:
    """B = im f and beta(x, f(phi)) = <phi, x>."""
    A = q.group
    B = Subgroup.from_elements(A, f.image_elements())
    table = {}
    for phi in A.dual().elements:
        y = f(phi)
        for x in B.elements:
            v = A.pairing(phi, x)
            if table.setdefault((x, y), v) != v:
                raise WellDefinednessError(
                    f"beta({x}, {y}) depends on the preimage of {y} under {f}")
    d = ModuleCategoryDatum.from_function(q, B, lambda x, y: table[(x, y)])
    bad = d.violations()
    if bad:
        raise PropertyViolation(f"from_picard({f}) is not a valid datum: {bad[0]}")
    if not is_invertible_modcat(d):
        raise PropertyViolation(f"from_picard({f}) is degenerate")
    return d


@dataclass
class AutomorphismListReport:
    datum: ModuleCategoryDatum
    list_candidates: list     # g in O with g(B) <= B, id on A/B, beta(b, g c) = -beta(c, b)
    shift_candidates: list    # g in O with g(a) - a in B and beta(b, g a - a) = -sigma(b, a)
    expected: GroupHom        # partial(to_picard(datum))
    discrepancies: list = field(default_factory=list)

    @property
    def combined(self) -> list:
        rem = set(self.shift_candidates)
        return [g for g in self.list_candidates if g in rem]


def automorphism_list_analysis(d: ModuleCategoryDatum, orthogonal: list | None = None) -> AutomorphismListReport:
    q, B = d.form, d.B
    A = q.group
    O = orthogonal_group(q) if orthogonal is None else orthogonal
    els = B.elements

    def cor(g):
        if any(g(b) not in B for b in B.basis):
            return False
        if any(A.sub(g(a), a) not in B for a in A.gens()):
            return False
        return all(d(b, g(c)) == -d(c, b) for b in els for c in els)

    def rem(g):
        for a in A.elements:
            delta = A.sub(g(a), a)
            if delta not in B:
                return False
            if any(d(b, delta) != -bilinear(q, b, a) for b in els):
                return False
        return True

    expected = partial(q, to_picard(d))
    rep = AutomorphismListReport(d, [g for g in O if cor(g)], [g for g in O if rem(g)], expected)
    if len(rep.list_candidates) != 1:
        rep.discrepancies.append({
            "claim": "automorphism list: g(B) <= B, id on A/B, beta(b, g c) = -beta(c, b)",
            "datum": repr(d),
            "solutions": [g.to_list() for g in rep.list_candidates],
        })
    if rep.combined != [expected]:
        rep.discrepancies.append({
            "claim": "automorphism list with beta(b, g a - a) = -sigma(b, a)",
            "datum": repr(d),
            "solutions": [g.to_list() for g in rep.combined],
            "expected": expected.to_list(),
        })
    for g in rep.list_candidates:
        if {g(b) for b in els} != B.element_set:
            rep.discrepancies.append({"claim": "g(B) = B", "datum": repr(d), "g": g.to_list()})
    return rep


def partial_alexei(d: ModuleCategoryDatum, orthogonal: list | None = None) -> GroupHom:
    """The element of O(A, q) attached to an invertible datum.

    Taken from the automorphism list together with the condition
    beta(b, g(a) - a) = -sigma(b, a); the list alone can admit several
    solutions (see ``automorphism_list_analysis``).
    """
    if not is_invertible_modcat(d):
        raise ValueError("datum is not invertible")
    rep = automorphism_list_analysis(d, orthogonal)
    if len(rep.combined) != 1 or rep.combined[0] != rep.expected:
        raise PropertyViolation(f"no unique automorphism for {d}: {rep.discrepancies}")
    return rep.combined[0]


def act_on_modcat(h: GroupHom, d: ModuleCategoryDatum, check: bool = True,
                  orthogonal: list | None = None) -> ModuleCategoryDatum:
    """(h(B), beta(h^-1 x, h^-1 y))."""
    q, A = d.form, d.form.group
    hinv = h.inverse()
    if hinv is None:
        raise ValueError(f"{h} is not invertible")
    B2 = Subgroup.from_elements(A, [h(b) for b in d.B.elements])
    out = ModuleCategoryDatum.from_function(q, B2, lambda x, y: d(hinv(x), hinv(y)))
    if check and is_invertible_modcat(d):
        if to_picard(out) != act(q, h, to_picard(d)):
            raise PropertyViolation(f"to_picard is not equivariant under {h}")
        if partial_alexei(out, orthogonal) != h @ partial_alexei(d, orthogonal) @ hinv:
            raise PropertyViolation(f"automorphism list is not equivariant under {h}")
    return out
