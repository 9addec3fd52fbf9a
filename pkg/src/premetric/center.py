"""The center form Q on A + A^ and automorphisms that fix A + 0.

Generators of ``A + A^`` are ``e_0..e_{r-1}`` (copies of A's) followed by
``eps_0..eps_{r-1}`` (the dual basis).  ``Q(a, phi) = <phi, a> + q(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .abelian_groups import QZ, FinAbGroup, GroupHom, Subgroup, dual_hom
from .config import check_order, current_limits
from .errors import PropertyViolation
from .picard import act, enumerate_picard
from .quadratic_forms import (QuadraticForm, orthogonal_complement, preserves, pullback,
                              sigma_tilde)
from .search import element_array, is_injective_matrix, search_images


@dataclass(frozen=True)
class CenterForm:
    base: QuadraticForm
    form: QuadraticForm

    @property
    def group(self) -> FinAbGroup:
        return self.form.group

    @property
    def rank(self) -> int:
        return self.base.group.rank


def center_form(q: QuadraticForm) -> CenterForm:
    A = q.group
    r = A.rank
    AA = A.direct_sum(A.dual())
    off = {k: v for k, v in q.offdiag}
    for i, n in enumerate(A.orders):
        off[(i, r + i)] = QZ(1, n)
    diag = tuple(q.diag) + (QZ(0),) * r
    name = f"Z({q.name})" if q.name else ""
    return CenterForm(q, QuadraticForm(AA, diag, off, name))


def _split(c: CenterForm, x):
    r = c.rank
    return tuple(x[:r]), tuple(x[r:])


def _join(a, phi):
    return tuple(a) + tuple(phi)


def _block(c: CenterForm, top_left, top_right, bottom_left, bottom_right) -> GroupHom:
    """The map (a, phi) -> (TL a + TR phi, BL a + BR phi); None blocks are zero."""
    A = c.base.group
    AA = c.group
    zA = A.zero()
    ims = []
    for a in A.gens():
        ims.append(_join(top_left(a) if top_left else zA, bottom_left(a) if bottom_left else zA))
    for phi in A.dual().gens():
        ims.append(_join(top_right(phi) if top_right else zA,
                         bottom_right(phi) if bottom_right else zA))
    return GroupHom.from_images(AA, AA, [AA.reduce(y) for y in ims])


def embeddings(q: QuadraticForm, c: CenterForm | None = None):
    """``(e_C, e_rev)`` with e_C(a) = (a, 0) and e_rev(a) = (a, -sigma~ a)."""
    c = c or center_form(q)
    A, AA = q.group, c.group
    st = sigma_tilde(q)
    e_c = GroupHom.from_images(A, AA, [_join(a, A.zero()) for a in A.gens()])
    e_rev = GroupHom.from_images(A, AA, [_join(a, A.dual().neg(st(a))) for a in A.gens()])
    if pullback(c.form, e_c) != q:
        raise PropertyViolation("e_C does not pull Q back to q")
    if pullback(c.form, e_rev) != q.negate():
        raise PropertyViolation("e_rev does not pull Q back to -q")
    if not (e_c.is_injective() and e_rev.is_injective()):
        raise PropertyViolation("center embeddings are not injective")
    im_c = Subgroup.from_elements(AA, e_c.image_elements())
    im_rev = Subgroup.from_elements(AA, e_rev.image_elements())
    if orthogonal_complement(c.form, im_c) != im_rev or orthogonal_complement(c.form, im_rev) != im_c:
        raise PropertyViolation("images of e_C and e_rev are not mutual centralizers")
    return e_c, e_rev


def alpha_f(q: QuadraticForm, f: GroupHom, c: CenterForm | None = None) -> GroupHom:
    """(a, phi) -> (a + f(phi), phi - sigma~ f(phi))."""
    c = c or center_form(q)
    st = sigma_tilde(q)
    A = q.group
    return _block(c, lambda a: a, f, None, lambda phi: A.dual().sub(phi, st(f(phi))))


def is_center_automorphism(c: CenterForm, alpha: GroupHom) -> bool:
    return preserves(c.form, alpha) and alpha.is_bijective()


def enumerate_trivializable(q: QuadraticForm, c: CenterForm | None = None,
                            check: bool = True) -> list:
    """Automorphisms of (A + A^, Q) that fix every (a, 0), sorted by matrix.

    Only the images of the dual generators are searched; the A block is the
    identity.  With ``check`` the result is compared against alpha_f over
    P(A, q).
    """
    A = q.group
    check_order(f"center automorphisms of {A}", A.order, current_limits().max_center_order)
    c = c or center_form(q)
    AA, Q = c.group, c.form
    r = A.rank
    E = element_array(AA)
    D = Q.level
    qv = Q.int_values(E)
    G = Q.int_gram
    pair_with_a = (E @ G[:r].T) % D  # column j: level * B(e_j, y)
    unary = []
    for k in range(r):
        want = np.zeros(r, dtype=np.int64)
        want[k] = D // A.orders[k]
        unary.append((qv == 0) & (pair_with_a == want).all(axis=1))

    def pair(l, k, yl, C):
        return (C @ ((G @ yl) % D)) % D == 0

    found = search_images(AA, A.orders, unary, pair)
    fixed = [A.gen(j) + A.zero() for j in range(r)]
    out = []
    for ims in found:
        M = np.array(fixed + list(ims), dtype=np.int64).T
        if is_injective_matrix(M, AA, AA, E):
            out.append(GroupHom(AA, AA, M.tolist(), check=False))
    out.sort(key=GroupHom.sort_key)
    if check:
        expected = {alpha_f(q, f, c) for f in enumerate_picard(q)}
        if set(out) != expected:
            raise PropertyViolation(
                f"trivializable center automorphisms ({len(out)}) differ from alpha(P) ({len(expected)})")
    return out


def picard_of_alpha(q: QuadraticForm, alpha: GroupHom, c: CenterForm | None = None) -> GroupHom:
    """Recover f from alpha_f by reading the A-part of alpha(0, phi)."""
    c = c or center_form(q)
    A = q.group
    f = GroupHom.from_images(A.dual(), A, [_split(c, alpha(_join(A.zero(), phi)))[0]
                                           for phi in A.dual().gens()])
    if alpha_f(q, f, c) != alpha:
        raise PropertyViolation(f"{alpha} is not of the form alpha_f")
    return f


def restrict_to_rev(q: QuadraticForm, alpha: GroupHom, c: CenterForm | None = None) -> GroupHom:
    """The automorphism of A read off from alpha on the image of e_rev."""
    c = c or center_form(q)
    A = q.group
    st = sigma_tilde(q)
    for a in A.gens():
        if alpha(_join(a, A.zero())) != _join(a, A.zero()):
            raise PropertyViolation(f"{alpha} does not fix {a} in A + 0")
    ims = []
    for a in A.gens():
        b, psi = _split(c, alpha(_join(a, A.dual().neg(st(a)))))
        if psi != A.dual().neg(st(b)):
            raise PropertyViolation(f"{alpha} does not preserve the image of e_rev")
        ims.append(b)
    return GroupHom.from_images(A, A, ims)


def lift(q: QuadraticForm, g: GroupHom, c: CenterForm | None = None) -> GroupHom:
    """(a, phi) -> (g a, phi o g^-1)."""
    c = c or center_form(q)
    ginv = g.inverse()
    if ginv is None:
        raise ValueError(f"{g} is not invertible")
    return _block(c, g, None, None, dual_hom(ginv))


def lift_conjugation_check(q: QuadraticForm, g: GroupHom, f: GroupHom,
                           c: CenterForm | None = None) -> bool:
    """lift(g) alpha_f lift(g)^-1 == alpha_{g . f}."""
    c = c or center_form(q)
    gt = lift(q, g, c)
    lhs = gt @ alpha_f(q, f, c) @ gt.inverse()
    return lhs == alpha_f(q, act(q, g, f), c)
