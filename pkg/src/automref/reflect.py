"""Reflection detection, the reflection subgroup W, irreducibility, naming.

A reflection is an invertible s of finite order with rank(s - 1) = 1; over a
field this is the free-of-rank-1 condition on V/ker(s-1), and unipotent
(order divisible by p) reflections satisfy it too, so they are accepted but
flagged.  Irreducibility is decided by spinning every 1-dimensional subspace,
which is exhaustive at these dimensions.  Identification goes by fingerprint
(order, element-order histogram, reflection count) against the small built-in
catalog of groups that occur in the classification table.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from automref.ffield import FieldDesc, field
from automref.fmatrix import (EnumerationCapExceeded, Mat, MatGroup, echelon,
                              fixed_space, in_span, intersect_spaces, rank)

LINE_CAP = 1_000_000


def is_reflection(s: Mat) -> bool:
    """rank(s - 1) = 1, the modular reflection condition."""
    if s.nrows != s.ncols:
        raise ValueError("reflection test needs a square matrix")
    s.inverse()  # singular input is rejected
    return rank(s - Mat.identity(s.field, s.nrows)) == 1


def is_transvection_type(s: Mat) -> bool:
    """Reflection whose order is divisible by the characteristic.

    Such elements satisfy the rank-1 condition but can never appear in the
    p'-automizer of an abelian Sylow subgroup; callers flag them.
    """
    return is_reflection(s) and s.order() % s.field.p == 0


@dataclass
class ReflectionAnalysis:
    field: FieldDesc
    group: MatGroup
    reflections: list
    W: MatGroup
    order_W: int
    irreducible: bool
    fixed_dim: int
    identification: str
    index_N_over_W: int
    unipotent_reflections: list = dc_field(default_factory=list)


def reflections_of(G: MatGroup, cap: int = 2_000_000) -> tuple[list[Mat], list[Mat]]:
    """All reflections in G, plus the sublist of transvection type."""
    refl, unip = [], []
    for m in G.elements(cap):
        if m.is_identity():
            continue
        if rank(m - Mat.identity(G.field, G.dim)) == 1:
            refl.append(m)
            if m.order() % G.field.p == 0:
                unip.append(m)
    return refl, unip


def spin(fieldK: FieldDesc, v, gens) -> tuple[tuple[int, ...], ...]:
    """Smallest subspace containing v and closed under the generators."""
    basis = echelon(fieldK, [v])
    if not basis:
        raise ValueError("cannot spin the zero vector")
    while True:
        images = [g.apply(b) for b in basis for g in gens]
        new = echelon(fieldK, list(basis) + images)
        if new == basis:
            return basis
        basis = new


def _line_representatives(fieldK: FieldDesc, dim: int, cap: int = LINE_CAP):
    q = fieldK.size
    count = (q ** dim - 1) // (q - 1)
    if count > cap:
        raise EnumerationCapExceeded(cap)
    # canonical reps: first nonzero coordinate equals 1
    reps = []
    for lead in range(dim):
        tail = dim - lead - 1
        idx = [0] * tail
        while True:
            reps.append(tuple([0] * lead + [1] + idx))
            i = 0
            while i < tail:
                idx[i] += 1
                if idx[i] < q:
                    break
                idx[i] = 0
                i += 1
            else:
                break
            continue
    # fix enumeration for tail == 0 case producing duplicates
    reps = sorted(set(reps))
    assert len(reps) == count
    return reps


def is_irreducible(G: MatGroup, cap: int = LINE_CAP) -> bool:
    """True iff spinning every line fills the space (exhaustive test)."""
    d = G.dim
    if d < 1:
        raise ValueError("dimension must be >= 1")
    gens = G.generators
    if d == 1:
        return True
    if not gens:
        return False
    for v in _line_representatives(G.field, d, cap):
        if len(spin(G.field, v, gens)) < d:
            return False
    return True


def fixed_space_of_group(G: MatGroup):
    """Echelon basis of the common fixed space of all generators."""
    d = G.dim
    space = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
    for g in G.generators:
        space = intersect_spaces(G.field, space, fixed_space(g))
        if not space:
            return ()
    return space


def reflection_subgroup(G: MatGroup, cap: int = 2_000_000) -> ReflectionAnalysis:
    """Reflections of G, the subgroup W they generate, and its invariants."""
    refl, unip = reflections_of(G, cap)
    W = MatGroup(G.field, G.dim, refl, name="W")
    order_W = W.order(cap)
    order_G = G.order(cap)
    if order_G % order_W:
        raise RuntimeError("reflection subgroup order does not divide group order")
    irred = is_irreducible(W) if refl else (G.dim == 0)
    fixed = len(fixed_space_of_group(W)) if refl else G.dim
    ident = fingerprint_and_identify(W)
    return ReflectionAnalysis(
        field=G.field, group=G, reflections=refl, W=W, order_W=order_W,
        irreducible=irred, fixed_dim=fixed, identification=ident,
        index_N_over_W=order_G // order_W, unipotent_reflections=unip)


# ----------------------------------------------------------- identification

# fingerprints of the named groups from the classification table, as
# (order, reflection count, element-order histogram); the histograms are
# pinned by the model-group tests
_CATALOG: dict[str, tuple[int, int, dict[int, int]]] = {
    "B2": (8, 4, {1: 1, 2: 5, 4: 2}),
    "G2": (12, 6, {1: 1, 2: 7, 3: 2, 6: 2}),
    "G5": (72, 16, {1: 1, 2: 1, 3: 26, 4: 6, 6: 26, 12: 12}),
    "G8": (96, 18, {1: 1, 2: 7, 3: 8, 4: 32, 6: 8, 8: 24, 12: 16}),
    "G16": (600, 48, {1: 1, 2: 1, 3: 20, 4: 30, 5: 124, 6: 20,
                      10: 124, 15: 80, 20: 120, 30: 80}),
}


def fingerprint(G: MatGroup, cap: int = 2_000_000):
    order = G.order(cap)
    hist = G.element_order_histogram(cap)
    refl, _ = reflections_of(G, cap)
    return order, len(refl), hist


def _wreath_model(fieldK: FieldDesc, r: int) -> MatGroup:
    """The monomial group (K^x wr Sym(r)) as matrices."""
    gens = []
    prim = next(a for a in range(2, fieldK.size)
                if fieldK.element_order(a) == fieldK.size - 1)
    for i in range(r):
        gens.append(Mat.diagonal(fieldK, [prim if j == i else 1 for j in range(r)]))
    if r >= 2:
        rows = [[0] * r for _ in range(r)]
        rows[0][1], rows[1][0] = 1, 1
        for i in range(2, r):
            rows[i][i] = 1
        gens.append(Mat(fieldK, rows))
        if r > 2:
            rows = [[0] * r for _ in range(r)]
            for i in range(r):
                rows[(i + 1) % r][i] = 1
            gens.append(Mat(fieldK, rows))
    return MatGroup(fieldK, r, gens, name=f"wreath({fieldK.p},{r})")


def fingerprint_and_identify(W: MatGroup, cap: int = 2_000_000) -> str:
    """Name by fingerprint; ambiguity returns "unidentified" rather than a guess."""
    els = W.elements(cap)
    order = len(els)
    if order == 1:
        return "trivial"
    fp = fingerprint(W, cap)
    matches = [name for name, (o, r, h) in _CATALOG.items()
               if (o, r) == (fp[0], fp[1]) and h == fp[2]]
    if len(matches) == 1:
        return matches[0]
    if len(matches) > 1:
        return "unidentified"
    # cyclic groups (the K^x rows of the table)
    if any(m.order() == order for m in els):
        return f"cyclic-{order}"
    # the monomial group of the alternating-group rows
    q = W.field.size
    r = W.dim
    if order == (q - 1) ** r * _factorial(r) and q > 2:
        if fingerprint(_wreath_model(W.field, r), cap) == fp:
            return f"wreath({W.field.p},{r})"
    return "unidentified"


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# -------------------------------------------------------------- GL2 search

def reflections_in_gl2(fieldK: FieldDesc) -> list[Mat]:
    """All reflections of GL_2(K), in deterministic lexicographic scan order."""
    q = fieldK.size
    out = []
    ident = Mat.identity(fieldK, 2)
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    m = Mat(fieldK, [[a, b], [c, d]])
                    if m.det() == 0:
                        continue
                    if rank(m - ident) == 1:
                        out.append(m)
    return out


def find_reflection_subgroup(fieldK: FieldDesc, target_order: int,
                             cap: int | None = None) -> MatGroup | None:
    """Search GL_2(K) for an irreducible reflection subgroup of a given order.

    Scans pairs of reflections in deterministic order, pruning by Lagrange
    (element orders must divide the target) before closing.  The first pass
    anchors the first reflection per element order, which suffices for the
    2-generated groups of the table; a full pair scan runs as fallback.
    """
    refl = [s for s in reflections_in_gl2(fieldK) if target_order % s.order() == 0]
    if not refl:
        return None
    anchors: list[Mat] = []
    seen_orders = set()
    for s in refl:
        o = s.order()
        if o not in seen_orders:
            seen_orders.add(o)
            anchors.append(s)

    def try_pair(s: Mat, t: Mat) -> MatGroup | None:
        if target_order % (s * t).order() != 0:
            return None
        G = MatGroup(fieldK, 2, [s, t])
        try:
            order = G.order(cap=target_order + 1)
        except EnumerationCapExceeded:
            return None
        if order == target_order and is_irreducible(G):
            return G
        return None

    for s in anchors:
        for t in refl:
            got = try_pair(s, t)
            if got is not None:
                return got
    for s in refl:
        for t in refl:
            got = try_pair(s, t)
            if got is not None:
                return got
    return None
