"""Weyl groups on the coroot lattice mod p, Frobenius twists, fixed spaces.

Simple reflections act on the coroot lattice Y in the basis of simple
coroots; the convention (s_i sends the j-th basis vector to e_j - A_ij e_i
for the Cartan matrix A) is pinned by unit tests on the group orders and the
presence of the longest element -1.  A twisted Frobenius is the scalar
q mod p composed with an optional diagram automorphism; dim V^{wF} scans over
the whole (small) Weyl group and twisted conjugacy classes drive the
reporting.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import factorial

from automref.ffield import field
from automref.fmatrix import Mat, MatGroup, fixed_space, kernel_basis
from automref.reflect import is_irreducible, reflection_subgroup

# torsion primes by type; the Chevalley statements assume p avoids these
TORSION_PRIMES = {"A": (), "B": (2,), "C": (2,), "D": (2,), "G": (2,), "F": (2, 3)}


class WeylError(ValueError):
    pass


@dataclass
class RootDatum:
    label: str               # e.g. "A2", "B4", "F4", "G2", "D4"
    rank: int
    cartan: tuple            # Cartan matrix rows
    weyl_order: int
    has_minus_one: bool
    m_phi: tuple | None = None   # diagram automorphism on the coroot basis


def _cartan(label: str) -> list[list[int]]:
    series, n = label[0].upper(), int(label[1:])
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    if series == "A":
        pass
    elif series == "B":      # last root short
        if n < 2:
            raise WeylError("B needs rank >= 2")
        A[n - 2][n - 1] = -2
    elif series == "C":      # last root long
        if n < 2:
            raise WeylError("C needs rank >= 2")
        A[n - 1][n - 2] = -2
    elif series == "D":
        if n != 4:
            raise WeylError("only D4 is supported")
        A = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    elif series == "F":
        if n != 4:
            raise WeylError("only F4 is supported")
        A = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    elif series == "G":
        if n != 2:
            raise WeylError("only G2 is supported")
        A = [[2, -1], [-3, 2]]
    else:
        raise WeylError(f"unsupported type {label}")
    return A


_WEYL_ORDERS = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2 ** n * factorial(n),
    "C": lambda n: 2 ** n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
    "F": lambda n: 1152,
    "G": lambda n: 12,
}

_MINUS_ONE = {
    "A": lambda n: n == 1,
    "B": lambda n: True,
    "C": lambda n: True,
    "D": lambda n: n % 2 == 0,
    "F": lambda n: True,
    "G": lambda n: True,
}

_SUPPORTED = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4",
              "C2", "C3", "C4", "D4", "F4", "G2"]


def root_datum(label: str, m_phi=None) -> RootDatum:
    label = label.strip().upper()
    if label not in _SUPPORTED:
        raise WeylError(f"unsupported type {label}; supported: {_SUPPORTED}")
    series, n = label[0], int(label[1:])
    A = _cartan(label)
    return RootDatum(label=label, rank=n, cartan=tuple(tuple(r) for r in A),
                     weyl_order=_WEYL_ORDERS[series](n),
                     has_minus_one=_MINUS_ONE[series](n),
                     m_phi=tuple(tuple(r) for r in m_phi) if m_phi is not None else None)


def simple_reflection_matrices(datum: RootDatum) -> list[list[list[int]]]:
    """Integer matrices of the simple reflections on the coroot basis."""
    n = datum.rank
    A = datum.cartan
    mats = []
    for i in range(n):
        M = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        for j in range(n):
            M[i][j] -= A[i][j]  # e_j -> e_j - A_ij e_i
        mats.append(M)
    return mats


def diagram_automorphism(datum: RootDatum, name: str):
    """Matrix of a named diagram symmetry on the coroot basis."""
    n = datum.rank
    if name == "reverse":
        if datum.label[0] != "A":
            raise WeylError("reversal is the A-series symmetry")
        return tuple(tuple(1 if c == n - 1 - r else 0 for c in range(n))
                     for r in range(n))
    if name == "triality":
        if datum.label != "D4":
            raise WeylError("triality lives on D4")
        perm = {0: 2, 2: 3, 3: 0, 1: 1}
        return tuple(tuple(1 if c == perm[r] else 0 for c in range(n))
                     for r in range(n))
    raise WeylError(f"unknown diagram automorphism {name!r}")


def torsion_primes(datum: RootDatum) -> tuple[int, ...]:
    return TORSION_PRIMES[datum.label[0]]


def weyl_matgroup(datum: RootDatum, p: int) -> MatGroup:
    """The Weyl group acting on Y ⊗ F_p; raises if reduction collapses it."""
    fp = field(p)
    gens = [Mat(fp, [[x % p for x in row] for row in M])
            for M in simple_reflection_matrices(datum)]
    W = MatGroup(fp, datum.rank, gens, name=f"W({datum.label}) mod {p}")
    order = W.order(cap=2 * datum.weyl_order)
    if order != datum.weyl_order:
        raise WeylError(f"W({datum.label}) mod {p} has order {order}, "
                        f"expected {datum.weyl_order}: p too small")
    return W


@dataclass
class TwistedFrobenius:
    q_mod_p: int
    m_phi: tuple | None
    matrix: Mat


def twisted_frobenius(datum: RootDatum, q: int, p: int,
                      phi=None) -> TwistedFrobenius:
    if q % p == 0:
        raise WeylError("p must not divide q")
    fp = field(p)
    n = datum.rank
    base = Mat.identity(fp, n)
    if phi is not None:
        base = Mat(fp, [[x % p for x in row] for row in phi])
        base.inverse()  # must be invertible
    F = base.scale(q % p)
    return TwistedFrobenius(q_mod_p=q % p, m_phi=phi, matrix=F)


@dataclass
class FixedDimScan:
    dims: dict                      # class representative Mat -> dim V^{wF}
    dim_by_element: dict            # every w -> dim
    max_dim: int
    attained_at_identity: bool
    argmax_classes: list            # representatives attaining the max
    identity_dim: int


def _twisted_classes(W: MatGroup, phi_mat: Mat | None) -> list[list[Mat]]:
    """Orbits of w -> u w phi(u)^-1; plain conjugacy when phi is trivial."""
    els = W.elements()
    gens = W.generators

    def phi(u: Mat) -> Mat:
        if phi_mat is None:
            return u
        return phi_mat * u * phi_mat.inverse()

    seen = set()
    classes = []
    for w in els:
        if w in seen:
            continue
        cls = [w]
        seen.add(w)
        frontier = [w]
        while frontier:
            nxt = []
            for x in frontier:
                for u in gens:
                    y = u * x * phi(u).inverse()
                    if y not in seen:
                        seen.add(y)
                        cls.append(y)
                        nxt.append(y)
            frontier = nxt
        classes.append(cls)
    return classes


def fixed_dim_scan(datum: RootDatum, q: int, p: int, phi=None) -> FixedDimScan:
    """dim V^{wF} for every w, grouped by twisted class, with the maximum."""
    W = weyl_matgroup(datum, p)
    F = twisted_frobenius(datum, q, p, phi).matrix
    fp = W.field
    ident = Mat.identity(fp, datum.rank)

    dim_by_element = {}
    for w in W.elements():
        dim_by_element[w] = len(kernel_basis(w * F - ident))
    phi_mat = Mat(fp, [[x % p for x in row] for row in phi]) if phi is not None else None
    classes = _twisted_classes(W, phi_mat)
    dims = {}
    for cls in classes:
        vals = {dim_by_element[w] for w in cls}
        if len(vals) != 1:
            raise RuntimeError("dim V^{wF} is not constant on a twisted class")
        dims[cls[0]] = vals.pop()
    max_dim = max(dim_by_element.values())
    return FixedDimScan(
        dims=dims, dim_by_element=dim_by_element, max_dim=max_dim,
        attained_at_identity=(dim_by_element[ident] == max_dim),
        argmax_classes=[rep for rep, d in dims.items() if d == max_dim],
        identity_dim=dim_by_element[ident])


def subspace_automizer(datum: RootDatum, q: int, p: int, phi=None,
                       w0: Mat | None = None) -> MatGroup:
    """Induced action of the setwise stabilizer of S = V^{w0 F} on S."""
    W = weyl_matgroup(datum, p)
    fp = W.field
    F = twisted_frobenius(datum, q, p, phi).matrix
    ident = Mat.identity(fp, datum.rank)
    if w0 is None:
        w0 = ident
    S = kernel_basis(w0 * F - ident)
    if not S:
        raise WeylError("V^{w0 F} is zero; nothing to act on")
    k = len(S)

    from automref.fmatrix import echelon, in_span
    span = echelon(fp, S)

    induced = {}
    for u in W.elements():
        imgs = [u.apply(v) for v in S]
        if not all(in_span(fp, span, im) for im in imgs):
            continue
        # solve the k x k matrix of u restricted to S in the basis S
        from automref.semilinear import _express
        cols = [_express(fp, list(S), im) for im in imgs]
        m = Mat(fp, [[cols[j][i] for j in range(k)] for i in range(k)])
        induced[m] = None
    group = MatGroup(fp, k, list(induced), name=f"automizer on V^wF ({datum.label})")
    return group


@dataclass
class ChevalleyCheck:
    datum: RootDatum
    q: int
    p: int
    subspace_dim: int
    automizer_order: int
    reflection_count: int
    generated_by_reflections: bool
    irreducible: bool
    passed: bool
    witness: str = ""


def check_refl_chevalley(datum: RootDatum, q: int, p: int, phi=None,
                         w0: Mat | None = None) -> ChevalleyCheck:
    """The subspace automizer must be an (irreducible) reflection group."""
    if p in torsion_primes(datum):
        raise WeylError(f"p = {p} is a torsion prime for type {datum.label}")
    scan = fixed_dim_scan(datum, q, p, phi)
    W = weyl_matgroup(datum, p)
    fp = W.field
    F = twisted_frobenius(datum, q, p, phi).matrix
    ident = Mat.identity(fp, datum.rank)
    if w0 is None:
        w0 = ident
    d0 = len(kernel_basis(w0 * F - ident))
    if d0 != scan.max_dim:
        raise WeylError(f"w0 attains dim {d0}, but the maximum is {scan.max_dim}; "
                        "not an abelian-Sylow configuration")
    induced = subspace_automizer(datum, q, p, phi, w0)
    analysis = reflection_subgroup(induced)
    gen_by_refl = analysis.order_W == induced.order()
    irred = analysis.irreducible if analysis.reflections else induced.dim == 1 and induced.order() == 1
    if induced.dim == 1:
        irred = True
    passed = gen_by_refl and irred
    witness = ""
    if not gen_by_refl:
        witness = f"|W| = {analysis.order_W} but the automizer has order {induced.order()}"
    elif not irred:
        witness = "reflection subgroup acts reducibly"
    return ChevalleyCheck(
        datum=datum, q=q, p=p, subspace_dim=d0, automizer_order=induced.order(),
        reflection_count=len(analysis.reflections),
        generated_by_reflections=gen_by_refl, irreducible=irred,
        passed=passed, witness=witness)
