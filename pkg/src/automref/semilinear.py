"""K-structures on Omega_1(P): splitting E as (K-linear N) ⋊ (Galois part Γ).

A candidate scalar S is an element of E whose minimal polynomial over F_p is
irreducible of degree m and whose multiplicative order is p^m - 1, so that
F_p[S] is a copy of K = F_{p^m} acting on the space.  Generators of E must
conjugate S to Frobenius powers S^(p^j); the exponents give the map onto
Γ ≤ Z/m, its kernel is the K-linear part N, and an order-|Γ| preimage of a
generator of Γ exhibits the semidirect splitting.
"""

from __future__ import annotations

from dataclasses import dataclass

from automref.ffield import FieldDesc, field, is_irreducible
from automref.fmatrix import Mat, MatGroup, echelon, in_span


class SemilinearError(RuntimeError):
    pass


@dataclass
class SemilinearDecomposition:
    m: int
    S: Mat                       # scalar action of a generator of K^x (over F_p)
    K: FieldDesc                 # F_{p^m} with modulus = minpoly of S
    N: MatGroup                  # K-linear part, as F_p matrices
    gamma_of_generator: dict     # E-generator -> exponent j with e S e^-1 = S^(p^j)
    gamma_order: int             # |Γ|
    section_generator: Mat | None  # order-|Γ| lift of a generator of Γ
    v_sub: tuple                 # F_p-form: span of the chosen free-module basis
    k_basis: tuple               # vectors whose S-orbits give the F_p basis
    structures_found: int = 1    # candidates S that verified at this m


def minimal_polynomial(A: Mat) -> tuple[int, ...]:
    """Monic minimal polynomial of A over its (prime) field, low degree first."""
    f = A.field
    d = A.nrows
    vecs = []
    power = Mat.identity(f, d)
    for k in range(d * d + 1):
        flat = tuple(x for row in power.rows for x in row)
        if in_span(f, vecs, flat):
            # solve sum c_i A^i = A^k over the echelon basis
            coeffs = _express(f, vecs, flat)
            out = [f.neg(c) for c in coeffs] + [1]
            return tuple(out)
        vecs.append(flat)
        power = power * A
    raise RuntimeError("minimal polynomial not found")  # unreachable


def _express(f: FieldDesc, basis_vectors, target):
    """Coefficients writing target as a combination of the listed vectors."""
    n = len(basis_vectors)
    if n == 0:
        return []
    ncols = len(target)
    # solve x * B = target by Gaussian elimination on [B^T | target^T]
    rows = [[basis_vectors[j][i] for j in range(n)] + [target[i]]
            for i in range(ncols)]
    pivots = {}
    r = 0
    for c in range(n):
        piv = next((rr for rr in range(r, len(rows)) if rows[rr][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and rows[rr][c]:
                m = rows[rr][c]
                rows[rr] = [f.sub(x, f.mul(m, y)) for x, y in zip(rows[rr], rows[r])]
        pivots[c] = r
        r += 1
    coeffs = [0] * n
    for c, rr in pivots.items():
        coeffs[c] = rows[rr][n]
    return coeffs


def _frobenius_powers(S: Mat, p: int, m: int) -> list[Mat]:
    return [S ** (p ** j) for j in range(m)]


def verify_k_structure(E: MatGroup, S: Mat, cap: int = 2_000_000) -> SemilinearDecomposition:
    """Check that S endows the space with a K-structure split by E."""
    f = E.field
    if f.n != 1:
        raise SemilinearError("E must be given over the prime field")
    p = f.p
    d = E.dim

    minpoly = minimal_polynomial(S)
    m = len(minpoly) - 1
    if not is_irreducible(list(minpoly), p):
        raise SemilinearError("F_p[S] is not a field: minimal polynomial reducible")
    if d % m:
        raise SemilinearError(f"field degree {m} does not divide dimension {d}")
    if m > 1 and S.order() != p ** m - 1:
        raise SemilinearError("S does not generate the multiplicative group of K")

    spows = _frobenius_powers(S, p, m)
    gamma = {}
    for e in E.generators:
        conj = e * S * e.inverse()
        j = next((jj for jj, sp in enumerate(spows) if conj == sp), None)
        if j is None:
            raise SemilinearError("a generator conjugates S outside the Frobenius orbit")
        gamma[e] = j

    # Γ is the subgroup of Z/m generated by the exponents
    g = m
    for j in gamma.values():
        g = _gcd(g, j)
    gamma_order = m // g if g else 1

    els = E.elements(cap)
    n_els = [x for x in els if x * S == S * x]
    order_e = len(els)
    if order_e != len(n_els) * gamma_order:
        raise SemilinearError("kernel of the Galois map has the wrong index")
    N = MatGroup(f, d, n_els, name="N")

    section = None
    if gamma_order == 1:
        section = Mat.identity(f, d)
    else:
        target = spows[g % m]
        for x in sorted(els, key=lambda mt: mt.rows):
            if x.order() == gamma_order and (x * S * x.inverse()) == target:
                section = x
                break
        if section is None:
            raise SemilinearError("no complement: the extension by Γ does not split")

    k_basis, v_rows = _free_module_basis(S, m, d)
    K = FieldDesc(p, m, minpoly) if m > 1 else field(p)
    return SemilinearDecomposition(
        m=m, S=S, K=K, N=N, gamma_of_generator=gamma, gamma_order=gamma_order,
        section_generator=section, v_sub=echelon(f, v_rows), k_basis=tuple(k_basis))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _free_module_basis(S: Mat, m: int, d: int):
    """Vectors v_1..v_{d/m} whose orbits v, Sv, ..., S^{m-1}v give an F_p basis."""
    f = S.field
    basis_rows: list[tuple] = []
    k_basis = []
    for lead in range(d):
        if len(basis_rows) == d:
            break
        v = tuple(1 if i == lead else 0 for i in range(d))
        if in_span(f, basis_rows, v):
            continue
        orbit = []
        w = v
        for _ in range(m):
            orbit.append(w)
            w = S.apply(w)
        candidate = basis_rows + orbit
        if len(echelon(f, candidate)) == len(basis_rows) + m:
            k_basis.append(v)
            basis_rows = candidate
    if len(basis_rows) != d:
        raise SemilinearError("could not build a free-module basis")
    return k_basis, [k for k in k_basis]


def find_k_structure(E: MatGroup, cap: int = 2_000_000,
                     prefer: str = "auto") -> SemilinearDecomposition:
    """A K-structure with scalars sought inside E; m = 1 always works.

    The same matrix group can carry several valid structures (the order-16
    automizer over F_3 is both B2-over-F_3 and the semilinear group of F_9),
    so the choice is a policy:

      prefer="auto"     keep K = F_p whenever the F_p-reflection subgroup of E
                        already acts irreducibly, matching the classification
                        table's K column; otherwise take the largest m that
                        verifies.
      prefer="largest"  largest verifying m outright (the PSL2-family
                        presentation, where K = F_q is the natural choice).

    Reports how many candidate scalars verified at the winning m.
    """
    if prefer not in ("auto", "largest"):
        raise ValueError("prefer must be 'auto' or 'largest'")
    f = E.field
    p = f.p
    d = E.dim
    if prefer == "auto" and _fp_reflections_irreducible(E, cap):
        return _trivial_structure(E)
    els = sorted(E.elements(cap), key=lambda mt: mt.rows)
    for m in sorted((k for k in range(2, d + 1) if d % k == 0), reverse=True):
        want = p ** m - 1
        winner = None
        count = 0
        for c in els:
            if c.order() != want:
                continue
            try:
                dec = verify_k_structure(E, c, cap)
            except SemilinearError:
                continue
            if dec.m == m:
                count += 1
                if winner is None:
                    winner = dec
        if winner is not None:
            winner.structures_found = count
            return winner
    return _trivial_structure(E)


def _fp_reflections_irreducible(E: MatGroup, cap: int) -> bool:
    from automref.reflect import is_irreducible, reflections_of
    refl, _ = reflections_of(E, cap)
    if not refl:
        return E.dim == 1 and len(E.elements(cap)) > 1
    W = MatGroup(E.field, E.dim, refl)
    return is_irreducible(W)


def _trivial_structure(E: MatGroup) -> SemilinearDecomposition:
    """The always-valid m = 1 structure: K = F_p acting by scalars."""
    f = E.field
    p = f.p
    d = E.dim
    prim = next((a for a in range(2, p) if field(p).element_order(a) == p - 1), 1)
    S = Mat.identity(f, d).scale(prim)
    gamma = {e: 0 for e in E.generators}
    return SemilinearDecomposition(
        m=1, S=S, K=field(p), N=E, gamma_of_generator=gamma, gamma_order=1,
        section_generator=Mat.identity(f, d),
        v_sub=echelon(f, [tuple(1 if i == j else 0 for j in range(d))
                          for i in range(d)]),
        k_basis=tuple(tuple(1 if i == j else 0 for j in range(d))
                      for i in range(d)),
        structures_found=1)


def restrict_to_k(E: MatGroup, dec: SemilinearDecomposition,
                  cap: int = 2_000_000) -> MatGroup:
    """Rewrite the K-linear part N as matrices over K of dimension d/m."""
    f = E.field
    p = f.p
    m, d = dec.m, E.dim
    if m == 1:
        return MatGroup(dec.K, d, dec.N.generators, name="N over K")
    K = dec.K
    # F_p-basis adapted to the free F_p[S]-module structure
    cols = []
    for v in dec.k_basis:
        w = v
        for _ in range(m):
            cols.append(w)
            w = dec.S.apply(w)
    B = Mat(f, [[cols[j][i] for j in range(d)] for i in range(d)])
    Binv = B.inverse()
    dk = d // m

    def to_k(mat: Mat) -> Mat:
        rows = [[0] * dk for _ in range(dk)]
        for slot in range(dk):
            img = mat.apply(dec.k_basis[slot])
            coords = Binv.apply(img)
            for r in range(dk):
                chunk = coords[r * m:(r + 1) * m]
                rows[r][slot] = K.encode(list(chunk))
        return Mat(K, rows)

    gens = [to_k(g) for g in dec.N.generators]
    Nk = MatGroup(K, dk, gens, name="N over K")
    # the rewrite must be an isomorphism onto the K-linear part
    if Nk.order(cap) != dec.N.order(cap):
        raise SemilinearError("K-rewrite changed the group order")
    return Nk


def push_to_prime_field(dec: SemilinearDecomposition, mk: Mat, E_dim: int) -> Mat:
    """Inverse of the K-rewrite: a K-matrix as an F_p matrix on the old basis."""
    fK = mk.field
    f = dec.S.field
    m = dec.m
    if m == 1:
        return Mat(f, mk.rows)
    d = E_dim
    cols = []
    for v in dec.k_basis:
        w = v
        for _ in range(m):
            cols.append(w)
            w = dec.S.apply(w)
    B = Mat(f, [[cols[j][i] for j in range(d)] for i in range(d)])
    dk = d // m
    # adapted basis vector (slot c, power t) = S^t v_c maps to
    # sum_r (x^t * mk[r][c]) v_r with x the image of S in K
    x = fK.encode([0, 1] + [0] * (m - 2)) if m >= 2 else 1
    adapted_cols = []
    for c in range(dk):
        xt = 1
        for t in range(m):
            col = [0] * d
            for r in range(dk):
                chunk = fK.coeffs(fK.mul(xt, mk.rows[r][c]))
                for bi in range(m):
                    col[r * m + bi] = chunk[bi]
            adapted_cols.append(col)
            xt = fK.mul(xt, x)
    M_adapted = Mat(f, [[adapted_cols[j][i] for j in range(d)] for i in range(d)])
    return B * M_adapted * B.inverse()
