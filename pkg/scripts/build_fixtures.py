"""Build the sporadic-group generator fixtures shipped under automref/data/.

Every group is constructed from scratch and verified by order before being
written, so the fixture files carry no unverifiable data:

  m11.grp   Mathieu group M11: the classical pair (11-cycle, quadruple 4-cycles),
            order-checked against 7920 by a stabilizer chain.
  m23.grp   Mathieu group M23: the classical pair (23-cycle, product of 5-cycles),
            order-checked against 10200960.
  hs2.grp   HS.2 = Aut(Higman-Sims graph).  The graph is built from the
            S(3,6,22) Witt design (derived from the weight-7 words of the
            binary Golay code, itself the quadratic-residue [23,12] cyclic
            code), checked to be srg(100,22,0,6); automorphisms come from a
            backtracking search and are order-checked against 88704000.
  j22.grp   J2.2 = Aut(Hall-Janko graph).  Vertices: a root, the 36 conjugates
            of PSL(2,7) inside U3(3), and the 63 nonisotropic points of the
            hermitian plane over F9; adjacency chosen by the norm invariant;
            checked to be srg(100,36,14,12); automorphisms order-checked
            against 1209600.
  j1.grp    J1 from Janko's two 7x7 matrices over F11 (closure order-checked
            against 175560), acting on the 266 conjugates of a PSL(2,11)
            subgroup.

Run from the repository root:  python3 scripts/build_fixtures.py
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "scripts"))

from automref.perm import PermGroup, Permutation, format_cycles, parse_permutation
from graphaut import automorphism_group_gens

DATA = ROOT / "src" / "automref" / "data"


def write_group(path: Path, comment: str, degree: int, order: int, gens) -> None:
    lines = [f"# {line}" for line in comment.splitlines()]
    lines.append(f"degree {degree}")
    lines.append(f"order {order}")
    for g in gens:
        lines.append(format_cycles(g if isinstance(g, Permutation) else Permutation(g)))
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path.name}: degree {degree}, order {order}")


def closure_cap(gens, cap, degree):
    ident = Permutation.identity(degree)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.key() not in seen:
                    if len(seen) >= cap:
                        return None
                    seen[y.key()] = y
                    nxt.append(y)
        frontier = nxt
    return list(seen.values())


# ---------------------------------------------------------------- Mathieu

def build_mathieu() -> None:
    a = parse_permutation("(1,2,3,4,5,6,7,8,9,10,11)", 11)
    b = parse_permutation("(3,7,11,8)(4,10,5,6)", 11)
    g = PermGroup(11, [a, b])
    assert g.order() == 7920, g.order()
    write_group(DATA / "m11.grp", "M11, Mathieu group on 11 points (classical generators)",
                11, 7920, [a, b])

    a = parse_permutation("(" + ",".join(str(i) for i in range(1, 24)) + ")", 23)
    b = parse_permutation("(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)", 23)
    g = PermGroup(23, [a, b])
    assert g.order() == 10200960, g.order()
    write_group(DATA / "m23.grp", "M23, Mathieu group on 23 points (classical generators)",
                23, 10200960, [a, b])


# ------------------------------------------------------- Golay / HS graph

def golay_hexads() -> list[frozenset[int]]:
    """Blocks of S(3,6,22): derived Witt design of the binary Golay code."""

    def polydiv2(num: int, den: int):
        dn = den.bit_length() - 1
        while num and num.bit_length() - 1 >= dn:
            num ^= den << (num.bit_length() - 1 - dn)
        return num

    x23_1 = (1 << 23) | 1
    divisors = [(1 << 11) | c for c in range(1 << 11)
                if polydiv2(x23_1, (1 << 11) | c) == 0]
    assert len(divisors) == 2  # the two quadratic-residue generators
    gpoly = min(divisors)

    words = [0]
    for b in [gpoly << i for i in range(12)]:
        words += [w ^ b for w in words]
    assert len(words) == 4096
    dist = Counter(w.bit_count() for w in words)
    assert dist == Counter({0: 1, 7: 253, 8: 506, 11: 1288, 12: 1288,
                            15: 506, 16: 253, 23: 1})

    blocks = [frozenset(i for i in range(23) if (w >> i) & 1)
              for w in words if w.bit_count() == 7]
    quad = Counter(q for B in blocks for q in itertools.combinations(sorted(B), 4))
    assert len(quad) == 8855 and set(quad.values()) == {1}  # S(4,7,23)

    hexads = [frozenset(B - {22}) for B in blocks if 22 in B]
    assert len(hexads) == 77
    trip = Counter(t for B in hexads for t in itertools.combinations(sorted(B), 3))
    assert len(trip) == 1540 and set(trip.values()) == {1}  # S(3,6,22)
    return hexads


def check_srg(adj, k, lam, mu) -> None:
    n = len(adj)
    assert {adj[v].bit_count() for v in range(n)} == {k}
    for u in range(n):
        for v in range(u + 1, n):
            c = (adj[u] & adj[v]).bit_count()
            assert c == (lam if (adj[u] >> v) & 1 else mu)


def build_hs2() -> None:
    hexads = golay_hexads()
    # vertices: 0 the root, 1..22 the design points, 23..99 the hexads
    adj = [0] * 100

    def link(a, b):
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    for p in range(22):
        link(0, 1 + p)
    for i, B in enumerate(hexads):
        for p in B:
            link(1 + p, 23 + i)
        for j in range(i + 1, 77):
            if not (B & hexads[j]):
                link(23 + i, 23 + j)
    check_srg(adj, 22, 0, 6)  # the Higman-Sims graph

    gens = automorphism_group_gens(adj, 88704000, PermGroup)
    write_group(DATA / "hs2.grp",
                "HS.2, automorphism group of the Higman-Sims graph on 100 vertices\n"
                "graph built from the S(3,6,22) Witt design (binary Golay code)",
                100, 88704000, gens)


# -------------------------------------------------- U3(3) / Hall-Janko

class F9:
    """F9 = F3[t]/(t^2+1); elements encoded 0..8 as a + 3b for a + b t."""

    @staticmethod
    def add(x, y):
        return (x % 3 + y % 3) % 3 + 3 * ((x // 3 + y // 3) % 3)

    @staticmethod
    def neg(x):
        return (-x % 3) % 3 + 3 * ((-(x // 3)) % 3)

    @staticmethod
    def mul(x, y):
        a, b = x % 3, x // 3
        c, d = y % 3, y // 3
        return (a * c - b * d) % 3 + 3 * ((a * d + b * c) % 3)

    @staticmethod
    def conj(x):
        return x % 3 + 3 * ((-(x // 3)) % 3)

    @staticmethod
    def inv(x):
        nrm = F9.mul(x, F9.conj(x)) % 3  # norm lies in F3
        return F9.mul(F9.conj(x), [0, 1, 2][nrm])


def build_j22() -> None:
    f = F9

    def addn(xs):
        s = 0
        for x in xs:
            s = f.add(s, x)
        return s

    def herm(u, v):
        return addn([f.mul(a, f.conj(b)) for a, b in zip(u, v)])

    def normalize(v):
        for x in v:
            if x:
                iv = f.inv(x)
                return tuple(f.mul(iv, a) for a in v)
        return None

    pts = sorted({normalize(v) for v in itertools.product(range(9), repeat=3) if any(v)})
    assert len(pts) == 91
    noniso = [v for v in pts if herm(v, v) != 0]
    assert len(noniso) == 63
    idx = {v: i for i, v in enumerate(pts)}

    def reflection_matrix(v, lam):
        ihvv = f.inv(herm(v, v))
        cols = []
        for j in range(3):
            e = tuple(1 if k == j else 0 for k in range(3))
            coef = f.mul(f.mul(f.add(1, f.neg(lam)), herm(e, v)), ihvv)
            cols.append(tuple(f.add(a, f.neg(f.mul(coef, b))) for a, b in zip(e, v)))
        return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))

    def matvec(M, v):
        return tuple(addn([f.mul(M[i][j], v[j]) for j in range(3)]) for i in range(3))

    def perm_of(M):
        return Permutation([idx[normalize(matvec(M, v))] for v in pts])

    # unitary reflections generate the projective unitary group on 91 points
    ugens = [perm_of(reflection_matrix(v, lam)) for v in noniso[:8] for lam in (2, 3)]
    U = PermGroup(91, ugens)
    assert U.order() == 6048

    rng = random.Random(11)
    L = None
    while L is None:
        a = U.random_element(rng)
        if a.order() % 2:
            continue
        a = a ** (a.order() // 2)
        b = U.random_element(rng)
        if b.order() % 3:
            continue
        b = b ** (b.order() // 3)
        if (a * b).order() != 7:
            continue
        els = closure_cap([a, b], 169, 91)
        if els is not None and len(els) == 168:
            L = els

    # the 36 conjugates of PSL(2,7)
    states = {frozenset(e.key() for e in L): 0}
    slist = [L]
    frontier = [L]
    while frontier:
        nxt = []
        for st in frontier:
            for g in U.generators:
                c = [e.conjugate(g) for e in st]
                kk = frozenset(e.key() for e in c)
                if kk not in states:
                    states[kk] = len(slist)
                    slist.append(c)
                    nxt.append(c)
        frontier = nxt
    assert len(slist) == 36
    keysets = [frozenset(e.key() for e in st) for st in slist]

    ni_idx = sorted(idx[v] for v in noniso)
    ni_pos = {p: i for i, p in enumerate(ni_idx)}
    orb21 = []
    for st in slist:
        seen, o21 = set(), set()
        for p0 in ni_idx:
            if p0 in seen:
                continue
            orb = {int(e.images[p0]) for e in st}
            seen |= orb
            if len(orb) == 21:
                o21 |= orb
        assert len(o21) == 21
        orb21.append(o21)

    def tau(u, v):
        h = herm(u, v)
        nh = f.mul(h, f.conj(h)) % 3
        d = f.mul(herm(u, u), herm(v, v)) % 3
        return (nh * [0, 1, 2][d]) % 3

    # vertices: 0 the root, 1..36 the subgroups, 37..99 the nonisotropic points
    adj = [0] * 100

    def link(a, b):
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    for u in range(36):
        link(0, 1 + u)
        for w in range(u + 1, 36):
            if len(keysets[u] & keysets[w]) == 24:
                link(1 + u, 1 + w)
        for p in orb21[u]:
            link(1 + u, 37 + ni_pos[p])
    for i in range(63):
        for j in range(i + 1, 63):
            if tau(noniso[i], noniso[j]) == 2:
                link(37 + i, 37 + j)
    check_srg(adj, 36, 14, 12)  # the Hall-Janko graph

    gens = automorphism_group_gens(adj, 1209600, PermGroup, node_budget=500_000)
    write_group(DATA / "j22.grp",
                "J2.2, automorphism group of the Hall-Janko graph on 100 vertices\n"
                "graph built from PSL(2,7)-subgroups and nonisotropic points of U3(3)",
                100, 1209600, gens)


# ------------------------------------------------------------------- J1

def build_j1() -> None:
    p = 11
    Y = np.zeros((7, 7), dtype=np.int64)
    for i in range(7):
        Y[i, (i + 1) % 7] = 1
    Z = np.array([
        [-3, 2, -1, -1, -3, -1, -3],
        [-2, 1, 1, 3, 1, 3, 3],
        [-1, -1, -3, -1, -3, -3, 2],
        [-1, -3, -1, -3, -3, 2, -1],
        [-3, -1, -3, -3, 2, -1, -1],
        [1, 3, 3, -2, 1, 1, 3],
        [3, 3, -2, 1, 1, 3, 1]], dtype=np.int64) % p

    # order check of the matrix group itself
    seen = {np.eye(7, dtype=np.int8).tobytes()}
    frontier = [np.eye(7, dtype=np.int64)]
    while frontier:
        nxt = []
        for A in frontier:
            for G in (Y, Z):
                B = (A @ G) % p
                k = B.astype(np.int8).tobytes()
                if k not in seen:
                    seen.add(k)
                    nxt.append(B)
        frontier = nxt
    assert len(seen) == 175560, len(seen)

    def matord(A, cap=600):
        B = A.copy()
        I = np.eye(7, dtype=np.int64)
        for k in range(1, cap + 1):
            if (B == I).all():
                return k
            B = (B @ A) % p
        return None

    def normalize(v):
        v = v % p
        for x in v:
            if x % p:
                return tuple((v * pow(int(x), p - 2, p)) % p)
        return None

    # seed a projective orbit at the fixed point of an order-11 element
    rng = random.Random(7)
    while True:
        w = np.eye(7, dtype=np.int64)
        for _ in range(rng.randrange(3, 14)):
            w = (w @ (Y if rng.random() < 0.5 else Z)) % p
        o = matord(w)
        if o and o % 11 == 0:
            e = o // 11
            acc, base = np.eye(7, dtype=np.int64), w.copy()
            while e:
                if e & 1:
                    acc = (acc @ base) % p
                base = (base @ base) % p
                e >>= 1
            g11 = acc
            break

    M = ((g11 - np.eye(7, dtype=np.int64)) % p).T
    A = M.copy()
    r, pivots = 0, []
    for c in range(7):
        pr = next((rr for rr in range(r, 7) if A[rr, c] % p), None)
        if pr is None:
            continue
        A[[r, pr]] = A[[pr, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        for rr in range(7):
            if rr != r and A[rr, c] % p:
                A[rr] = (A[rr] - A[rr, c] * A[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(7) if c not in pivots]
    assert len(free) == 1
    v = np.zeros(7, dtype=np.int64)
    v[free[0]] = 1
    for i, pc in enumerate(pivots):
        v[pc] = (-A[i, free[0]]) % p

    orb = {normalize(v)}
    frontier = [v % p]
    while frontier:
        nxt = []
        for vv in frontier:
            for G in (Y, Z):
                wv = normalize(vv @ G)
                if wv not in orb:
                    orb.add(wv)
                    nxt.append(np.array(wv, dtype=np.int64))
        frontier = nxt
    pts = sorted(orb)
    assert len(pts) == 1596
    idx = {v: i for i, v in enumerate(pts)}

    def perm_of(G):
        return Permutation([idx[normalize(np.array(vv, dtype=np.int64) @ G)] for vv in pts])

    gy, gz = perm_of(Y), perm_of(Z)
    J = PermGroup(1596, [gy, gz])
    assert J.order() == 175560

    # PSL(2,11) by random (2,3)-generation; 266 conjugates give the small action
    rng2 = random.Random(20260811)
    L = None
    while L is None:
        a = J.random_element(rng2)
        if a.order() % 2:
            continue
        a = a ** (a.order() // 2)
        b = J.random_element(rng2)
        if b.order() % 3:
            continue
        b = b ** (b.order() // 3)
        if (a * b).order() != 11:
            continue
        els = closure_cap([a, b], 661, 1596)
        if els is not None and len(els) == 660:
            L = els

    import hashlib

    def key_of(arr):
        h = 0
        for row in arr:
            h ^= int.from_bytes(hashlib.blake2b(row.tobytes(), digest_size=16).digest(), "little")
        return h

    gens = [gy, gz]
    ginvs = [g.inverse() for g in gens]
    state0 = np.stack([e.images for e in L])
    states = {key_of(state0): 0}
    slist = [state0]
    frontier = [state0]
    while frontier:
        nxt = []
        for st in frontier:
            for g, gi in zip(gens, ginvs):
                conj = g.images[st[:, gi.images]]
                kk = key_of(conj)
                if kk not in states:
                    states[kk] = len(slist)
                    slist.append(conj)
                    nxt.append(conj)
        frontier = nxt
    assert len(slist) == 266

    def perm266(g, gi):
        return Permutation([states[key_of(g.images[st[:, gi.images]])] for st in slist])

    p1, p2 = perm266(gy, ginvs[0]), perm266(gz, ginvs[1])
    j266 = PermGroup(266, [p1, p2])
    assert j266.order() == 175560
    write_group(DATA / "j1.grp",
                "J1 on the 266 conjugates of a PSL(2,11) subgroup\n"
                "built from Janko's 7x7 generator matrices over F11",
                266, 175560, [p1, p2])


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    t0 = time.time()
    build_mathieu()
    build_hs2()
    build_j22()
    build_j1()
    print(f"all fixtures built in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
