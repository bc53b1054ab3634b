"""Group-theoretic algorithms on permutation groups.

Orbits with Schreier transversals drive everything: normalizers are set
stabilizers of a subgroup under conjugation (subgroup states are keyed by an
order-independent digest of their element arrays), centralizers are point
stabilizers on conjugacy classes, and Sylow subgroups grow by climbing
centralizers or normalizers of the current p-subgroup.  Stabilizer groups are
reconstructed from sampled Schreier generators; their orders are forced by
the orbit-stabilizer identity, so every result is self-checking.
"""

from __future__ import annotations

import hashlib
from random import Random

import numpy as np

from automref.perm import (ClosureCapExceeded, PermGroup, Permutation,
                           p_part_of_element, p_part_of_int)

DEFAULT_ORBIT_CAP = 5_000_000
SUBGROUP_KEY_LIMIT = 4096


class OrbitCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"orbit exceeded the configured cap of {cap} states")
        self.cap = cap


class SylowFailure(RuntimeError):
    """Randomized Sylow construction ran out of restarts; retry with a new seed."""


def _digest(data: bytes) -> int:
    return int.from_bytes(hashlib.blake2b(data, digest_size=16).digest(), "little")


# ----------------------------------------------------------------- actions

class ConjugateElement:
    """Conjugation action of G on one of its elements (a conjugacy class)."""

    def __init__(self, x: Permutation):
        self.seed = x.images

    @staticmethod
    def act(state: np.ndarray, g: Permutation, ginv: Permutation) -> np.ndarray:
        return g.images[state[ginv.images]]

    @staticmethod
    def key(state: np.ndarray) -> int:
        return _digest(state.tobytes())


class ConjugateSubgroup:
    """Conjugation action of G on a subgroup, given by its element array.

    The state is the (k x degree) array of non-identity element images; the
    key is the XOR of per-row digests, which is independent of row order, so
    no canonical sorting is needed.
    """

    def __init__(self, P: PermGroup, element_cap: int = SUBGROUP_KEY_LIMIT):
        els = P.elements(cap=element_cap)
        rows = [e.images for e in els if not e.is_identity()]
        if not rows:
            raise ValueError("trivial subgroup has no conjugation orbit worth computing")
        self.seed = np.stack(rows)

    @staticmethod
    def act(state: np.ndarray, g: Permutation, ginv: Permutation) -> np.ndarray:
        return g.images[state[:, ginv.images]]

    @staticmethod
    def key(state: np.ndarray) -> int:
        h = 0
        for row in state:
            h ^= _digest(row.tobytes())
        return h


# ------------------------------------------------------------------ orbits

class Orbit:
    """Breadth-first orbit of a state under a group action, with transversal.

    Stores only per-state parent pointers (parent index, generator index);
    transversal elements are reconstructed on demand, so memory stays small
    even for orbits with hundreds of thousands of states.
    """

    def __init__(self, group: PermGroup, seed, act, key,
                 cap: int = DEFAULT_ORBIT_CAP, check_action: bool = True,
                 rng: Random | None = None):
        self.group = group
        self.act = act
        self.key = key
        self.seed = seed
        self.gens = list(group.generators)
        if not self.gens:
            self.gens = [group.identity]
        self.ginvs = [g.inverse() for g in self.gens]
        if check_action:
            self._spot_check_action(rng or Random(1))

        self.index: dict[int, int] = {key(seed): 0}
        parents = [-1]
        genidx = [-1]
        frontier = [(0, seed)]
        while frontier:
            nxt = []
            for si, state in frontier:
                for j, (g, gi) in enumerate(zip(self.gens, self.ginvs)):
                    new = act(state, g, gi)
                    k = key(new)
                    if k not in self.index:
                        if len(parents) >= cap:
                            raise OrbitCapExceeded(cap)
                        self.index[k] = len(parents)
                        parents.append(si)
                        genidx.append(j)
                        nxt.append((len(parents) - 1, new))
            frontier = nxt
        self.parent = parents
        self.genidx = genidx

    def _spot_check_action(self, rng: Random) -> None:
        # (x g) h must equal x (g h) on a few samples
        if not self.group.generators:
            return
        for _ in range(3):
            g = rng.choice(self.group.generators)
            h = rng.choice(self.group.generators)
            lhs = self.act(self.act(self.seed, g, g.inverse()),
                           h, h.inverse())
            gh = g * h
            rhs = self.act(self.seed, gh, gh.inverse())
            if self.key(lhs) != self.key(rhs):
                raise ValueError("action callback is not a group action")

    def __len__(self) -> int:
        return len(self.parent)

    def rep(self, i: int) -> Permutation:
        """Transversal element u with seed^u = state i."""
        word = []
        while i > 0:
            word.append(self.genidx[i])
            i = self.parent[i]
        u = self.group.identity
        for j in reversed(word):
            u = u * self.gens[j]
        return u

    def state(self, i: int):
        u = self.rep(i)
        return self.act(self.seed, u, u.inverse())

    def schreier_generator(self, i: int, j: int) -> Permutation:
        u = self.rep(i)
        state = self.act(self.seed, u, u.inverse())
        moved = self.act(state, self.gens[j], self.ginvs[j])
        t = self.index[self.key(moved)]
        return u * self.gens[j] * self.rep(t).inverse()

    def stabilizer(self, expected_order: int | None = None,
                   rng: Random | None = None) -> PermGroup:
        """The stabilizer of the seed, from Schreier generators.

        With expected_order given (the orbit-stabilizer value), sampling stops
        as soon as the chain reaches it; otherwise every Schreier generator is
        sifted, which is exact but only sensible for moderate orbits.
        """
        rng = rng or Random(12345)
        n = len(self.parent)
        ngen = len(self.gens)
        degree = self.group.degree

        gens: list[Permutation] = []
        group = PermGroup.trivial(degree)

        def try_add(s: Permutation) -> None:
            nonlocal gens, group
            if s.is_identity() or group.contains(s):
                return
            gens = gens + [s]
            group = PermGroup(degree, gens)

        if expected_order is not None:
            budget = 64 * (1 + int(expected_order).bit_length())
            while group.order() != expected_order and budget > 0:
                budget -= 1
                i = rng.randrange(n)
                j = rng.randrange(ngen)
                try_add(self.schreier_generator(i, j))
        if expected_order is None or group.order() != expected_order:
            for i in range(n):
                for j in range(ngen):
                    try_add(self.schreier_generator(i, j))
                if expected_order is not None and group.order() == expected_order:
                    break
        if expected_order is not None and group.order() != expected_order:
            raise RuntimeError("stabilizer order mismatch: "
                               f"{group.order()} != {expected_order}")
        return group


def orbit_of_points(group: PermGroup, point: int,
                    cap: int = DEFAULT_ORBIT_CAP) -> list[int]:
    """Plain point orbit (no transversal bookkeeping)."""
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for g in group.generators:
                y = int(g.images[x])
                if y not in seen:
                    if len(seen) >= cap:
                        raise OrbitCapExceeded(cap)
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def point_orbit_data(group: PermGroup, point: int,
                     cap: int = DEFAULT_ORBIT_CAP) -> Orbit:
    """Orbit of a point with Schreier transversal and stabilizer access."""

    def act(state, g, gi):
        return int(g.images[state])

    return Orbit(group, point, act, lambda s: s, cap=cap, check_action=False)


# ----------------------------------------------------- normalizer/centralizer

def conjugation_orbit_of_subgroup(G: PermGroup, P: PermGroup,
                                  cap: int = DEFAULT_ORBIT_CAP) -> Orbit:
    action = ConjugateSubgroup(P)
    return Orbit(G, action.seed, action.act, action.key, cap=cap, check_action=False)


def normalizer_of_subgroup(G: PermGroup, P: PermGroup,
                           cap: int = DEFAULT_ORBIT_CAP,
                           rng: Random | None = None) -> PermGroup:
    """N_G(P): stabilizer of P (as a set) under conjugation."""
    if not P.generators:
        return G
    orbit = conjugation_orbit_of_subgroup(G, P, cap=cap)
    order_g = G.order()
    if order_g % len(orbit):
        raise RuntimeError("orbit size does not divide the group order")
    n = orbit.stabilizer(expected_order=order_g // len(orbit), rng=rng)
    n.name = f"N({P.name or 'P'})"
    return n


def centralizer_of_element(G: PermGroup, x: Permutation,
                           cap: int = DEFAULT_ORBIT_CAP,
                           rng: Random | None = None) -> PermGroup:
    if x.is_identity():
        return G
    action = ConjugateElement(x)
    orbit = Orbit(G, action.seed, action.act, action.key, cap=cap, check_action=False)
    order_g = G.order()
    if order_g % len(orbit):
        raise RuntimeError("class size does not divide the group order")
    return orbit.stabilizer(expected_order=order_g // len(orbit), rng=rng)


def centralizer_of_subgroup(G: PermGroup, P: PermGroup,
                            cap: int = DEFAULT_ORBIT_CAP,
                            rng: Random | None = None) -> PermGroup:
    """C_G(P) as the intersection of the generator centralizers."""
    C = G
    for x in P.generators:
        C = centralizer_of_element(C, x, cap=cap, rng=rng)
    C.name = f"C({P.name or 'P'})"
    return C


# ------------------------------------------------------------------- Sylow

def _extend_p_subgroup(ambient: PermGroup, gens: list[Permutation],
                       y: Permutation) -> PermGroup:
    Q = PermGroup(ambient.degree, gens + [y])
    Q.elements(cap=SUBGROUP_KEY_LIMIT)
    return Q

def sylow_subgroup(G: PermGroup, p: int, rng: Random | None = None,
                   restarts: int = 200, cap: int = DEFAULT_ORBIT_CAP) -> PermGroup:
    """A Sylow p-subgroup, by collecting p-parts and climbing normalizers.

    Randomized but verified: the returned group has exactly the p-part of |G|
    as its order.  Raises SylowFailure when the retry budget runs out.
    """
    rng = rng or Random(0)
    target = p_part_of_int(G.order(), p)
    if target == 1:
        return PermGroup.trivial(G.degree)

    for _ in range(restarts):
        x = G.identity
        for _ in range(64):
            x = p_part_of_element(G.random_element(rng), p)
            if not x.is_identity():
                break
        if x.is_identity():
            continue
        Q = PermGroup(G.degree, [x])
        Q.elements(cap=SUBGROUP_KEY_LIMIT)
        try:
            Q = _grow_by_centralizers(G, Q, p, target, rng, cap)
            if Q.order() < target:
                Q = _grow_by_normalizers(G, Q, p, target, rng, cap)
        except ClosureCapExceeded:
            continue
        if Q.order() == target:
            Q.name = f"Sylow_{p}"
            return Q
    raise SylowFailure(f"could not reach a Sylow {p}-subgroup of order {target}; "
                       "rerun with a different seed")


def _grow_by_centralizers(G, Q, p, target, rng, cap):
    # inside C_G(Q) every p-part commutes with Q, so <Q, y> stays a p-group;
    # this always reaches the top when the Sylow subgroup is abelian
    C = G
    for x in Q.generators:
        C = centralizer_of_element(C, x, cap=cap, rng=rng)
    while Q.order() < target:
        y = None
        for _ in range(96):
            cand = p_part_of_element(C.random_element(rng), p)
            if not cand.is_identity() and not Q.contains(cand):
                y = cand
                break
        if y is None:
            return Q
        Q = _extend_p_subgroup(G, Q.generators, y)
        C = centralizer_of_element(C, y, cap=cap, rng=rng)
    return Q


def _grow_by_normalizers(G, Q, p, target, rng, cap):
    # general climb: Q < P forces a p-element of N_G(Q) outside Q
    while Q.order() < target:
        N = normalizer_of_subgroup(G, Q, cap=cap, rng=rng)
        y = None
        for _ in range(256):
            cand = p_part_of_element(N.random_element(rng), p)
            if not cand.is_identity() and not Q.contains(cand):
                y = cand
                break
        if y is None:
            return Q
        Q = _extend_p_subgroup(G, Q.generators, y)
    return Q


# --------------------------------------------------------- abelian structure

class AbelianPStructure:
    """Invariant decomposition of an abelian p-group of permutations."""

    def __init__(self, group: PermGroup, p: int, exponents: tuple[int, ...],
                 basis: list[Permutation], omega1: PermGroup,
                 omega1_basis: list[Permutation]):
        self.group = group
        self.p = p
        self.exponents = exponents
        self.basis = basis
        self.omega1 = omega1
        self.omega1_basis = omega1_basis

    @property
    def homocyclic(self) -> bool:
        return len(set(self.exponents)) <= 1

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def __repr__(self) -> str:
        parts = " x ".join(f"Z/{self.p}^{e}" for e in self.exponents)
        return f"AbelianPStructure({parts})"


def _abelian_basis(elements: list[Permutation], p: int) -> list[tuple[Permutation, int]]:
    """Independent generators (with p-exponents) of an abelian p-group.

    Works on the full element list: split off a maximal-order cyclic factor,
    recurse on the quotient (cosets with canonical minimal representatives),
    and lift quotient generators to elements of unchanged order.
    """
    by_key = {e.key(): e for e in elements}
    if len(elements) == 1:
        return []

    mult = lambda a, b: (by_key[a] * by_key[b]).key()
    ident = next(e for e in elements if e.is_identity()).key()

    def order_of(k: int | bytes) -> int:
        n, x = 1, k
        while x != ident:
            x = mult(x, k)
            n += 1
        return n

    def support(k: bytes) -> int:
        e = by_key[k]
        return int((e.images != np.arange(e.degree)).sum())

    orders = {e.key(): order_of(e.key()) for e in elements}
    # maximal order first; prefer small support so block structure survives
    max_order = max(orders.values())
    gkey = min((k for k, o in orders.items() if o == max_order),
               key=lambda k: (support(k), k))
    g = by_key[gkey]
    og = orders[gkey]

    # cosets modulo <g>
    powers = [ident]
    x = gkey
    while x != ident:
        powers.append(x)
        x = mult(x, gkey)
    rep: dict[bytes, bytes] = {}
    cosets: dict[bytes, list[bytes]] = {}
    for e in elements:
        k = e.key()
        if k in rep:
            continue
        coset = sorted(mult(k, h) for h in powers)
        r = coset[0]
        cosets[r] = coset
        for y in coset:
            rep[y] = r

    def exp_of(o: int) -> int:
        e = 0
        while o > 1:
            o //= p
            e += 1
        return e

    out = [(g, exp_of(og))]
    if len(cosets) > 1:
        # recurse on the quotient via coset representatives
        class _Coset:
            __slots__ = ("r",)

            def __init__(self, r):
                self.r = r

        qident = rep[ident]

        def qmult(a, b):
            return rep[mult(a, b)]

        def qorder(a):
            n, x = 1, a
            while x != qident:
                x = qmult(x, a)
                n += 1
            return n

        sub = _quotient_basis(sorted(cosets), qmult, qident, qorder, p)
        for qgen_rep, e in sub:
            want = p ** e
            cands = [c for c in cosets[qgen_rep] if orders[c] == want]
            if not cands:
                raise RuntimeError("no order-preserving lift; input not abelian?")
            out.append((by_key[min(cands, key=lambda k: (support(k), k))], e))
    return out


def _quotient_basis(keys, mult, ident, order_of, p):
    if len(keys) == 1:
        return []
    orders = {k: order_of(k) for k in keys}
    gkey = max(orders, key=lambda k: (orders[k], k))
    og = orders[gkey]

    powers = [ident]
    x = gkey
    while x != ident:
        powers.append(x)
        x = mult(x, gkey)
    rep = {}
    cosets = {}
    for k in keys:
        if k in rep:
            continue
        coset = sorted(mult(k, h) for h in powers)
        r = coset[0]
        cosets[r] = coset
        for y in coset:
            rep[y] = r

    e = 0
    o = og
    while o > 1:
        o //= p
        e += 1
    out = [(gkey, e)]
    if len(cosets) > 1:
        qident = rep[ident]
        qmult = lambda a, b: rep[mult(a, b)]

        def qorder(a):
            n, x = 1, a
            while x != qident:
                x = qmult(x, a)
                n += 1
            return n

        for qr, ee in _quotient_basis(sorted(cosets), qmult, qident, qorder, p):
            want = p ** ee
            lift = next(c for c in cosets[qr] if orders[c] == want)
            out.append((lift, ee))
    return out


def abelian_structure(P: PermGroup, p: int,
                      element_cap: int = SUBGROUP_KEY_LIMIT) -> AbelianPStructure:
    """Invariant exponents, realizing generators and Omega_1 of an abelian p-group."""
    if not P.is_abelian():
        raise ValueError("input group is not abelian")
    els = P.elements(cap=element_cap)
    n = len(els)
    m = n
    while m % p == 0:
        m //= p
    if m != 1:
        raise ValueError(f"group order {n} is not a power of {p}")

    pairs = _abelian_basis(els, p)
    pairs.sort(key=lambda t: -t[1])
    basis = [g for g, _ in pairs]
    exponents = tuple(e for _, e in pairs)

    # hard verification: the basis must span the group freely
    current = [P.identity]
    for g, e in pairs:
        new = []
        for x in current:
            y = x
            new.append(y)
            for _ in range(p ** e - 1):
                y = y * g
                new.append(y)
        current = new
    if len({x.key() for x in current}) != n:
        raise RuntimeError("abelian basis failed to span the group")

    om_gens = [g ** (p ** (e - 1)) for g, e in pairs]
    omega1 = PermGroup(P.degree, om_gens, name="Omega1")
    if omega1.order() != p ** len(pairs):
        raise RuntimeError("Omega_1 has unexpected order")
    return AbelianPStructure(P, p, exponents, basis, omega1, om_gens)


# ------------------------------------------------------------ constructions

def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = []
    if n >= 2:
        gens.append(Permutation(list(range(1, n)) + [0]))
        gens.append(Permutation([1, 0] + list(range(2, n))))
    return PermGroup(n, gens, name=f"Sym({n})")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = []
    if n >= 3:
        gens.append(parse_cycle_ints([(0, 1, 2)], n))
        if n > 3:
            if n % 2:
                gens.append(Permutation(list(range(1, n)) + [0]))
            else:
                gens.append(Permutation([0] + list(range(2, n)) + [1]))
    return PermGroup(n, gens, name=f"Alt({n})")


def parse_cycle_ints(cycles, degree: int) -> Permutation:
    images = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:]):
            images[a] = b
        images[cyc[-1]] = cyc[0]
    return Permutation(images)


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    d = A.degree + B.degree
    gens = []
    for g in A.generators:
        gens.append(Permutation(list(g.images) + list(range(A.degree, d))))
    for g in B.generators:
        gens.append(Permutation(list(range(A.degree)) + [A.degree + int(x) for x in g.images]))
    return PermGroup(d, gens, name=f"({A.name or 'A'}) x ({B.name or 'B'})")


def wreath_product(A: PermGroup, r: int) -> PermGroup:
    """A wr Sym(r) in the imprimitive action on r blocks of A's points."""
    if r < 1:
        raise ValueError("r must be >= 1")
    d = A.degree * r
    gens = []
    for g in A.generators:
        gens.append(Permutation(list(g.images) + list(range(A.degree, d))))
    if r >= 2:
        swap = list(range(d))
        for i in range(A.degree):
            swap[i], swap[A.degree + i] = A.degree + i, i
        gens.append(Permutation(swap))
        if r > 2:
            rot = [(i + A.degree) % d for i in range(d)]
            gens.append(Permutation(rot))
    return PermGroup(d, gens, name=f"({A.name or 'A'}) wr Sym({r})")
