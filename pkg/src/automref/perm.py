"""Permutations and permutation groups with stabilizer chains.

Permutations are stored as 0-based image arrays; the textual cycle format
used by generator files is 1-based (atlas convention).  Groups carry a lazily
built Schreier-Sims stabilizer chain with a deterministic base rule (smallest
moved point first) and a verification sweep over all Schreier generators, so
order and membership results are exact.
"""

from __future__ import annotations

import re
from functools import reduce
from math import gcd
from random import Random

import numpy as np

_POINT_DTYPE = np.int32


class PermError(ValueError):
    """Malformed permutation input or degree mismatch."""


class ChainSizeExceeded(RuntimeError):
    """Stabilizer chain grew past the configured resource cap."""


class ClosureCapExceeded(RuntimeError):
    """Element enumeration exceeded the configured cap."""


class Permutation:
    """A bijection of {0, ..., degree-1}, stored as its image array."""

    __slots__ = ("images", "_bytes", "_hash")

    def __init__(self, images):
        arr = np.asarray(images, dtype=_POINT_DTYPE)
        if arr.ndim != 1:
            raise PermError("image array must be one-dimensional")
        arr = arr.copy()
        arr.setflags(write=False)
        self.images = arr
        self._bytes = arr.tobytes()
        self._hash = hash(self._bytes)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(np.arange(degree, dtype=_POINT_DTYPE))

    @staticmethod
    def from_images_unchecked(arr: np.ndarray) -> "Permutation":
        p = object.__new__(Permutation)
        arr.setflags(write=False)
        p.images = arr
        p._bytes = arr.tobytes()
        p._hash = hash(p._bytes)
        return p

    def validate(self) -> None:
        n = self.degree
        seen = np.zeros(n, dtype=bool)
        if self.images.min(initial=0) < 0 or self.images.max(initial=-1) >= n:
            raise PermError("image out of range")
        seen[self.images] = True
        if not seen.all():
            raise PermError("image array is not a bijection")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        # left-to-right composition: (p*q)(x) = q(p(x))
        if other.degree != self.degree:
            raise PermError("degree mismatch in product")
        return Permutation.from_images_unchecked(other.images[self.images])

    def inverse(self) -> "Permutation":
        inv = np.empty(self.degree, dtype=_POINT_DTYPE)
        inv[self.images] = np.arange(self.degree, dtype=_POINT_DTYPE)
        return Permutation.from_images_unchecked(inv)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        ginv = g.inverse()
        return Permutation.from_images_unchecked(g.images[self.images[ginv.images]])

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def is_identity(self) -> bool:
        return bool((self.images == np.arange(self.degree)).all())

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(self.images[start])
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = int(self.images[x])
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        # via cycle type; exact and cheap at these degrees
        return reduce(lambda a, b: a * b // gcd(a, b), (len(c) for c in self.cycles()), 1)

    def cycle_type(self) -> tuple[int, ...]:
        lengths = sorted(len(c) for c in self.cycles(include_fixed=True))
        return tuple(lengths)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._bytes == other._bytes

    def __hash__(self) -> int:
        return self._hash

    def key(self) -> bytes:
        return self._bytes

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)})"


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation (1-based points) or a 0-based image list.

    Accepted forms: ``"(1,2,3)(4,5)"``, ``"()"`` for the identity, and
    ``"[1,0,2]"`` for an explicit image array.
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise PermError(f"unterminated image list: {text!r}")
        body = text[1:-1].strip()
        images = [int(t) for t in re.split(r"[,\s]+", body) if t] if body else []
        if len(images) != degree:
            raise PermError("image list length does not match degree")
        p = Permutation(images)
        p.validate()
        return p
    if not text or not text.startswith("("):
        raise PermError(f"cannot parse permutation: {text!r}")
    images = np.arange(degree, dtype=_POINT_DTYPE)
    pos = 0
    seen_points: set[int] = set()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise PermError(f"unexpected character {text[pos]!r} in {text!r}")
        close = text.find(")", pos)
        if close < 0:
            raise PermError(f"unbalanced parentheses in {text!r}")
        body = text[pos + 1:close].strip()
        pos = close + 1
        if not body:
            continue
        pts = []
        for tok in re.split(r"[,\s]+", body):
            if not tok:
                continue
            pt = int(tok) - 1  # file format is 1-based
            if pt < 0 or pt >= degree:
                raise PermError(f"point {pt + 1} out of range for degree {degree}")
            if pt in seen_points:
                raise PermError(f"point {pt + 1} repeated in {text!r}")
            seen_points.add(pt)
            pts.append(pt)
        for a, b in zip(pts, pts[1:]):
            images[a] = b
        images[pts[-1]] = pts[0]
    return Permutation.from_images_unchecked(images)


def format_cycles(p: Permutation) -> str:
    """Render a permutation in 1-based cycle notation."""
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycs)


class _ChainLevel:
    """One level of a stabilizer chain: base point and Schreier transversal."""

    __slots__ = ("base", "transversal", "inv_transversal")

    def __init__(self, base: int):
        self.base = base
        # transversal[x] = u with u(base) = x ; inv_transversal[x] = u^-1
        self.transversal: dict[int, Permutation] = {}
        self.inv_transversal: dict[int, Permutation] = {}

    def rebuild(self, gens: list[Permutation], identity: Permutation) -> None:
        self.transversal = {self.base: identity}
        self.inv_transversal = {self.base: identity}
        frontier = [self.base]
        while frontier:
            nxt = []
            for x in frontier:
                ux = self.transversal[x]
                for g in gens:
                    y = int(g.images[x])
                    if y not in self.transversal:
                        uy = ux * g
                        self.transversal[y] = uy
                        self.inv_transversal[y] = uy.inverse()
                        nxt.append(y)
            frontier = nxt


class StabilizerChain:
    """Deterministic Schreier-Sims chain; base rule: smallest moved point first.

    One global strong set is kept; level i uses the subset fixing the first i
    base points.  Sweeps add stripped Schreier residues until a full sweep
    finds none, so the terminal sweep doubles as the verification pass.
    """

    def __init__(self, degree: int, generators: list[Permutation], max_size: int | None = None):
        self.degree = degree
        self.identity = Permutation.identity(degree)
        self.levels: list[_ChainLevel] = []
        self.strong: list[Permutation] = []
        self.max_size = max_size
        for g in generators:
            if not g.is_identity():
                self.strong.append(g)
        self._build()

    # -- construction -------------------------------------------------

    def _level_gens(self, i: int) -> list[Permutation]:
        bases = [lvl.base for lvl in self.levels[:i]]
        return [s for s in self.strong if all(int(s.images[b]) == b for b in bases)]

    def _ensure_base_coverage(self) -> None:
        # every strong generator must move some base point
        for s in self.strong:
            if all(int(s.images[lvl.base]) == lvl.base for lvl in self.levels):
                moved = int(np.nonzero(s.images != np.arange(self.degree))[0][0])
                self.levels.append(_ChainLevel(moved))

    def _rebuild_orbits(self) -> None:
        size = 0
        for i, lvl in enumerate(self.levels):
            lvl.rebuild(self._level_gens(i), self.identity)
            size += len(lvl.transversal)
        if self.max_size is not None and size * self.degree > self.max_size:
            raise ChainSizeExceeded(f"stabilizer chain exceeded cap {self.max_size}")

    def _strip(self, p: Permutation, start: int = 0) -> Permutation:
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            x = int(p.images[lvl.base])
            if x == lvl.base:
                continue
            u_inv = lvl.inv_transversal.get(x)
            if u_inv is None:
                return p
            p = p * u_inv
        return p

    def _build(self) -> None:
        self._ensure_base_coverage()
        self._rebuild_orbits()
        while True:
            residue = self._find_missing_residue()
            if residue is None:
                break
            self.strong.append(residue)
            self._ensure_base_coverage()
            self._rebuild_orbits()

    def _find_missing_residue(self) -> Permutation | None:
        """Scan all Schreier generators, deepest level first; return the first
        one that does not strip to the identity (the verification condition)."""
        for i in range(len(self.levels) - 1, -1, -1):
            lvl = self.levels[i]
            gens = self._level_gens(i)
            for x in sorted(lvl.transversal):
                ux = lvl.transversal[x]
                for g in gens:
                    y = int(g.images[x])
                    schreier = ux * g * lvl.inv_transversal[y]
                    if schreier.is_identity():
                        continue
                    residue = self._strip(schreier, i + 1)
                    if not residue.is_identity():
                        return residue
        return None

    # -- queries -------------------------------------------------------

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.transversal)
        return n

    def base(self) -> list[int]:
        return [lvl.base for lvl in self.levels]

    def fundamental_orbits(self) -> list[int]:
        return [len(lvl.transversal) for lvl in self.levels]

    def contains(self, p: Permutation) -> bool:
        return self._strip(p).is_identity()

    def random_element(self, rng: Random) -> Permutation:
        g = self.identity
        for lvl in reversed(self.levels):
            x = rng.choice(list(lvl.transversal))
            g = g * lvl.transversal[x]
        return g

    def strong_generators(self) -> list[Permutation]:
        return list(self.strong)


class PermGroup:
    """A permutation group given by generators, with a lazy stabilizer chain."""

    def __init__(self, degree: int, generators, name: str = "", chain_cap: int | None = None):
        self.degree = degree
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise PermError("generator degree mismatch")
            if g.is_identity() or g.key() in seen:
                continue
            seen.add(g.key())
            gens.append(g)
        self.generators = gens
        self.name = name
        self.chain_cap = chain_cap
        self._chain: StabilizerChain | None = None
        self._elements: list[Permutation] | None = None

    @staticmethod
    def trivial(degree: int) -> "PermGroup":
        return PermGroup(degree, [])

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators, self.chain_cap)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise PermError("degree mismatch in membership test")
        return self.chain.contains(p)

    def random_element(self, rng: Random | None = None) -> Permutation:
        """Uniform random element, sampled through the stabilizer chain."""
        rng = rng or Random()
        return self.chain.random_element(rng)

    def elements(self, cap: int = 2_000_000) -> list[Permutation]:
        """All elements by breadth-first closure of the generators."""
        if self._elements is not None:
            return self._elements
        ident = self.identity
        found = {ident.key(): ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y.key() not in found:
                        if len(found) >= cap:
                            raise ClosureCapExceeded(f"element closure exceeded cap {cap}")
                        found[y.key()] = y
                        nxt.append(y)
            frontier = nxt
        self._elements = list(found.values())
        return self._elements

    def is_abelian(self) -> bool:
        gens = self.generators
        return all((a * b) == (b * a) for i, a in enumerate(gens) for b in gens[i:])

    def subgroup(self, generators, name: str = "") -> "PermGroup":
        return PermGroup(self.degree, generators, name=name)

    def __repr__(self) -> str:
        label = self.name or f"degree {self.degree}, {len(self.generators)} gens"
        return f"PermGroup({label})"


def p_part_of_element(g: Permutation, p: int) -> Permutation:
    """The p-part of g: the power of g with p-power order commuting with g."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    n = g.order()
    m = n
    while m % p == 0:
        m //= p
    return g ** m


def p_part_of_int(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q
