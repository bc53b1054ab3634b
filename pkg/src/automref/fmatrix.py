"""Dense matrices over finite fields: rank, kernels, subspaces, group closure.

Matrices act on column vectors.  Subspaces are kept as reduced row-echelon
basis matrices (tuples of row tuples), so subspace equality is tuple equality.
Matrix groups are enumerated by breadth-first closure under a configurable
cap; everything at acceptance scale fits in a few thousand elements.
"""

from __future__ import annotations

from collections import Counter

from automref.ffield import FieldDesc


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"matrix-group enumeration exceeded cap {cap}")
        self.cap = cap


class Mat:
    """Immutable matrix over a FieldDesc; entries are field-element ints."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field: FieldDesc, rows):
        self.field = field
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self._hash = hash((field.p, field.n, self.rows))

    @staticmethod
    def identity(field: FieldDesc, n: int) -> "Mat":
        return Mat(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(field: FieldDesc, nrows: int, ncols: int) -> "Mat":
        return Mat(field, [[0] * ncols for _ in range(nrows)])

    @staticmethod
    def diagonal(field: FieldDesc, entries) -> "Mat":
        entries = list(entries)
        n = len(entries)
        return Mat(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __mul__(self, other: "Mat") -> "Mat":
        f = self.field
        if other.field != f or self.ncols != other.nrows:
            raise ValueError("incompatible matrix product")
        ocols = list(zip(*other.rows))
        rows = []
        for r in self.rows:
            row = []
            for c in ocols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            rows.append(row)
        return Mat(f, rows)

    def __add__(self, other: "Mat") -> "Mat":
        f = self.field
        return Mat(f, [[f.add(a, b) for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        f = self.field
        return Mat(f, [[f.sub(a, b) for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def scale(self, c: int) -> "Mat":
        f = self.field
        return Mat(f, [[f.mul(c, a) for a in r] for r in self.rows])

    def transpose(self) -> "Mat":
        return Mat(self.field, list(zip(*self.rows)))

    def apply(self, vec) -> tuple[int, ...]:
        f = self.field
        out = []
        for r in self.rows:
            acc = 0
            for a, b in zip(r, vec):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def is_identity(self) -> bool:
        return all(x == (1 if i == j else 0)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inverse() ** (-e)
        out = Mat.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def order(self, cap: int = 100_000) -> int:
        x = self
        for k in range(1, cap + 1):
            if x.is_identity():
                return k
            x = x * self
        raise RuntimeError("matrix order exceeds cap")

    def det(self) -> int:
        f = self.field
        a = [list(r) for r in self.rows]
        n = self.nrows
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = f.neg(d)
            d = f.mul(d, a[c][c])
            inv = f.inv(a[c][c])
            for r in range(c + 1, n):
                if a[r][c]:
                    m = f.mul(a[r][c], inv)
                    a[r] = [f.sub(x, f.mul(m, y)) for x, y in zip(a[r], a[c])]
        return d

    def inverse(self) -> "Mat":
        f = self.field
        n = self.nrows
        a = [list(r) + [1 if i == j else 0 for j in range(n)]
             for i, r in enumerate(self.rows)]
        r = 0
        for c in range(n):
            piv = next((rr for rr in range(r, n) if a[rr][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[r], a[piv] = a[piv], a[r]
            inv = f.inv(a[r][c])
            a[r] = [f.mul(inv, x) for x in a[r]]
            for rr in range(n):
                if rr != r and a[rr][c]:
                    m = a[rr][c]
                    a[rr] = [f.sub(x, f.mul(m, y)) for x, y in zip(a[rr], a[r])]
            r += 1
        return Mat(f, [row[n:] for row in a])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Mat({self.rows})"


# ---------------------------------------------------------------- echelon

def echelon(field: FieldDesc, vectors) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon basis of the span of the given vectors."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return ()
    ncols = len(rows[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    for v in rows:
        v = v[:]
        for bas, pc in zip(out, pivots):
            if v[pc]:
                c = v[pc]
                v = [field.sub(x, field.mul(c, y)) for x, y in zip(v, bas)]
        pc = next((i for i, x in enumerate(v) if x), None)
        if pc is None:
            continue
        inv = field.inv(v[pc])
        v = [field.mul(inv, x) for x in v]
        for bas, opc in zip(out, pivots):
            if bas[pc]:
                c = bas[pc]
                for i in range(ncols):
                    bas[i] = field.sub(bas[i], field.mul(c, v[i]))
        out.append(v)
        pivots.append(pc)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return tuple(tuple(out[i]) for i in order)


def rank(A: Mat) -> int:
    return len(echelon(A.field, A.rows))


def kernel_basis(A: Mat) -> tuple[tuple[int, ...], ...]:
    """Echelon basis of {v : A v = 0} (column-vector kernel)."""
    f = A.field
    rows = [list(r) for r in A.rows]
    ncols = A.ncols
    a = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((rr for rr in range(r, len(a)) if a[rr][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        for rr in range(len(a)):
            if rr != r and a[rr][c]:
                m = a[rr][c]
                a[rr] = [f.sub(x, f.mul(m, y)) for x, y in zip(a[rr], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(a[i][fc])
        basis.append(v)
    return echelon(f, basis)


def fixed_space(A: Mat) -> tuple[tuple[int, ...], ...]:
    """Kernel of (A - 1): the vectors fixed by A."""
    return kernel_basis(A - Mat.identity(A.field, A.nrows))


def in_span(field: FieldDesc, basis, vec) -> bool:
    return echelon(field, list(basis) + [vec]) == echelon(field, basis)


def intersect_spaces(field: FieldDesc, a, b):
    """Echelon basis of the intersection of two row-spanned subspaces."""
    if not a or not b:
        return ()
    ncols = len(a[0])
    # Zassenhaus: row-reduce [A|A; B|0], intersection read off the tail block
    rows = [list(v) + list(v) for v in a] + [list(v) + [0] * ncols for v in b]
    red = echelon(field, rows)
    out = [r[ncols:] for r in red if not any(r[:ncols])]
    return echelon(field, out)


# -------------------------------------------------------------- MatGroup

class MatGroup:
    """Matrix group by generators, with capped breadth-first enumeration."""

    def __init__(self, field: FieldDesc, dim: int, generators, name: str = ""):
        self.field = field
        self.dim = dim
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Mat):
                g = Mat(field, g)
            if g.nrows != dim or g.ncols != dim:
                raise ValueError("generator dimension mismatch")
            g.inverse()  # raises on singular input
            if g.is_identity() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self._elements: list[Mat] | None = None

    @property
    def identity(self) -> Mat:
        return Mat.identity(self.field, self.dim)

    def elements(self, cap: int = 2_000_000) -> list[Mat]:
        if self._elements is not None:
            return self._elements
        ident = self.identity
        found = {ident: None}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in found:
                        if len(found) >= cap:
                            raise EnumerationCapExceeded(cap)
                        found[y] = None
                        nxt.append(y)
            frontier = nxt
        self._elements = list(found)
        return self._elements

    def order(self, cap: int = 2_000_000) -> int:
        return len(self.elements(cap))

    def element_order_histogram(self, cap: int = 2_000_000) -> dict[int, int]:
        return dict(Counter(m.order() for m in self.elements(cap)))

    def __contains__(self, m: Mat) -> bool:
        return m in set(self.elements())

    def conjugate(self, t: Mat) -> "MatGroup":
        tinv = t.inverse()
        return MatGroup(self.field, self.dim,
                        [tinv * g * t for g in self.generators], name=self.name)

    def __repr__(self) -> str:
        label = self.name or f"dim {self.dim} over {self.field!r}"
        return f"MatGroup({label}, {len(self.generators)} gens)"


def enumerate_group(G: MatGroup, cap: int = 2_000_000) -> tuple[list[Mat], int]:
    els = G.elements(cap)
    return els, len(els)


# ------------------------------------------------- functorial constructions

def wedge_square(A: Mat) -> Mat:
    """Induced action on the exterior square, basis e_i ^ e_j (i < j, lex)."""
    if A.nrows != A.ncols:
        raise ValueError("wedge square needs a square matrix")
    f = A.field
    d = A.nrows
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    rows = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            # coefficient of e_i^e_j in A e_k ^ A e_l
            x = f.sub(f.mul(A.rows[i][k], A.rows[j][l]),
                      f.mul(A.rows[i][l], A.rows[j][k]))
            row.append(x)
        rows.append(row)
    return Mat(f, rows)


def contragredient(A: Mat) -> Mat:
    """Transpose inverse: the action on the dual module."""
    return A.inverse().transpose()
