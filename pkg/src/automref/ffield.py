"""Finite fields F_{p^n} with an explicit irreducible modulus.

Elements are integers 0 .. p^n - 1 encoding coefficient vectors in base p,
low-degree digit first, so the element a0 + a1*x + ... corresponds to
a0 + a1*p + ... .  The canonical modulus returned by field() is the monic
irreducible polynomial of degree n whose encoded integer is smallest.
Fields of interest here have at most a few hundred elements, so full
multiplication and inverse tables are precomputed.
"""

from __future__ import annotations

from functools import lru_cache

_TABLE_LIMIT = 1024  # precompute op tables up to this field size


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def _poly_rem(a: list[int], mod: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(mod) - 1
    lead_inv = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        if a[-1]:
            c = a[-1] * lead_inv % p
            off = len(a) - 1 - dm
            for i, mi in enumerate(mod):
                a[off + i] = (a[off + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_rem(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility over F_p; roots for degree <= 3, Frobenius gcds beyond."""
    n = len(coeffs) - 1
    if n <= 0 or coeffs[-1] % p == 0:
        return False
    if n == 1:
        return True
    if coeffs[0] % p == 0:
        return False  # divisible by x
    if n <= 3:
        return all(sum(c * pow(a, i, p) for i, c in enumerate(coeffs)) % p
                   for a in range(p))

    def minus_x(poly: list[int]) -> list[int]:
        out = poly + [0] * max(0, 2 - len(poly))
        out[1] = (out[1] - 1) % p
        return _poly_trim(out)

    # x^(p^n) = x mod f, and gcd(x^(p^(n/t)) - x, f) = 1 for prime t | n
    if minus_x(_poly_powmod([0, 1], p ** n, coeffs, p)):
        return False
    t, m = 2, n
    while m > 1:
        if m % t == 0:
            diff = minus_x(_poly_powmod([0, 1], p ** (n // t), coeffs, p))
            if len(_poly_gcd(coeffs, diff, p)) - 1 > 0:
                return False
            while m % t == 0:
                m //= t
        t += 1
    return True


class FieldDesc:
    """F_{p^n} described by a monic irreducible modulus over F_p."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if len(modulus) != n + 1 or modulus[-1] % p != 1:
            raise ValueError("modulus must be monic of degree n")
        if not is_irreducible(list(modulus), p):
            raise ValueError("modulus is reducible")
        self.p = p
        self.n = n
        self.modulus = tuple(c % p for c in modulus)
        self.size = p ** n
        self._mul_table = None
        self._inv_table = None
        if self.size <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding ------------------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, coeffs) -> int:
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.p + (c % self.p)
        return a

    # -- arithmetic ------------------------------------------------------

    def _build_tables(self):
        q = self.size
        tbl = [0] * (q * q)
        for a in range(q):
            ca = self.coeffs(a)
            for b in range(a, q):
                prod = _poly_mulmod(ca, self.coeffs(b), list(self.modulus), self.p)
                v = self.encode(prod + [0] * self.n)
                tbl[a * q + b] = v
                tbl[b * q + a] = v
        self._mul_table = tbl
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if tbl[a * q + b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    def add(self, a: int, b: int) -> int:
        p = self.p
        out, mult = 0, 1
        for _ in range(self.n):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out, mult = 0, 1
        for _ in range(self.n):
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a * self.size + b]
        prod = _poly_mulmod(self.coeffs(a), self.coeffs(b), list(self.modulus), self.p)
        return self.encode(prod + [0] * self.n)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.size - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def elements(self):
        return range(self.size)

    # -- misc ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldDesc)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.n, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                xp = "x" if i == 1 else f"x^{i}"
                terms.append(xp if c == 1 else f"{c}{xp}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        if self.n == 1:
            return f"F{self.p}"
        return f"F{self.p}^{self.n}({self.modulus_str()})"


@lru_cache(maxsize=None)
def field(p: int, n: int = 1) -> FieldDesc:
    """The field F_{p^n} with the canonical (smallest-encoded) modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return FieldDesc(p, 1, (0, 1))
    for enc in range(p ** n):
        coeffs = []
        a = enc
        for _ in range(n):
            coeffs.append(a % p)
            a //= p
        coeffs.append(1)  # monic
        if is_irreducible(coeffs, p):
            return FieldDesc(p, n, tuple(coeffs))
    raise RuntimeError("no irreducible polynomial found")  # unreachable
