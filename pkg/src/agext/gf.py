"""Exact arithmetic in GF(p^e) for odd p.

Elements are plain integers: the element ``sum(c_i * x^i)`` of
GF(p)[x]/(modulus) is stored as ``sum(c_i * p^i)``.  Index 0 is zero and
index 1 is one.  Every operation accepts Python ints or integer numpy arrays
and broadcasts over the latter.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 1 << 20
TABLE_LIMIT = 1024

# Conway polynomials, coefficients constant term first.  Their root x is
# primitive, so the generator is the element x (index p).
CANONICAL_MODULI = {
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _factor_set(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), lists constant-term first -----------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def _monic_polys(deg, p):
    for idx in range(p ** deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(idx % p)
            idx //= p
        yield coeffs + [1]


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    modulus = _trim(modulus)
    deg = len(modulus) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(modulus, f, p):
                return False
    return True


class Field:
    """GF(p^e) with a fixed modulus and generator.

    Multiplication goes through exp/log tables of size q.  Addition is
    digit-wise mod p on the base-p encoding; for q <= ``TABLE_LIMIT`` full
    q-by-q tables are also kept for the kernels.
    """

    def __init__(self, p: int, e: int, modulus, generator: int | None = None):
        if p % 2 == 0 or not is_prime(p):
            raise FieldError(f"p={p} is not an odd prime")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e}")
        q = p ** e
        if q > MAX_FIELD_SIZE:
            raise FieldError(f"field size {q} exceeds {MAX_FIELD_SIZE}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}")
        if e > 1 and not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = modulus
        self._pw = [p ** i for i in range(e)]
        if generator is None:
            generator = p if e > 1 else _least_primitive_root(p)
        self.generator = int(generator)
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _poly_mul_slow(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return a * b % p
        da = self._digits(a)
        db = self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod(prod, list(self.modulus), p) if len(_trim(prod)) > e else _trim(prod)
        return sum(c * self._pw[i] for i, c in enumerate(red))

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _build_tables(self):
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            if log[cur] != -1:
                raise FieldError(
                    f"generator {self.generator} is not primitive in GF({q})")
            exp[i] = cur
            log[cur] = i
            cur = self._poly_mul_slow(cur, self.generator)
        if cur != 1:
            raise FieldError(f"generator {self.generator} is not primitive")
        self.exp = exp
        self.log = log
        self._exp2 = np.concatenate([exp, exp])
        elems = np.arange(q, dtype=np.int64)
        self.digits = np.stack([(elems // pw) % self.p for pw in self._pw], axis=1)
        if q <= TABLE_LIMIT:
            self.add_table = self._add_vec(elems[:, None], elems[None, :])
            self.mul_table = self._mul_vec(elems[:, None], elems[None, :])
        else:
            self.add_table = None
            self.mul_table = None
        self.neg_table = self._neg_vec(elems)
        self.inv_table = np.zeros(q, dtype=np.int64)
        nz = elems[1:]
        self.inv_table[1:] = exp[(-log[nz]) % (q - 1)]

    # -- vectorised primitives ---------------------------------------------

    def _add_vec(self, a, b):
        p = self.p
        if self.e == 1:
            return (a + b) % p
        out = 0
        for pw in self._pw:
            out = out + (((a // pw) % p + (b // pw) % p) % p) * pw
        return out

    def _neg_vec(self, a):
        p = self.p
        if self.e == 1:
            return (-a) % p
        out = 0
        for pw in self._pw:
            out = out + ((-((a // pw) % p)) % p) * pw
        return out

    def _mul_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log[a]
        lb = self.log[b]
        out = self._exp2[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((la < 0) | (lb < 0), 0, out)

    # -- public arithmetic ---------------------------------------------------

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p and self.e == other.e
                and self.modulus == other.modulus and self.generator == other.generator)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus, self.generator))

    @property
    def theta(self) -> int:
        return self.generator

    def elements(self):
        return range(self.q)

    def check(self, a):
        arr = np.asarray(a)
        if np.any(arr < 0) or np.any(arr >= self.q):
            raise FieldError(f"element index out of range for GF({self.q})")
        return a

    def add(self, a, b):
        if self.add_table is not None:
            r = self.add_table[a, b]
        else:
            r = self._add_vec(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return _unbox(r)

    def neg(self, a):
        return _unbox(self.neg_table[a])

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def mul(self, a, b):
        if self.mul_table is not None:
            return _unbox(self.mul_table[a, b])
        return _unbox(self._mul_vec(a, b))

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return _unbox(self.inv_table[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        """Repeated squaring; works element-wise on arrays too."""
        if k < 0:
            a = self.inv(a)
            k = -k
        result = np.ones_like(np.asarray(a, dtype=np.int64))
        base = np.asarray(a, dtype=np.int64)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return _unbox(np.asarray(result))

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p)."""
        return n % self.p

    def power_of_theta(self, i: int) -> int:
        return int(self.exp[i % (self.q - 1)])

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        return (self.q - 1) // np.gcd(int(self.log[a]), self.q - 1)

    def sum(self, values) -> int:
        acc = 0
        for v in np.asarray(values).ravel():
            acc = self.add(acc, int(v))
        return int(acc)

    def is_square(self, a: int) -> bool:
        return a == 0 or int(self.log[a]) % 2 == 0

    def sqrt(self, a: int) -> int | None:
        """One square root of a, or None."""
        if a == 0:
            return 0
        la = int(self.log[a])
        if la % 2:
            return None
        return int(self.exp[la // 2])

    def format(self, a: int) -> str:
        if a < self.p:          # prime subfield
            return str(a)
        return f"t^{int(self.log[a])}"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


def _unbox(r):
    if isinstance(r, np.ndarray) and r.ndim == 0:
        return int(r)
    if isinstance(r, np.integer):
        return int(r)
    return r


def _least_primitive_root(p: int) -> int:
    fs = _factor_set(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fs):
            return g
    return 1  # p == 3 has 2; unreachable for odd primes > 2


def _find_primitive_modulus(p: int, e: int):
    q = p ** e
    fs = _factor_set(q - 1)
    for coeffs in _monic_polys(e, p):
        if coeffs[0] == 0 or not is_irreducible(coeffs, p):
            continue
        try:
            F = Field(p, e, coeffs)
        except FieldError:
            continue
        if all(F.pow(F.generator, (q - 1) // f) != 1 for f in fs):
            return tuple(coeffs)
    raise FieldError(f"internal fault: no primitive modulus for GF({p}^{e})")


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> Field:
    """Return GF(p^e) with the canonical modulus for (p, e)."""
    if p % 2 == 0 or not is_prime(p):
        raise FieldError(f"p={p} is not an odd prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if p ** e > MAX_FIELD_SIZE:
        raise FieldError(f"field size {p ** e} exceeds {MAX_FIELD_SIZE}")
    if e == 1:
        return Field(p, 1, (0, 1))
    modulus = CANONICAL_MODULI.get((p, e))
    if modulus is None:
        modulus = _find_primitive_modulus(p, e)
    return Field(p, e, modulus)


def field_from_json(obj: dict) -> Field:
    p, e = int(obj["p"]), int(obj["e"])
    canon = make_field(p, e)
    if tuple(obj.get("modulus", canon.modulus)) == canon.modulus:
        return canon
    return Field(p, e, obj["modulus"])
