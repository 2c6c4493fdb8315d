"""Finite fields GF(p^m) with canonical integer element representation.

An element is packed as the integer sum(c_i * p**i) of its polynomial
coefficients over the prime subfield; for m == 1 this is just the residue.
Extension fields up to 2**16 elements carry discrete-log tables (built once
at construction) so that the matrix kernels and vectorized helpers can
multiply by table lookup.  Larger extension fields fall back to direct
polynomial arithmetic, which is slow but exact.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DivideByZero,
    FieldMismatch,
    NonPrimeCharacteristic,
    ReduciblePolynomial,
)

_TABLE_LIMIT = 1 << 16
# np_matmul for prime fields relies on (a @ b) % p in int64
_PRIME_MATMUL_LIMIT = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int):
    """Return (p, m) with n == p**m, or None if n is not a prime power."""
    if n < 2:
        return None
    if is_prime(n):
        return (n, 1)
    p = 2
    while p * p <= n:
        if n % p == 0:
            m = 0
            v = n
            while v % p == 0:
                v //= p
                m += 1
            return (p, m) if v == 1 and is_prime(p) else None
        p += 1 if p == 2 else 2
    return None


class FiniteField:
    """GF(p^m) with verified-irreducible reduction polynomial for m > 1."""

    __slots__ = ("p", "m", "q", "poly", "_exp", "_log")

    def __init__(self, p: int, m: int = 1, poly=None):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.p = int(p)
        self.m = int(m)
        self.q = self.p ** self.m
        if m == 1:
            if poly is not None:
                raise ValueError("prime fields take no reduction polynomial")
            self.poly = None
            self._exp = np.empty(0, dtype=np.int64)
            self._log = np.empty(0, dtype=np.int64)
            return
        if poly is None:
            poly = self._least_irreducible()
        else:
            poly = tuple(int(c) % p for c in poly)
            if len(poly) != m + 1 or poly[m] != 1:
                raise ValueError(f"reduction polynomial must be monic of degree {m}")
            if not self._is_irreducible(poly):
                raise ReduciblePolynomial(f"{poly} is reducible over GF({p})")
        self.poly = poly
        if self.q <= _TABLE_LIMIT:
            self._exp, self._log = self._build_tables()
        else:
            self._exp = np.empty(0, dtype=np.int64)
            self._log = np.empty(0, dtype=np.int64)

    # -- construction helpers -------------------------------------------

    def _poly_divides(self, g, f):
        """True if monic polynomial g divides f (coefficient tuples, low first)."""
        p = self.p
        f = list(f)
        dg = len(g) - 1
        while len(f) - 1 >= dg:
            if f[-1] == 0:
                f.pop()
                continue
            lead = f[-1]
            shift = len(f) - 1 - dg
            for i, c in enumerate(g):
                f[shift + i] = (f[shift + i] - lead * c) % p
            f.pop()
        return all(c == 0 for c in f)

    def _is_irreducible(self, poly):
        # trial division by all monic polynomials of degree 1..m//2; fine for
        # the desk-scale fields this package targets (q <= 2**16 typical)
        p, m = self.p, self.m
        if poly[0] == 0:
            return False
        for deg in range(1, m // 2 + 1):
            for packed in range(p ** deg):
                g = _unpack(packed, p, deg) + [1]
                if self._poly_divides(g, poly):
                    return False
        return True

    def _least_irreducible(self):
        p, m = self.p, self.m
        for packed in range(p ** m):
            cand = tuple(_unpack(packed, p, m) + [1])
            if self._is_irreducible(cand):
                return cand
        raise ReduciblePolynomial(f"no irreducible polynomial found for GF({p}^{m})")

    def _build_tables(self):
        q = self.q
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        g = self._find_generator()
        x = 1
        for i in range(q - 1):
            exp[i] = x
            exp[i + q - 1] = x
            log[x] = i
            x = self._poly_mul_packed(x, g)
        if x != 1:
            raise ReduciblePolynomial(
                f"reduction polynomial {self.poly} is not irreducible over GF({self.p})"
            )
        return exp, log

    def _find_generator(self):
        q = self.q
        factors = _prime_factors(q - 1)
        for cand in range(self.p, q):  # x itself is packed as p; start there
            if all(self._pow_packed(cand, (q - 1) // f) != 1 for f in factors):
                return cand
        for cand in range(2, q):
            if all(self._pow_packed(cand, (q - 1) // f) != 1 for f in factors):
                return cand
        raise ReduciblePolynomial(f"no multiplicative generator in GF({q})")

    # -- scalar arithmetic on canonical integers ------------------------

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return _digitwise(a, b, self.p, self.m, +1)

    def sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return _digitwise(a, b, self.p, self.m, -1)

    def neg(self, a):
        return self.sub(0, a)

    def mul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp.size:
            return int(self._exp[self._log[a] + self._log[b]])
        return self._poly_mul_packed(a, b)

    def inv(self, a):
        if a == 0:
            raise DivideByZero("0 has no multiplicative inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp.size:
            return int(self._exp[(self.q - 1) - self._log[a]])
        return self._pow_packed(a, self.q - 2)

    def div(self, a, b):
        if b == 0:
            raise DivideByZero("division by 0")
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.m == 1:
            return pow(a, e, self.p)
        return self._pow_packed(a, e)

    def _poly_mul_packed(self, a, b):
        p, m = self.p, self.m
        da = _unpack(a, p, m)
        db = _unpack(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        # reduce modulo the reduction polynomial
        for deg in range(2 * m - 2, m - 1, -1):
            lead = prod[deg]
            if lead:
                prod[deg] = 0
                for i in range(m):
                    prod[deg - m + i] = (prod[deg - m + i] - lead * self.poly[i]) % p
        return _pack(prod[:m], p)

    def _pow_packed(self, a, e):
        r = 1
        b = a
        while e > 0:
            if e & 1:
                r = self._poly_mul_packed(r, b) if self.m > 1 else r * b % self.p
            b = self._poly_mul_packed(b, b) if self.m > 1 else b * b % self.p
            e >>= 1
        return r

    # -- vectorized arithmetic (numpy int64 arrays) ----------------------

    def add_vec(self, x, y):
        from .kernels import _np_add

        return _np_add(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), self.p, self.m)

    def sub_vec(self, x, y):
        from .kernels import _np_sub

        return _np_sub(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), self.p, self.m)

    def mul_vec(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.m == 1:
            return x * y % self.p
        if self._exp.size:
            from .kernels import _np_mul

            return _np_mul(x, y, self.p, self.m, self.q, self._exp, self._log)
        mul = np.frompyfunc(self.mul, 2, 1)
        return mul(x, y).astype(np.int64)

    # -- element / misc ---------------------------------------------------

    def element(self, value):
        return FieldElement(self, self.canon(value))

    __call__ = element

    def canon(self, value):
        """Canonicalize an integer to a valid packed element value."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value.value
        value = int(value)
        if self.m == 1:
            return value % self.p
        if 0 <= value < self.q:
            return value
        raise ValueError(
            f"{value} is not a canonical element of {self} (need 0 <= value < {self.q})"
        )

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        for v in range(self.q):
            yield FieldElement(self, v)

    def kernel_args(self):
        """(p, m, q, exp, log) tuple handed to the matrix kernels."""
        if self.m > 1 and not self._exp.size:
            raise ValueError(
                f"{self} exceeds the table limit {_TABLE_LIMIT}; matrix kernels unavailable"
            )
        if self.m == 1 and self.p >= _PRIME_MATMUL_LIMIT:
            raise ValueError(f"prime field order {self.p} too large for int64 kernels")
        return (self.p, self.m, self.q, self._exp, self._log)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.m == other.m
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.p, self.m, self.poly))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


def field_new(p: int, m: int = 1, poly=None) -> FiniteField:
    return FiniteField(p, m, poly)


def smallest_field_at_least(n: int) -> FiniteField:
    """Smallest prime-power field with at least n elements."""
    q = max(2, n)
    while True:
        pm = prime_power(q)
        if pm is not None:
            return FiniteField(*pm)
        q += 1


class FieldElement:
    """A field value paired with its owning field; mixed-field ops fail fast."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.canon(int(other))
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.field, self.field.div(v, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.value, int(e)))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.canon(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field}:{self.value}"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Named dispatch over the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _unpack(value, p, length):
    digits = []
    for _ in range(length):
        digits.append(value % p)
        value //= p
    return digits


def _pack(digits, p):
    out = 0
    for c in reversed(digits):
        out = out * p + c
    return out


def _digitwise(a, b, p, m, sign):
    out = 0
    mult = 1
    for _ in range(m):
        out += ((a % p + sign * (b % p)) % p) * mult
        a //= p
        b //= p
        mult *= p
    return out


def _prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out
