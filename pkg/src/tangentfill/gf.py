"""Exact arithmetic in finite fields GF(p^n).

Elements are plain integers in ``[0, q)``.  The base-p digits of an element's
index are the coefficients of its polynomial representative, lowest degree
first, so index 0 is zero and index 1 is one in every field, and addition is
digit-wise mod p no matter how the field was built.  Multiplication goes
through discrete log / exponential tables generated from a primitive element.

Every operation exists in a scalar form (``add``, ``mul``, ...) working on
Python ints and a vectorised form (``vadd``, ``vmul``, ...) working on integer
numpy arrays.  The scan-heavy modules use the latter.

:class:`FieldElement` wraps an index together with its field for interactive
use and operator overloading.
"""

from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import DomainError, FieldMismatchError, InvalidInputError

MAX_ORDER = 1 << 20
_SQRT_TABLE_LIMIT = 1 << 16
_ADD_TABLE_LIMIT = 1024


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


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``p**n``; raise :class:`InvalidInputError` if impossible."""
    if not isinstance(q, int) or q < 2:
        raise InvalidInputError(f"{q!r} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise InvalidInputError(f"{q} is not a prime power")
    p = factors[0]
    n = 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# -- polynomials over F_p: coefficient lists, lowest degree first ------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
    return a


def _polymulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _polymod(out, f, p)


def _polypowmod(a, e, f, p):
    result = [1]
    base = _polymod(a, f, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _polygcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
        b = _trim(b)
    return a


def is_irreducible(coeffs, p: int) -> bool:
    """Irreducibility over F_p of the monic polynomial with the given coefficients.

    Degrees up to 3 only need a root test; higher degrees use Rabin's test.
    """
    f = [c % p for c in coeffs]
    n = len(f) - 1
    if n < 1 or f[-1] != 1:
        raise InvalidInputError("modulus must be monic of positive degree")
    if n == 1:
        return True
    if n <= 3:
        for r in range(p):
            v = 0
            for c in reversed(f):
                v = (v * r + c) % p
            if v == 0:
                return False
        return True
    x = [0, 1]
    # x^(p^n) == x (mod f)
    h = x
    for _ in range(n):
        h = _polypowmod(h, p, f, p)
    if _trim(list(h)) != x:
        return False
    for ell in prime_factors(n):
        h = x
        for _ in range(n // ell):
            h = _polypowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _polygcd(f, diff, p)
        if len(g) != 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``n`` over F_p.

    Candidates ``t^n + c_{n-1} t^{n-1} + ... + c_0`` are scanned in increasing
    order of the integer ``sum(c_i p^i)``.
    """
    for m in range(p ** n):
        lower = [(m // p ** i) % p for i in range(n)]
        coeffs = lower + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field of order ``q = p**n`` with integer-encoded elements.

    Do not call the constructor directly; use :func:`make_field` or
    :func:`quadratic_extension`.
    """

    def __init__(self, p, n, raw_mul, *, modulus=None, base=None, delta=None):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self.base = base
        self.delta = delta
        self._key = (p, n, modulus, None if base is None else base._key, delta)
        self._build_tables(raw_mul)
        self._sqrt_table = None

    # -- table construction ---------------------------------------------

    def _build_tables(self, raw_mul):
        p, n, q = self.p, self.n, self.q
        idx = np.arange(q, dtype=np.int64)
        self._weights = np.array([p ** i for i in range(n)], dtype=np.int64)
        self._digits = (idx[:, None] // self._weights[None, :]) % p

        neg = ((-self._digits) % p) @ self._weights
        self._neg = neg
        self._neg_l = neg.tolist()

        if n > 1 and q <= _ADD_TABLE_LIMIT:
            tab = np.zeros((q, q), dtype=np.int64)
            for i in range(n):
                d = self._digits[:, i]
                tab += ((d[:, None] + d[None, :]) % p) * self._weights[i]
            self._add_table = tab
        else:
            self._add_table = None

        g = self._find_primitive(raw_mul)
        self.generator = g
        exp = self._exp_table(raw_mul, g)
        log = np.full(q, 2 * (q - 1), dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        if np.count_nonzero(log == 2 * (q - 1)) != 1 or log[0] != 2 * (q - 1):
            raise AssertionError("exponential table is not a bijection")
        self._exp = exp
        self._log = log
        ext = np.zeros(4 * q, dtype=np.int64)
        ext[: q - 1] = exp
        ext[q - 1 : 2 * (q - 1)] = exp
        self._exp_ext = ext
        self._exp_l = exp.tolist()
        self._log_l = log.tolist()

        if n > 1:
            one_plus = self.vadd(exp, np.ones_like(exp))
            zech = np.where(one_plus == 0, -1, log[one_plus])
            self._zech_l = zech.tolist()

    def _raw_pow(self, raw_mul, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = raw_mul(result, base)
            base = raw_mul(base, base)
            e >>= 1
        return result

    def _find_primitive(self, raw_mul):
        q = self.q
        if q == 2:
            return 1
        factors = prime_factors(q - 1)
        for c in range(2, q):
            if all(self._raw_pow(raw_mul, c, (q - 1) // r) != 1 for r in factors):
                return c
        raise AssertionError("no primitive element")  # pragma: no cover

    def _mul_matrix(self, raw_mul, c):
        # column i holds the digits of c * p^i; multiplication by c is F_p-linear
        cols = [self._digits[raw_mul(c, int(w))] for w in self._weights]
        return np.stack(cols, axis=1)

    def _exp_table(self, raw_mul, g):
        q, p = self.q, self.p
        m = isqrt(q - 1) + 1
        first = [1]
        for _ in range(m - 1):
            first.append(raw_mul(first[-1], g))
        gm = raw_mul(first[-1], g)
        mat = self._mul_matrix(raw_mul, gm).T
        block = self._digits[np.array(first, dtype=np.int64)]
        blocks = [block]
        total = m
        while total < q - 1:
            block = (block @ mat) % p
            blocks.append(block)
            total += m
        digits = np.concatenate(blocks)[: q - 1]
        return digits @ self._weights

    # -- identity -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.base is not None:
            return f"GF({self.base.q}^2 = {self.base!r}[u]/(u^2 - {self.delta}))"
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n})"

    def __len__(self):
        return self.q

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        return FieldElement(self, self.from_int(value))

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    def spec(self) -> dict:
        """JSON-serialisable description of the field."""
        if self.base is not None:
            return {"p": self.p, "n": self.n, "base": self.base.spec(), "delta": self.delta}
        out = {"p": self.p, "n": self.n}
        if self.modulus is not None:
            out["modulus"] = list(self.modulus)
        return out

    def check(self, elem: "FieldElement"):
        if elem.field != self:
            raise FieldMismatchError(f"element of {elem.field!r} used in {self!r}")

    # -- conversions ----------------------------------------------------

    def from_int(self, m: int) -> int:
        """Image of the integer ``m`` in the prime subfield."""
        return int(m) % self.p

    def element(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    def elements(self) -> range:
        """All elements in ascending index order, starting with zero."""
        return range(self.q)

    def digits(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p ** i) % p for i in range(self.n))

    def from_digits(self, digits) -> int:
        if len(digits) != self.n:
            raise InvalidInputError("wrong number of digits")
        return sum((int(d) % self.p) * self.p ** i for i, d in enumerate(digits))

    # -- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            s = a + b
            return s - self.p if s >= self.p else s
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log_l[a], self._log_l[b]
        z = self._zech_l[(lb - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp_l[(la + z) % (self.q - 1)]

    def neg(self, a: int) -> int:
        return self._neg_l[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_l[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return a * b % self.p
        return self._exp_l[(self._log_l[a] + self._log_l[b]) % (self.q - 1)]

    def pow(self, a: int, k: int) -> int:
        """``a**k`` with the convention ``0**0 == 1``."""
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0
        return self._exp_l[(self._log_l[a] * k) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a**(p**i)``."""
        return self.pow(a, self.p ** i)

    def log(self, a: int) -> int:
        """Discrete logarithm to the base :attr:`generator`."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log_l[a]

    def is_square(self, a: int) -> bool:
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int):
        """Canonical square root (the root with smaller index), or ``None``."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if not self.is_square(a):
            return None
        if self.q <= _SQRT_TABLE_LIMIT:
            return int(self._roots()[a])
        r = self._tonelli_shanks(a)
        return min(r, self.neg(r))

    def _roots(self):
        if self._sqrt_table is None:
            elems = np.arange(self.q, dtype=np.int64)
            squares = self.vmul(elems, elems)
            roots = np.full(self.q, self.q, dtype=np.int64)
            np.minimum.at(roots, squares, elems)
            roots[roots == self.q] = -1
            self._sqrt_table = roots
        return self._sqrt_table

    def _tonelli_shanks(self, a):
        q = self.q
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = next(c for c in range(2, q) if not self.is_square(c))
        m, c = s, self.pow(z, t)
        tt, r = self.pow(a, t), self.pow(a, (t + 1) // 2)
        while tt != 1:
            i, probe = 0, tt
            while probe != 1:
                probe = self.mul(probe, probe)
                i += 1
            b = self.pow(c, 2 ** (m - i - 1))
            m, c = i, self.mul(b, b)
            tt, r = self.mul(tt, c), self.mul(r, b)
        return r

    def smallest_nonsquare(self) -> int:
        if self.p == 2:
            raise DomainError(f"{self!r} has characteristic 2")
        return next(c for c in range(1, self.q) if not self.is_square(c))

    # -- vectorised arithmetic ------------------------------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return np.remainder(a + b, self.p)
        if self._add_table is not None:
            return self._add_table[a, b]
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._weights:
            out += ((a // w + b // w) % p) * w
        return out

    def vneg(self, a):
        return self._neg[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a * b) % self.p
        return self._exp_ext[self._log[a] + self._log[b]]

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        return self._exp_ext[(self.q - 1) - self._log[a]]

    def vpow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        zero = a == 0
        la = np.where(zero, 0, self._log[a])
        res = self._exp[(la * (k % (self.q - 1))) % (self.q - 1)]
        return np.where(zero, 0, res)

    def vsum(self, arrays):
        """Field sum of an iterable of equally shaped arrays."""
        it = iter(arrays)
        acc = np.asarray(next(it), dtype=np.int64)
        if self.n == 1:
            # defer the reduction; indices are < 2^20 so no overflow
            for a in it:
                acc = acc + a
            return np.remainder(acc, self.p)
        for a in it:
            acc = self.vadd(acc, a)
        return acc


class FieldElement:
    """An element of a :class:`Field` with the usual operators."""

    __slots__ = ("field", "index")

    def __init__(self, field: Field, index: int):
        index = int(index)
        if not 0 <= index < field.q:
            raise InvalidInputError(f"index {index} outside {field!r}")
        self.field = field
        self.index = index

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.index
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def _wrap(self, index):
        return FieldElement(self.field, index)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.index, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.index))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.index, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.index))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.index, k))

    def inverse(self):
        return self._wrap(self.field.inv(self.index))

    def frobenius(self, i: int = 1):
        return self._wrap(self.field.frobenius(self.index, i))

    def is_square(self) -> bool:
        return self.field.is_square(self.index)

    def sqrt(self):
        r = self.field.sqrt(self.index)
        return None if r is None else self._wrap(r)

    @property
    def digits(self) -> tuple[int, ...]:
        return self.field.digits(self.index)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.index == other.index
        if isinstance(other, (int, np.integer)):
            return self.index == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.index))

    def __int__(self):
        return self.index

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"{self.index} in {self.field!r}"


def arith(op: str, a: FieldElement, b: FieldElement = None) -> FieldElement:
    """Apply one of ``add``, ``sub``, ``mul``, ``neg`` to field elements."""
    if op == "neg":
        return -a
    if b is None:
        raise InvalidInputError(f"{op} needs two operands")
    if not isinstance(b, FieldElement) or a.field != b.field:
        raise FieldMismatchError("operands from different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InvalidInputError(f"unknown operation {op!r}")


def _prime_mul(p):
    return lambda a, b: a * b % p


def _poly_mul(p, n, modulus):
    def mul(a, b):
        da = [(a // p ** i) % p for i in range(n)]
        db = [(b // p ** i) % p for i in range(n)]
        r = _polymulmod(_trim(da), _trim(db), list(modulus), p)
        return sum(c * p ** i for i, c in enumerate(r))

    return mul


@lru_cache(maxsize=None)
def _make_field(p, n, modulus):
    if n == 1:
        return Field(p, 1, _prime_mul(p))
    return Field(p, n, _poly_mul(p, n, modulus), modulus=modulus)


def make_field(p: int, n: int = 1, modulus=None, *, max_order: int = MAX_ORDER) -> Field:
    """The field F_{p^n}, cached so equal arguments give the same object.

    Without an explicit ``modulus`` the smallest monic irreducible of degree
    ``n`` is used (see :func:`smallest_irreducible`).
    """
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidInputError(f"{p!r} is not prime")
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"extension degree must be >= 1, got {n!r}")
    if p ** n > max_order:
        raise InvalidInputError(f"field order {p}^{n} exceeds the limit {max_order}")
    if n == 1:
        if modulus is not None and len(modulus) not in (0, 2):
            raise InvalidInputError("prime fields take no modulus")
        return _make_field(p, 1, None)
    if modulus is None:
        modulus = smallest_irreducible(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1:
            raise InvalidInputError(f"modulus must have {n + 1} coefficients")
        if not is_irreducible(modulus, p):
            raise InvalidInputError(f"modulus {list(modulus)} is not irreducible over F_{p}")
    return _make_field(p, n, modulus)


def field_of_order(q: int, **kwargs) -> Field:
    p, n = prime_power(q)
    return make_field(p, n, **kwargs)


def field_from_spec(spec: dict) -> Field:
    """Inverse of :meth:`Field.spec` for fields built by :func:`make_field`."""
    try:
        p = int(spec["p"])
        n = int(spec.get("n", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad field spec {spec!r}") from exc
    if "base" in spec:
        base = field_from_spec(spec["base"])
        ext, _ = quadratic_extension(base)
        return ext
    return make_field(p, n, spec.get("modulus"))


@lru_cache(maxsize=None)
def _quadratic_extension(base: Field):
    q = base.q
    delta = next(c for c in range(1, q) if not base.is_square(c))

    def mul(a, b):
        a0, a1 = a % q, a // q
        b0, b1 = b % q, b // q
        c0 = base.add(base.mul(a0, b0), base.mul(delta, base.mul(a1, b1)))
        c1 = base.add(base.mul(a0, b1), base.mul(a1, b0))
        return c0 + c1 * q

    if q * q > MAX_ORDER:
        raise InvalidInputError(f"extension order {q}^2 exceeds the limit {MAX_ORDER}")
    return Field(base.p, 2 * base.n, mul, base=base, delta=delta)


def quadratic_extension(base: Field):
    """F_{q^2} as ``base[u]/(u^2 - delta)`` with ``delta`` the smallest non-square.

    Returns ``(ext, embed)``.  An element ``a + b*u`` has index ``a + b*q``, so
    the embedding of the base field is the identity on indices.
    """
    if base.p == 2:
        raise InvalidInputError("quadratic extensions are only built for odd q")
    ext = _quadratic_extension(base)

    def embed(a):
        if isinstance(a, FieldElement):
            base.check(a)
            return FieldElement(ext, a.index)
        a = int(a)
        if not 0 <= a < base.q:
            raise InvalidInputError(f"{a} is not an element of {base!r}")
        return a

    return ext, embed
