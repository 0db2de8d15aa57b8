"""Finite fields F_{p^m} with vectorized array arithmetic, plus dual numbers.

Field elements are stored as integers in ``[0, p**m)``: the element
``c_0 + c_1 t + ... + c_{m-1} t^{m-1}`` of ``F_p[t]/(modulus)`` is encoded as
``sum(c_i * p**i)``.  For ``m == 1`` this is the usual residue.  Every array
operation in the package goes through a :class:`GF` instance so the same code
runs over prime and extension fields.
"""

from __future__ import annotations

import functools
import operator
from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch

_FLOAT_EXACT = 2**52


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _polymod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by the monic ``mod``; coefficient lists low to high."""
    a = list(a)
    dm = len(mod) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - c * mod[j]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, deg: int):
    """Monic polynomials of degree ``deg`` in lexicographic order of the lower coefficients."""
    for k in range(p**deg):
        low = [(k // p**i) % p for i in range(deg)]
        yield low + [1]


def _is_irreducible(f: list[int], p: int) -> bool:
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not any(_polymod(f, g, p)):
                return False
    return True


def conway_free_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree ``m`` over F_p.

    Order: the lower coefficients ``(c_0, ..., c_{m-1})`` read as a base-p
    integer with ``c_0`` least significant.  Deterministic in ``(p, m)``.
    """
    for f in _monic_polys(p, m):
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class GF:
    """The finite field with ``p**m`` elements.

    Use :func:`field` to obtain instances; they are cached per ``(p, m)`` so
    identity comparison is meaningful.
    """

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = conway_free_modulus(p, m) if m > 1 else (0, 1)
        self._pw = p ** np.arange(m, dtype=np.int64)
        if m > 1:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (field, (self.p, self.m))

    # -- table construction (extension fields only) -------------------------

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        digits = np.array([[(v // p**i) % p for i in range(m)] for v in range(q)], dtype=np.int64)
        self._digits = digits
        mod = list(self.modulus)

        def enc(c):
            return int(sum(int(ci) * p**i for i, ci in enumerate(c)))

        # search for a primitive element, then tabulate exp/log
        order = q - 1
        for g in range(2, q):
            g_poly = list(digits[g])
            exp = np.zeros(order, dtype=np.int64)
            cur = [1] + [0] * (m - 1)
            seen_one = False
            for k in range(order):
                exp[k] = enc(cur)
                if k > 0 and exp[k] == 1:
                    seen_one = True
                    break
                cur = _polymod(_polymul(cur, g_poly, p), mod, p)
            if not seen_one:
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise AssertionError("no primitive element found")
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(order)
        self._exp = exp
        self._log = log

    # -- encoding -----------------------------------------------------------

    def to_digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a[..., None]
        return self._digits[a]

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        return d @ self._pw

    def asarray(self, a) -> np.ndarray:
        """Coerce integers to canonical encodings (``m == 1``: reduce mod p)."""
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a % self.p
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise ValueError(f"element encodings must lie in [0, {self.q})")
        return a

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under Z -> F."""
        return int(k % self.p)

    # -- elementwise arithmetic --------------------------------------------

    def add(self, a, b):
        if self.m == 1:
            return (np.asarray(a) + np.asarray(b)) % self.p
        return self.from_digits(self.to_digits(a) + self.to_digits(b))

    def sub(self, a, b):
        if self.m == 1:
            return (np.asarray(a) - np.asarray(b)) % self.p
        return self.from_digits(self.to_digits(a) - self.to_digits(b))

    def neg(self, a):
        if self.m == 1:
            return (-np.asarray(a)) % self.p
        return self.from_digits(-self.to_digits(a))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        s = (self._log[a] + self._log[b]) % (self.q - 1)
        return np.where((a == 0) | (b == 0), 0, self._exp[s])

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.m == 1:
            return self.power(a, self.p - 2)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        """Elementwise ``a**e`` for an integer exponent (negative allowed for units)."""
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.power(self.inv(a), -e)
        if self.m == 1:
            out = np.ones_like(a)
            base = a % self.p
            while e:
                if e & 1:
                    out = (out * base) % self.p
                base = (base * base) % self.p
                e >>= 1
            return out
        if e == 0:
            return np.ones_like(a)
        s = (self._log[a] * (e % (self.q - 1))) % (self.q - 1)
        return np.where(a == 0, 0, self._exp[s])

    def frobenius_root(self, a):
        """The unique ``b`` with ``b**p == a``: computed as ``a**(p**(m-1))``."""
        return self.power(a, self.p ** (self.m - 1))

    # -- reductions ----------------------------------------------------------

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return a.sum(axis=axis) % self.p
        d = self.to_digits(a)
        if axis is None:
            return self.from_digits(d.reshape(-1, self.m).sum(axis=0))
        ax = axis if axis >= 0 else axis - 1
        return self.from_digits(d.sum(axis=ax))

    def scatter_sum(self, index, values, size: int):
        """``out[k] = sum(values[index == k])`` for ``k < size``."""
        values = np.asarray(values, dtype=np.int64)
        if self.m == 1:
            return np.bincount(index, weights=values, minlength=size).round().astype(np.int64) % self.p
        d = self.to_digits(values)
        cols = [np.bincount(index, weights=d[:, j], minlength=size) for j in range(self.m)]
        return self.from_digits(np.stack(cols, axis=-1).round().astype(np.int64))

    def dot(self, a, b):
        """Matrix product (``@`` semantics, broadcasting over leading axes)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            k = a.shape[-1]
            if k * (self.p - 1) ** 2 < _FLOAT_EXACT:
                out = np.matmul(a.astype(np.float64), b.astype(np.float64))
                return np.rint(out).astype(np.int64) % self.p
            return np.matmul(a, b) % self.p
        va, vb = a.ndim == 1, b.ndim == 1
        if va:
            a = a[None, :]
        if vb:
            b = b[:, None]
        out = self.sum(self.mul(a[..., :, :, None], b[..., None, :, :]), axis=-2)
        if vb:
            out = out[..., 0]
        if va:
            out = out[..., 0] if vb else out[..., 0, :]
        return out

    # -- constructors ---------------------------------------------------------

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, d: int) -> np.ndarray:
        return np.eye(d, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, value) -> "Scalar":
        return Scalar(self, int(self.asarray(value)))


@functools.lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> GF:
    """Cached field constructor; the package requires p > 3 at the algebra level."""
    return GF(p, m)


def check_char(F: GF) -> None:
    if F.p <= 3:
        raise ValueError(f"characteristic p must exceed 3, got {F.p}")


@dataclass(frozen=True)
class Scalar:
    """A single element of ``F``; immutable and hashable."""

    F: GF
    value: int

    def _other(self, other) -> int:
        if isinstance(other, Scalar):
            if other.F is not self.F:
                raise FieldMismatch(f"{self.F!r} vs {other.F!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.F.from_int(int(other))
        return NotImplemented

    def _wrap(self, v) -> "Scalar":
        return Scalar(self.F, int(v))

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.F.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.F.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.F.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.F.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.F.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.F.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.F.power(self.value, e))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.F is other.F and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.F.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.F.p, self.F.m, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def inverse(self) -> "Scalar":
        return self._wrap(self.F.inv(self.value))

    def pth_root(self) -> "Scalar":
        return frobenius_pth_root(self)

    def coeffs(self) -> list[int]:
        """Coefficient list over F_p (low degree first)."""
        return [int(c) for c in self.F.to_digits(self.value)]

    def __repr__(self):
        if self.F.m == 1:
            return f"{self.value} (mod {self.F.p})"
        return f"{self.coeffs()} in {self.F!r}"


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def field_arith(a: Scalar, b, op: str) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div, pow}.  For ``pow`` ``b`` is an integer exponent."""
    if op == "pow":
        e = b.value if isinstance(b, Scalar) and b.F.m == 1 else int(b)
        return a**e
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}")
    if isinstance(b, Scalar) and b.F is not a.F:
        raise FieldMismatch(f"{a.F!r} vs {b.F!r}")
    return _OPS[op](a, b)


def frobenius_pth_root(a: Scalar) -> Scalar:
    return Scalar(a.F, int(a.F.frobenius_root(a.value)))


@dataclass(frozen=True)
class DualScalar:
    """``real + eps * ε`` with ε² = 0, over a finite field."""

    real: Scalar
    eps: Scalar

    def __post_init__(self):
        if self.real.F is not self.eps.F:
            raise FieldMismatch("real and eps parts live in different fields")

    @classmethod
    def of(cls, F: GF, real, eps=0) -> "DualScalar":
        return cls(F(real), F(eps))

    def _coerce(self, other) -> "DualScalar":
        if isinstance(other, DualScalar):
            return other
        if isinstance(other, (Scalar, int, np.integer)):
            return DualScalar(self.real * 0 + other, self.real * 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return DualScalar(self.real + o.real, self.eps + o.eps)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return DualScalar(self.real - o.real, self.eps - o.eps)

    def __neg__(self):
        return DualScalar(-self.real, -self.eps)

    def __mul__(self, other):
        o = self._coerce(other)
        return DualScalar(self.real * o.real, self.real * o.eps + self.eps * o.real)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return bool(self.real)

    def inverse(self) -> "DualScalar":
        if not self.real:
            raise ZeroDivisionError("dual number with zero real part is not a unit")
        r = self.real.inverse()
        return DualScalar(r, -self.eps * r * r)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()
