"""Exact arithmetic in GF(p^d), its subfields, and Z[zeta_p].

Elements are integer codes in [0, p^d): the base-p digits are the polynomial
coefficients, constant term least significant. Every arithmetic helper
accepts Python ints or NumPy integer arrays and vectorizes over the latter.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence, Union

import numpy as np
from sympy import isprime

DEFAULT_TABLE_BUDGET = 1 << 22

ArrayLike = Union[int, np.ndarray]


def _scalar_or_array(value: np.ndarray, like) -> ArrayLike:
    if np.ndim(like) == 0:
        return int(value)
    return value


class FieldSpec:
    """GF(p^d) with a primitive modulus and precomputed log/exp tables.

    Parameters
    ----------
    p : int
        Characteristic, a prime.
    d : int
        Extension degree.
    modulus : sequence of int
        Monic coefficients ``c_0 .. c_d``, constant first.
    """

    def __init__(self, p: int, d: int, modulus: Sequence[int]):
        if not isprime(p):
            raise ValueError(f"p={p} is not prime")
        if d < 1:
            raise ValueError("degree must be at least 1")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        self.p = p
        self.d = d
        self.q = p**d
        self.modulus = modulus
        exp = _power_cycle(p, d, modulus)
        if exp is None:
            raise ValueError(f"modulus {modulus} is not primitive over GF({p})")
        order = self.q - 1
        self._exp = np.concatenate([exp, exp]).astype(np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        self._log = log
        self.primitive_code = int(exp[1]) if order > 1 else 1
        pw = p ** np.arange(d, dtype=np.int64)
        self._pw = pw
        codes = np.arange(self.q, dtype=np.int64)
        self._digits = (codes[:, None] // pw[None, :]) % p
        self._exp.setflags(write=False)
        self._log.setflags(write=False)
        self._digits.setflags(write=False)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, d={self.d}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.d, self.modulus) == (
            other.p,
            other.d,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def __reduce__(self):
        return (field_create, (self.p, self.d))

    # tables
    @property
    def exp(self) -> np.ndarray:
        return self._exp[: self.q - 1]

    @property
    def log(self) -> np.ndarray:
        return self._log

    @property
    def digits(self) -> np.ndarray:
        return self._digits

    @property
    def powers(self) -> np.ndarray:
        return self._pw

    def descriptor(self) -> str:
        return " ".join(str(x) for x in (self.p, self.d, *self.modulus))

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return self.exp.copy()

    # arithmetic
    def add(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        a_arr = np.asarray(a, dtype=np.int64)
        b_arr = np.asarray(b, dtype=np.int64)
        if self.d == 1:
            out = (a_arr + b_arr) % self.p
        else:
            out = ((self._digits[a_arr] + self._digits[b_arr]) % self.p) @ self._pw
        return _scalar_or_array(out, np.broadcast(a_arr, b_arr))

    def neg(self, a: ArrayLike) -> ArrayLike:
        a_arr = np.asarray(a, dtype=np.int64)
        if self.d == 1:
            out = (-a_arr) % self.p
        else:
            out = ((-self._digits[a_arr]) % self.p) @ self._pw
        return _scalar_or_array(out, a_arr)

    def sub(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        return self.add(a, self.neg(b))

    def mul(self, a: ArrayLike, b: ArrayLike) -> ArrayLike:
        a_arr = np.asarray(a, dtype=np.int64)
        b_arr = np.asarray(b, dtype=np.int64)
        idx = self._log[a_arr] + self._log[b_arr]
        out = np.where((a_arr == 0) | (b_arr == 0), 0, self._exp[np.maximum(idx, 0)])
        return _scalar_or_array(out, np.broadcast(a_arr, b_arr))

    def inv(self, a: ArrayLike) -> ArrayLike:
        a_arr = np.asarray(a, dtype=np.int64)
        if np.any(a_arr == 0):
            raise ZeroDivisionError("zero has no inverse")
        out = self._exp[(-self._log[a_arr]) % (self.q - 1)]
        return _scalar_or_array(out, a_arr)

    def power(self, a: ArrayLike, e: int) -> ArrayLike:
        a_arr = np.asarray(a, dtype=np.int64)
        if e == 0:
            out = np.ones_like(a_arr)
        else:
            if e < 0 and np.any(a_arr == 0):
                raise ZeroDivisionError("zero has no inverse")
            idx = (self._log[a_arr] * (e % (self.q - 1))) % (self.q - 1)
            out = np.where(a_arr == 0, 0, self._exp[idx])
        return _scalar_or_array(out, a_arr)

    def alpha_pow(self, e: ArrayLike) -> ArrayLike:
        """Power of the primitive element, exponent taken mod q-1."""
        e_arr = np.asarray(e, dtype=np.int64)
        out = self._exp[e_arr % (self.q - 1)]
        return _scalar_or_array(out, e_arr)

    def sum(self, a: np.ndarray, axis: int = -1) -> ArrayLike:
        """Field sum along an axis."""
        a_arr = np.asarray(a, dtype=np.int64)
        if self.d == 1:
            out = a_arr.sum(axis=axis) % self.p
        else:
            dig = self._digits[a_arr].sum(axis=axis if axis >= 0 else axis - 1)
            out = (dig % self.p) @ self._pw
        return _scalar_or_array(out, out)

    def dot(self, u: np.ndarray, v: np.ndarray) -> int:
        return int(self.sum(self.mul(np.asarray(u), np.asarray(v))))

    def to_digits(self, a: ArrayLike) -> np.ndarray:
        return self._digits[np.asarray(a, dtype=np.int64)]

    def from_digits(self, digits: np.ndarray) -> ArrayLike:
        out = (np.asarray(digits, dtype=np.int64) % self.p) @ self._pw
        return _scalar_or_array(out, out)

    def quadratic_character(self, x: ArrayLike) -> ArrayLike:
        return quadratic_character(self, x)


def _power_cycle(p: int, d: int, modulus: Sequence[int]) -> np.ndarray | None:
    """Successive powers of x modulo ``modulus`` as codes; None if not primitive."""
    q = p**d
    order = q - 1
    low = [(-c) % p for c in modulus[:d]]
    exps = np.empty(order, dtype=np.int64)
    coeffs = [0] * d
    coeffs[0] = 1
    pw = [p**i for i in range(d)]
    for i in range(order):
        code = sum(c * w for c, w in zip(coeffs, pw))
        if i > 0 and code == 1:
            return None
        exps[i] = code
        top = coeffs[-1]
        coeffs = [0] + coeffs[:-1]
        if top:
            coeffs = [(c + top * m) % p for c, m in zip(coeffs, low)]
    code = sum(c * w for c, w in zip(coeffs, pw))
    if code != 1:
        return None
    return exps


@lru_cache(maxsize=None)
def _field_create_cached(p: int, d: int) -> FieldSpec:
    for tail in itertools.product(range(p), repeat=d):
        # tail is (c_{d-1}, ..., c_0), enumerated in lexicographic order
        if tail[-1] == 0:
            continue
        modulus = tuple(reversed(tail)) + (1,)
        if _power_cycle(p, d, modulus) is not None:
            return FieldSpec(p, d, modulus)
    raise RuntimeError(f"no primitive polynomial found for GF({p}^{d})")


def field_create(p: int, d: int, budget: int = DEFAULT_TABLE_BUDGET) -> FieldSpec:
    """GF(p^d) with the lexicographically smallest primitive modulus.

    Order is taken on the coefficient tuple ``(c_{d-1}, ..., c_0)``.
    """
    if not isinstance(p, (int, np.integer)) or not isprime(int(p)):
        raise ValueError(f"p={p} is not prime")
    if d < 1:
        raise ValueError("degree must be at least 1")
    if int(p) ** int(d) > budget:
        raise ValueError(f"GF({p}^{d}) exceeds the table budget {budget}")
    return _field_create_cached(int(p), int(d))


def field_from_descriptor(line: str) -> FieldSpec:
    """Parse ``p d c_0 ... c_d`` and rebuild the field."""
    parts = [int(x) for x in line.split()]
    if len(parts) < 3:
        raise ValueError("field descriptor too short")
    p, d = parts[0], parts[1]
    modulus = tuple(parts[2:])
    if len(modulus) != d + 1:
        raise ValueError("descriptor has wrong number of coefficients")
    return FieldSpec(p, d, modulus)


class SubfieldMap:
    """Trace and norm from ``big`` onto its subfield GF(p^s).

    Subfield elements are returned as big-field codes. ``to_small`` and
    ``from_small`` identify the subfield with the standalone GF(p^s).
    """

    def __init__(self, big: FieldSpec, sub_degree: int):
        if sub_degree < 1 or big.d % sub_degree:
            raise ValueError(f"sub degree {sub_degree} does not divide {big.d}")
        self.big = big
        self.sub_degree = sub_degree
        self.r = big.p**sub_degree
        self.rel_degree = big.d // sub_degree
        self.strides = [self.r**i for i in range(self.rel_degree)]

    @cached_property
    def small(self) -> FieldSpec:
        return field_create(self.big.p, self.sub_degree)

    def frobenius(self, x: ArrayLike, i: int = 1) -> ArrayLike:
        return self.big.power(x, self.r**i)

    def trace(self, x: ArrayLike) -> ArrayLike:
        big = self.big
        x_arr = np.asarray(x, dtype=np.int64)
        if self.rel_degree == 1:
            return _scalar_or_array(x_arr.copy(), x_arr)
        logs = big.log[x_arr]
        order = big.q - 1
        terms = [
            np.where(x_arr == 0, 0, big._exp[np.maximum((logs * s) % order, 0)])
            for s in self.strides
        ]
        out = big.sum(np.stack(terms, axis=-1), axis=-1)
        return _scalar_or_array(np.asarray(out), x_arr)

    def norm(self, x: ArrayLike) -> ArrayLike:
        return self.big.power(x, (self.big.q - 1) // (self.r - 1))

    def in_subfield(self, x: ArrayLike) -> ArrayLike:
        x_arr = np.asarray(x, dtype=np.int64)
        out = np.asarray(self.big.power(x_arr, self.r)) == x_arr
        return bool(out) if np.ndim(x) == 0 else out

    def subfield_elements(self) -> np.ndarray:
        elems = self.big.elements()
        return elems[self.in_subfield(elems)]

    @cached_property
    def _iso(self) -> tuple[np.ndarray, np.ndarray]:
        big, small = self.big, self.small
        elems = self.subfield_elements()
        # find a root of the small modulus inside the embedded subfield
        root = None
        for w in elems:
            acc = 0
            for c in reversed(small.modulus):
                acc = big.add(big.mul(acc, int(w)), c)
            if acc == 0:
                root = int(w)
                break
        if root is None:
            raise RuntimeError("small modulus has no root in the subfield")
        from_small = np.zeros(small.q, dtype=np.int64)
        to_small = np.full(big.q, -1, dtype=np.int64)
        to_small[0] = 0
        cur = 1
        for i in range(small.q - 1):
            from_small[int(small.exp[i])] = cur
            to_small[cur] = int(small.exp[i])
            cur = big.mul(cur, root)
        from_small.setflags(write=False)
        to_small.setflags(write=False)
        return to_small, from_small

    def to_small(self, x: ArrayLike) -> ArrayLike:
        x_arr = np.asarray(x, dtype=np.int64)
        out = self._iso[0][x_arr]
        if np.any(out < 0):
            raise ValueError("element is not in the subfield")
        return _scalar_or_array(out, x_arr)

    def from_small(self, x: ArrayLike) -> ArrayLike:
        x_arr = np.asarray(x, dtype=np.int64)
        return _scalar_or_array(self._iso[1][x_arr], x_arr)


def trace(x: ArrayLike, smap: SubfieldMap) -> ArrayLike:
    return smap.trace(x)


def absolute_trace(spec: FieldSpec, x: ArrayLike) -> ArrayLike:
    """Trace onto GF(p); prime-field codes coincide with residues."""
    return SubfieldMap(spec, 1).trace(x)


def quadratic_character(spec: FieldSpec, x: ArrayLike) -> ArrayLike:
    if spec.p == 2:
        raise ValueError("quadratic character needs odd characteristic")
    x_arr = np.asarray(x, dtype=np.int64)
    logs = spec.log[x_arr]
    out = np.where(x_arr == 0, 0, np.where(logs % 2 == 0, 1, -1))
    return _scalar_or_array(out, x_arr)


# Z[zeta_p]


@dataclass(frozen=True)
class CycInt:
    """Element of Z[zeta_p] as coefficients on 1, zeta, ..., zeta^{p-2}."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p - 1:
            raise ValueError("CycInt needs p-1 coefficients")

    @classmethod
    def from_counts(cls, p: int, counts: Sequence[int]) -> "CycInt":
        """Sum of counts[j] * zeta^j for j in [0, p)."""
        full = [int(c) for c in counts]
        if len(full) != p:
            raise ValueError("need p counts")
        top = full[p - 1]
        return cls(p, tuple(c - top for c in full[: p - 1]))

    @classmethod
    def integer(cls, p: int, value: int) -> "CycInt":
        return cls(p, (int(value),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        counts = [0] * p
        counts[k % p] = 1
        return cls.from_counts(p, counts)

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _check(self, other: "CycInt") -> None:
        if not isinstance(other, CycInt) or other.p != self.p:
            raise TypeError("CycInt operands must share p")

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(self.p, int(other))
        self._check(other)
        return other

    def __add__(self, other) -> "CycInt":
        other = self._coerce(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycInt":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycInt":
        other = self._coerce(other)
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        acc[(i + j) % p] += a * b
        return CycInt.from_counts(p, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycInt":
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "CycInt":
        full = self._full()
        counts = [0] * self.p
        for i, c in enumerate(full):
            counts[(-i) % self.p] += c
        return CycInt.from_counts(self.p, counts)

    def times_zeta(self, k: int) -> "CycInt":
        full = self._full()
        counts = [0] * self.p
        for i, c in enumerate(full):
            counts[(i + k) % self.p] += c
        return CycInt.from_counts(self.p, counts)

    def is_integer(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def abs2(self) -> int:
        return (self * self.conj()).to_int()

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.p), math.sin(2 * math.pi / self.p))
        return sum(c * z**i for i, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


def prime_gauss_cycint(p: int) -> CycInt:
    """Quadratic Gauss sum of GF(p): sqrt(p) if p = 1 mod 4, else i*sqrt(p)."""
    counts = [0] * p
    for x in range(1, p):
        counts[x] += 1 if pow(x, (p - 1) // 2, p) == 1 else -1
    return CycInt.from_counts(p, counts)


@dataclass(frozen=True)
class GaussValue:
    """Exact value sign * (i if imaginary) * sqrt(magnitude_sq), p a prime."""

    p: int
    sign: int
    imaginary: bool
    magnitude_sq: int

    def __mul__(self, other) -> "GaussValue":
        if isinstance(other, (int, np.integer)):
            if other not in (1, -1):
                raise ValueError("only unit scalars are supported")
            return GaussValue(self.p, self.sign * int(other), self.imaginary, self.magnitude_sq)
        if other.p != self.p:
            raise ValueError("GaussValue operands must share p")
        sign = self.sign * other.sign
        if self.imaginary and other.imaginary:
            sign = -sign
        return GaussValue(
            self.p, sign, self.imaginary != other.imaginary, self.magnitude_sq * other.magnitude_sq
        )

    __rmul__ = __mul__

    def __neg__(self) -> "GaussValue":
        return GaussValue(self.p, -self.sign, self.imaginary, self.magnitude_sq)

    def as_int(self) -> int:
        """Exact rational integer value; error if irrational or imaginary."""
        root = math.isqrt(self.magnitude_sq)
        if self.imaginary or root * root != self.magnitude_sq:
            raise ValueError(f"{self} is not a rational integer")
        return self.sign * root

    def to_cycint(self) -> CycInt:
        p = self.p
        d = _log_exact(self.magnitude_sq, p)
        g = prime_gauss_cycint(p)
        if p % 4 == 1:
            # g = sqrt(p), so sqrt(p^d) = g^d; i is not in Z[zeta_p]
            if self.imaginary:
                raise ValueError("i*sqrt(q) is not in Z[zeta_p] for p = 1 mod 4")
            return (g**d) * self.sign
        # g = i*sqrt(p), so sqrt(p^d) = i^{-d} g^d
        shift = (int(self.imaginary) - d) % 4
        if shift % 2:
            raise ValueError("value is not in Z[zeta_p]")
        unit = 1 if shift == 0 else -1
        return (g**d) * (self.sign * unit)

    def to_complex(self) -> complex:
        mag = math.sqrt(self.magnitude_sq) * self.sign
        return complex(0, mag) if self.imaginary else complex(mag, 0)


def _log_exact(value: int, p: int) -> int:
    d = 0
    while value % p == 0 and value > 1:
        value //= p
        d += 1
    if value != 1:
        raise ValueError("magnitude is not a power of p")
    return d


def gauss_sum_quadratic(spec: FieldSpec) -> GaussValue:
    """Closed form of the quadratic Gauss sum of GF(p^e)."""
    p, e = spec.p, spec.d
    if p == 2:
        raise ValueError("quadratic Gauss sum needs odd characteristic")
    sign = -1 if (e - 1) % 2 else 1
    imaginary = False
    if p % 4 == 3:
        r = e % 4
        imaginary = r % 2 == 1
        if r >= 2:
            sign = -sign
    return GaussValue(p, sign, imaginary, p**e)


def gauss_sum_direct(spec: FieldSpec) -> CycInt:
    """Brute force sum over x != 0 of eta(x) zeta^{tr(x)}."""
    xs = spec.nonzero()
    tr = np.asarray(absolute_trace(spec, xs))
    eta = np.asarray(quadratic_character(spec, xs))
    counts = np.zeros(spec.p, dtype=object)
    np.add.at(counts, tr, eta.astype(object))
    return CycInt.from_counts(spec.p, [int(c) for c in counts])


def weil_sum(spec: FieldSpec, a2: int, a1: int, a0: int) -> CycInt:
    """Closed form of sum over c of zeta^{tr(a2 c^2 + a1 c + a0)}."""
    if a2 == 0:
        raise ValueError("a2 must be nonzero")
    four_a2 = spec.mul(spec.from_digits(np.array([4 % spec.p] + [0] * (spec.d - 1))), a2)
    shift = spec.sub(a0, spec.mul(spec.mul(a1, a1), spec.inv(four_a2)))
    k = int(absolute_trace(spec, shift))
    eta = int(quadratic_character(spec, a2))
    g = gauss_sum_quadratic(spec).to_cycint()
    return g.times_zeta(k) * eta


def weil_sum_direct(spec: FieldSpec, a2: int, a1: int, a0: int) -> CycInt:
    xs = spec.elements()
    vals = spec.add(spec.add(spec.mul(a2, spec.mul(xs, xs)), spec.mul(a1, xs)), a0)
    tr = np.asarray(absolute_trace(spec, vals))
    return CycInt.from_counts(spec.p, np.bincount(tr, minlength=spec.p).tolist())


# bent functions


@dataclass(frozen=True)
class FunctionTable:
    """Map GF(p^m) -> GF(p), values indexed by element code."""

    field: FieldSpec
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.field.q:
            raise ValueError("function table must cover the whole field")
        if any(not 0 <= v < self.field.p for v in self.values):
            raise ValueError("function values must lie in [0, p)")

    @classmethod
    def from_array(cls, spec: FieldSpec, values) -> "FunctionTable":
        return cls(spec, tuple(int(v) for v in np.asarray(values) % spec.p))

    @classmethod
    def quadratic_trace(cls, spec: FieldSpec) -> "FunctionTable":
        xs = spec.elements()
        return cls.from_array(spec, absolute_trace(spec, spec.mul(xs, xs)))

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)


def _walsh_counts(f: FunctionTable, beta: int) -> list[int]:
    spec = f.field
    xs = spec.elements()
    tr = np.asarray(absolute_trace(spec, spec.mul(beta, xs)))
    expo = (f.array() - tr) % spec.p
    return np.bincount(expo, minlength=spec.p).tolist()


def walsh_transform(f: FunctionTable, beta: int) -> CycInt:
    """Sum over x of zeta^{f(x) - tr(beta x)}."""
    return CycInt.from_counts(f.field.p, _walsh_counts(f, beta))


def walsh_spectrum(f: FunctionTable) -> list[CycInt]:
    return [walsh_transform(f, b) for b in range(f.field.q)]


@dataclass(frozen=True)
class BentProfile:
    epsilon: int
    h: int
    dual: tuple[int, ...]


@dataclass(frozen=True)
class Rejection:
    clause: str
    reason: str


def rf_membership(f: FunctionTable) -> BentProfile | Rejection:
    """Screen f for the weakly regular bent class with f(0)=0 and even degree h."""
    spec = f.field
    p, m = spec.p, spec.d
    if p == 2:
        raise ValueError("odd characteristic required")
    vals = f.array()
    if vals[0] != 0:
        return Rejection("i", "f(0) != 0")
    xs = spec.elements()
    h_found = None
    for h in range(2, p, 2):
        if math.gcd(h - 1, p - 1) != 1:
            continue
        ok = True
        for a in range(1, p):
            lhs = vals[np.asarray(spec.mul(a, xs))]
            if np.any(lhs != (pow(a, h, p) * vals) % p):
                ok = False
                break
        if ok:
            h_found = h
            break
    if h_found is None:
        return Rejection("ii", "no even h with gcd(h-1, p-1)=1 satisfies f(ax)=a^h f(x)")
    base = prime_gauss_cycint(p) ** m
    shifted = [base.times_zeta(j) for j in range(p)]
    epsilon = None
    dual = []
    for beta in range(spec.q):
        w = walsh_transform(f, beta)
        hit = None
        for j, s in enumerate(shifted):
            if w == s:
                hit = (1, j)
                break
            if w == -s:
                hit = (-1, j)
                break
        if hit is None:
            return Rejection("iii", f"W_f({beta}) is not a unit times g^m zeta^j")
        if epsilon is None:
            epsilon = hit[0]
        elif epsilon != hit[0]:
            return Rejection("iii", f"sign changes at beta={beta}")
        dual.append(hit[1])
    return BentProfile(epsilon=epsilon, h=h_found, dual=tuple(dual))


def sqrt_pstar_power(p: int, m: int) -> int:
    """sqrt(p*)^m as an integer when m is even, p* = (-1)^{(p-1)/2} p."""
    if m % 2:
        raise ValueError("odd exponent is irrational")
    pstar = p if p % 4 == 1 else -p
    return pstar ** (m // 2)
