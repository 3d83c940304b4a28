"""Linear codes over GF(q): enumeration, duality, orthogonality, bounds."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from .galois import FieldSpec, field_from_descriptor

DEFAULT_BUDGET = 1 << 26

# cap on the number of GF(p) entries held by one enumeration table
_TABLE_CELLS = 1 << 22


class BudgetExceeded(RuntimeError):
    """Raised when a computation would exceed its explicit work budget."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what} needs {needed} > budget {budget}")
        self.what = what
        self.needed = needed
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get("ORTHO_BUDGET")
    return int(float(raw)) if raw else DEFAULT_BUDGET


def rref(spec: FieldSpec, matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(q); returns (nonzero rows, pivots)."""
    m = np.array(matrix, dtype=np.int64, copy=True)
    if m.ndim != 2:
        raise ValueError("matrix must be two dimensional")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = spec.mul(m[r], spec.inv(int(m[r, c])))
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = spec.sub(m[i], spec.mul(m[r], int(m[i, c])))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(spec: FieldSpec, matrix: np.ndarray) -> np.ndarray:
    """Basis of {x : M x = 0} as rows."""
    m = np.asarray(matrix, dtype=np.int64)
    n = m.shape[1]
    red, pivots = rref(spec, m) if m.shape[0] else (np.zeros((0, n), np.int64), [])
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = spec.neg(int(red[r, f]))
    return basis


class LinearCode:
    """Row span of a generator set over GF(q).

    Rows are kept as given; a reduced basis is cached on first use.
    """

    def __init__(self, field: FieldSpec, rows, n: int | None = None):
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            if n is None:
                raise ValueError("empty code needs an explicit length")
            arr = np.zeros((0, n), dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("rows must form a matrix")
        if n is not None and arr.shape[1] != n:
            raise ValueError("row length does not match n")
        if np.any((arr < 0) | (arr >= field.q)):
            raise ValueError("entries must be element codes of the field")
        arr.setflags(write=False)
        self.field = field
        self.rows = arr
        self.n = arr.shape[1]

    def __repr__(self) -> str:
        return f"LinearCode(q={self.q}, n={self.n}, k={self.k})"

    @property
    def q(self) -> int:
        return self.field.q

    @cached_property
    def _reduced(self) -> tuple[np.ndarray, list[int]]:
        if self.rows.shape[0] == 0:
            return np.zeros((0, self.n), dtype=np.int64), []
        basis, pivots = rref(self.field, self.rows)
        basis.setflags(write=False)
        return basis, pivots

    @property
    def basis(self) -> np.ndarray:
        return self._reduced[0]

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    def contains(self, vector: Sequence[int]) -> bool:
        v = np.asarray(vector, dtype=np.int64)
        if v.shape != (self.n,):
            raise ValueError("vector has the wrong length")
        basis, pivots = self._reduced
        residual = v.copy()
        for r, pc in enumerate(pivots):
            if residual[pc]:
                residual = self.field.sub(residual, self.field.mul(basis[r], int(residual[pc])))
        return not np.any(residual)

    def contains_all_one(self) -> bool:
        return self.contains(np.ones(self.n, dtype=np.int64))

    def encode(self, message: Sequence[int]) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64)
        if msg.shape != (self.k,):
            raise ValueError("message has the wrong length")
        terms = self.field.mul(msg[:, None], self.basis)
        return np.asarray(self.field.sum(terms, axis=0))

    def dual_basis(self) -> np.ndarray:
        if self.k == 0:
            return np.eye(self.n, dtype=np.int64)
        return nullspace(self.field, self.basis)

    def dual(self) -> "LinearCode":
        return LinearCode(self.field, self.dual_basis(), n=self.n)

    def column_vectors(self) -> np.ndarray:
        """Columns of the reduced basis, shape (n, k)."""
        return self.basis.T.copy()


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    k: int
    q: int
    counts: dict

    def __post_init__(self):
        clean = {int(w): int(c) for w, c in self.counts.items() if int(c) != 0}
        object.__setattr__(self, "counts", dict(sorted(clean.items())))
        if any(w < 0 or w > self.n for w in self.counts):
            raise ValueError("weights must lie in [0, n]")

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def is_consistent(self) -> bool:
        return self.counts.get(0) == 1 and self.total == self.q**self.k

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w in self.counts if w > 0]

    @property
    def min_distance(self) -> int:
        nz = self.nonzero_weights
        return nz[0] if nz else 0

    def get(self, w: int) -> int:
        return self.counts.get(w, 0)

    def vector(self) -> list[int]:
        return [self.get(i) for i in range(self.n + 1)]

    def as_dict(self) -> dict:
        return {str(w): c for w, c in self.counts.items()}

    @classmethod
    def from_vector(cls, n: int, k: int, q: int, vec: Sequence[int]) -> "WeightDistribution":
        return cls(n, k, q, {i: int(c) for i, c in enumerate(vec) if c})


def _span_table(gens: np.ndarray, p: int) -> np.ndarray:
    """All p^g combinations of the given GF(p) vectors."""
    table = np.zeros((1, gens.shape[1]), dtype=np.int8)
    for g in gens:
        layers = [table]
        for c in range(1, p):
            layers.append(((table.astype(np.int16) + c * g.astype(np.int16)) % p).astype(np.int8))
        table = np.concatenate(layers, axis=0)
    return table


def value_count_histogram(
    spec: FieldSpec,
    rows: np.ndarray,
    value: int = 0,
    budget: int | None = None,
    workers: int = 1,
) -> list[int]:
    """Histogram over all GF(q)-combinations of ``rows`` of how many coordinates equal ``value``.

    Every one of the q^r coefficient vectors is visited once, r = len(rows).
    The message space is split into contiguous ranges, one per worker, and the
    per-range histograms are merged by exact addition.
    """
    budget = default_budget() if budget is None else budget
    rows = np.asarray(rows, dtype=np.int64)
    r, n = rows.shape
    size = spec.q**r
    if size > budget:
        raise BudgetExceeded("enumeration", size, budget)
    p, d = spec.p, spec.d
    gens = []
    for row in rows:
        for j in range(d):
            gens.append(spec.to_digits(spec.mul(row, p**j)).reshape(-1))
    gens = np.array(gens, dtype=np.int8).reshape(len(gens), n * d)
    total_gens = gens.shape[0]
    width = n * d
    lo_count = 0
    while lo_count < total_gens and p ** (lo_count + 1) * width <= _TABLE_CELLS:
        lo_count += 1
    lo_count = max(lo_count, min(total_gens, 1))
    lo = _span_table(gens[:lo_count], p)
    hi_gens = gens[lo_count:].astype(np.int64)
    hi_total = p ** hi_gens.shape[0]
    target = spec.to_digits(np.full(n, value, dtype=np.int64)).reshape(-1)

    def chunk(bounds: tuple[int, int]) -> np.ndarray:
        start, stop = bounds
        hist = np.zeros(n + 1, dtype=np.int64)
        for block in range(start, stop, 4096):
            idx = np.arange(block, min(stop, block + 4096), dtype=np.int64)
            if hi_gens.shape[0]:
                digits = (idx[:, None] // (p ** np.arange(hi_gens.shape[0]))[None, :]) % p
                hi_vecs = (digits @ hi_gens) % p
            else:
                hi_vecs = np.zeros((len(idx), width), dtype=np.int64)
            need = ((target[None, :] - hi_vecs) % p).astype(np.int8)
            for t in need:
                eq = lo == t
                if d == 1:
                    hits = np.count_nonzero(eq, axis=1)
                else:
                    hits = np.count_nonzero(eq.reshape(-1, n, d).all(axis=2), axis=1)
                hist += np.bincount(hits, minlength=n + 1)
        return hist

    workers = max(1, int(workers))
    cuts = np.linspace(0, hi_total, workers + 1).astype(np.int64)
    ranges = [(int(a), int(b)) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]
    if len(ranges) <= 1:
        parts = [chunk(rg) for rg in ranges]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk, ranges))
    counts = [0] * (n + 1)
    for part in parts:
        for i, c in enumerate(part.tolist()):
            counts[i] += c
    return counts


def weight_distribution(
    code: LinearCode, budget: int | None = None, workers: int = 1
) -> WeightDistribution:
    """Exact weight distribution by enumerating all q^k codewords."""
    budget = default_budget() if budget is None else budget
    size = code.q**code.k
    if size > budget:
        raise BudgetExceeded("weight enumeration", size, budget)
    n = code.n
    if code.k == 0:
        return WeightDistribution(n, 0, code.q, {0: 1})
    zeros = value_count_histogram(code.field, code.basis, 0, budget, workers)
    counts = [0] * (n + 1)
    for z, c in enumerate(zeros):
        counts[n - z] += c
    return WeightDistribution.from_vector(n, code.k, code.q, counts)


def weight_distribution_bruteforce(code: LinearCode) -> WeightDistribution:
    """Reference enumeration via explicit encoding of every message."""
    spec = code.field
    counts = [0] * (code.n + 1)
    for msg in product(range(spec.q), repeat=code.k):
        word = code.encode(msg) if code.k else np.zeros(code.n, dtype=np.int64)
        counts[int(np.count_nonzero(word))] += 1
    return WeightDistribution.from_vector(code.n, code.k, code.q, counts)


def is_self_orthogonal(code: LinearCode) -> bool:
    """True iff G G^T = 0 over GF(q)."""
    spec = code.field
    g = code.basis
    for i in range(g.shape[0]):
        prods = spec.mul(g[i][None, :], g[i:])
        if np.any(np.asarray(spec.sum(prods, axis=1)) != 0):
            return False
    return True


def divisor(wd: WeightDistribution) -> int:
    """gcd of nonzero weights; 0 for the zero code."""
    g = 0
    for w in wd.nonzero_weights:
        g = math.gcd(g, w)
    return g


def extend(code: LinearCode) -> LinearCode:
    """Append a parity coordinate making every coordinate sum zero."""
    spec = code.field
    src = code.rows
    parity = spec.neg(np.asarray(spec.sum(src, axis=1))) if src.shape[0] else np.zeros(0)
    rows = np.concatenate([src, np.asarray(parity, dtype=np.int64)[:, None]], axis=1)
    return LinearCode(spec, rows, n=code.n + 1)


def augment(code: LinearCode) -> LinearCode:
    """Add the all-1 vector to the generators."""
    if code.contains_all_one():
        raise ValueError("all-1 vector is already a codeword")
    ones = np.ones((1, code.n), dtype=np.int64)
    return LinearCode(code.field, np.concatenate([code.rows, ones], axis=0), n=code.n)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    return np.convolve(np.array(a, dtype=object), np.array(b, dtype=object)).tolist()


def _poly_pow(base: list[int], e: int) -> list[int]:
    result = [1]
    cur = list(base)
    while e:
        if e & 1:
            result = _poly_mul(result, cur)
        cur = _poly_mul(cur, cur)
        e >>= 1
    return result


def macwilliams_transform(n: int, q: int, vec: Sequence[int], k: int) -> list[int]:
    """Dual distribution vector; exact division by q^k is enforced."""
    acc = [0] * (n + 1)
    for i, a in enumerate(vec):
        if not a:
            continue
        poly = _poly_mul(_poly_pow([1, -1], i), _poly_pow([1, q - 1], n - i))
        for j, c in enumerate(poly):
            acc[j] += a * c
    denom = q**k
    out = []
    for j, c in enumerate(acc):
        if c % denom:
            raise ValueError(f"dual coefficient {j} is not integral; input is inconsistent")
        out.append(c // denom)
    return out


@dataclass(frozen=True)
class DualSummary:
    dual: WeightDistribution
    d_perp: int
    a_perp: tuple

    def as_dict(self) -> dict:
        return {
            "d_perp": self.d_perp,
            "a_perp": list(self.a_perp),
            "dual_weights": self.dual.as_dict(),
        }


def macwilliams(wd: WeightDistribution) -> DualSummary:
    if not wd.is_consistent():
        raise ValueError("weight distribution does not total q^k")
    vec = macwilliams_transform(wd.n, wd.q, wd.vector(), wd.k)
    dual = WeightDistribution.from_vector(wd.n, wd.n - wd.k, wd.q, vec)
    if not dual.is_consistent():
        raise ValueError("dual distribution is inconsistent")
    a_perp = tuple(dual.get(i) for i in range(1, 7))
    return DualSummary(dual=dual, d_perp=dual.min_distance, a_perp=a_perp)


@dataclass(frozen=True)
class PlessResult:
    ok: bool
    failed_moment: int | None


def pless_verify(wd: WeightDistribution, a1: int, a2: int, a3: int) -> PlessResult:
    """Check the first four power moments against A1..A3 of the dual."""
    n, q, k = wd.n, wd.q, wd.k
    s = [sum(w**v * c for w, c in wd.counts.items()) for v in range(4)]
    # both sides scaled by q^3 so that k < 3 stays integral
    rhs = [
        q ** (k + 3),
        q ** (k + 2) * (q * n - n - a1),
        q ** (k + 1)
        * ((q - 1) * n * (q * n - n + 1) - (2 * q * n - q - 2 * n + 2) * a1 + 2 * a2),
        q**k
        * (
            (q - 1) * n * (q * q * n * n - 2 * q * n * n + 3 * q * n - q + n * n - 3 * n + 2)
            - (
                3 * q * q * n * n
                - 3 * q * q * n
                - 6 * q * n * n
                + 12 * q * n
                + q * q
                - 6 * q
                + 3 * n * n
                - 9 * n
                + 6
            )
            * a1
            + 6 * (q * n - q - n + 2) * a2
            - 6 * a3
        ),
    ]
    for v in range(4):
        if s[v] * q**3 != rhs[v]:
            return PlessResult(False, v)
    return PlessResult(True, None)


def hamming_bound_violated(n: int, k: int, d: int, q: int) -> bool:
    t = (d - 1) // 2
    ball = sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))
    return ball * q**k > q**n


def griesmer_sum(k: int, d: int, q: int) -> int:
    return sum(-(-d // q**i) for i in range(k))


@dataclass(frozen=True)
class BoundsReport:
    n: int
    k: int
    d: int
    q: int
    griesmer_sum: int
    griesmer_met: bool
    sphere_packing_class: str
    hamming_inconclusive: bool
    griesmer_class: str

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def bounds_audit(n: int, k: int, d: int, q: int) -> BoundsReport:
    """Griesmer equality and Hamming-bound classification of an [n,k,d]_q code."""
    if not (1 <= k <= n and 1 <= d <= n):
        raise ValueError("need 1 <= k <= n and 1 <= d <= n")
    gs = griesmer_sum(k, d, q)
    if hamming_bound_violated(n, k, d + 1, q):
        sp = "optimal"
    elif hamming_bound_violated(n, k, d + 2, q):
        sp = "almost-optimal"
    else:
        sp = "neither"
    if griesmer_sum(k, d + 1, q) > n:
        gc = "optimal"
    elif griesmer_sum(k, d + 2, q) > n:
        gc = "almost-optimal"
    else:
        gc = "neither"
    return BoundsReport(
        n=n,
        k=k,
        d=d,
        q=q,
        griesmer_sum=gs,
        griesmer_met=gs == n,
        sphere_packing_class=sp,
        hamming_inconclusive=sp == "neither",
        griesmer_class=gc,
    )


def _normalized_columns(code: LinearCode) -> np.ndarray | None:
    spec = code.field
    cols = code.column_vectors()
    out = np.empty_like(cols)
    for j, col in enumerate(cols):
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            return None
        out[j] = spec.mul(col, spec.inv(int(col[nz[0]])))
    return out


def is_projective(code: LinearCode) -> bool:
    """No zero column and no two proportional columns."""
    cols = _normalized_columns(code)
    if cols is None:
        return False
    return len({tuple(c) for c in cols.tolist()}) == code.n


# low weight dual words by meet in the middle over column combinations


class _ColumnSums:
    """Weighted sums of columns, encoded as GF(p) digit vectors."""

    def __init__(self, code: LinearCode):
        spec = code.field
        self.spec = spec
        self.p = spec.p
        cols = code.column_vectors()
        scalars = np.arange(1, spec.q, dtype=np.int64)
        scaled = spec.mul(cols[:, None, :], scalars[None, :, None])
        # shape (n, q-1, k*d)
        self.vectors = spec.to_digits(scaled).reshape(code.n, spec.q - 1, -1).astype(np.int64)
        self.scalars = scalars
        self.width = self.vectors.shape[2]
        self.radix = self.p ** np.arange(self.width, dtype=object)

    def combos(self, pool: Sequence[int], size: int):
        """All (support, coefficient index) pairs of a given size from pool."""
        q1 = len(self.scalars)
        if size == 0:
            return (
                np.zeros((1, 0), dtype=np.int64),
                np.zeros((1, 0), dtype=np.int64),
                np.zeros((1, self.width), dtype=np.int64),
            )
        subsets = np.array(list(combinations(pool, size)), dtype=np.int64).reshape(-1, size)
        coefs = np.array(list(product(range(q1), repeat=size)), dtype=np.int64)
        sup = np.repeat(subsets, len(coefs), axis=0)
        cf = np.tile(coefs, (len(subsets), 1))
        vec = np.zeros((len(sup), self.width), dtype=np.int64)
        for pos in range(size):
            vec += self.vectors[sup[:, pos], cf[:, pos]]
        return sup, cf, vec % self.p

    def keys(self, vec: np.ndarray) -> np.ndarray:
        if self.p**self.width < 2**62:
            w = (self.p ** np.arange(self.width, dtype=np.int64))
            return vec @ w
        return np.array([hash(r.tobytes()) for r in vec.astype(np.int8)], dtype=np.int64)


def _meet(cs: _ColumnSums, pool: Sequence[int], size: int, target: np.ndarray | None):
    """Yield (support, coefficient codes) with sum of weighted columns = target."""
    left_size = (size + 1) // 2
    right_size = size - left_size
    ls, lc, lv = cs.combos(pool, left_size)
    rs, rc, rv = cs.combos(pool, right_size)
    tgt = np.zeros(cs.width, dtype=np.int64) if target is None else target
    need = (tgt[None, :] - lv) % cs.p
    rkeys = cs.keys(rv)
    order = np.argsort(rkeys, kind="stable")
    sorted_keys = rkeys[order]
    nkeys = cs.keys(need)
    lo = np.searchsorted(sorted_keys, nkeys, side="left")
    hi = np.searchsorted(sorted_keys, nkeys, side="right")
    results = []
    for i in np.nonzero(hi > lo)[0]:
        lmax = ls[i, -1] if left_size else -1
        for j in order[lo[i] : hi[i]]:
            if right_size and rs[j, 0] <= lmax:
                continue
            if not np.array_equal((lv[i] + rv[j]) % cs.p, tgt % cs.p):
                continue
            support = tuple(int(x) for x in ls[i]) + tuple(int(x) for x in rs[j])
            coef = tuple(int(cs.scalars[c]) for c in lc[i]) + tuple(
                int(cs.scalars[c]) for c in rc[j]
            )
            results.append((support, coef))
    results.sort()
    return results


@dataclass(frozen=True)
class DualWord:
    support: tuple
    values: tuple

    def vector(self, n: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        v[list(self.support)] = self.values
        return v


def meet_cells(n: int, q: int, size: int, width: int) -> int:
    """Table cells held by a meet-in-the-middle search for ``size`` columns out of n."""
    total = 0
    for half in ((size + 1) // 2, size // 2):
        rows = math.comb(n, half) * (q - 1) ** half
        total += rows * (width + 2 * half)
    return total


def low_weight_dual_budget(n: int, q: int, w_max: int, width: int = 1) -> int:
    return sum(meet_cells(n, q, w, width) for w in range(1, w_max + 1))


def low_weight_dual_words(
    code: LinearCode, w_max: int, budget: int | None = None
) -> dict[int, list[DualWord]]:
    """All dual codewords of weight 1..w_max, grouped by weight."""
    budget = default_budget() if budget is None else budget
    need = low_weight_dual_budget(code.n, code.q, w_max, code.k * code.field.d)
    if need > budget:
        raise BudgetExceeded("low weight dual search", need, budget)
    out: dict[int, list[DualWord]] = {}
    if code.k == code.n:
        return out
    cs = _ColumnSums(code)
    pool = list(range(code.n))
    for w in range(1, w_max + 1):
        found = _meet(cs, pool, w, None)
        if found:
            out[w] = [DualWord(s, c) for s, c in found]
    return out


def column_combinations(code: LinearCode, column: int, size: int) -> list[tuple]:
    """Ways to write a column as a combination of exactly ``size`` other columns."""
    cs = _ColumnSums(code)
    pool = [j for j in range(code.n) if j != column]
    target = cs.vectors[column, 0]
    return _meet(cs, pool, size, target)


# serialization


def write_code(code: LinearCode, path: str, k_declared: int | None = None) -> None:
    k_decl = code.k if k_declared is None else k_declared
    lines = [f"{code.q} {code.n} {k_decl}", code.field.descriptor()]
    lines += [" ".join(str(int(x)) for x in row) for row in code.rows]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_code(path: str) -> LinearCode:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) < 2:
        raise ValueError("code file needs a header and a field descriptor")
    q, n, k_decl = (int(x) for x in lines[0].split())
    spec = field_from_descriptor(lines[1])
    if spec.q != q:
        raise ValueError("field descriptor disagrees with q")
    rows = [[int(x) for x in ln.split()] for ln in lines[2:]]
    code = LinearCode(spec, rows, n=n)
    if code.k != k_decl:
        raise ValueError(f"declared k={k_decl} but rank is {code.k}")
    return code
