"""Audits: divisibility and self-orthogonality, two-weight and Griesmer
corollaries, support designs and locality."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .code_core import (
    BudgetExceeded,
    DualSummary,
    LinearCode,
    WeightDistribution,
    _ColumnSums,
    default_budget,
    divisor,
    griesmer_sum,
    is_projective,
    is_self_orthogonal,
    low_weight_dual_words,
    meet_cells,
    weight_distribution,
)

FULL_DESIGN_MAX_N = 30
DESIGN_SAMPLE = 2000


@dataclass
class Audit:
    name: str
    applicable: bool
    holds: bool | None
    details: dict = field(default_factory=dict)
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "details": self.details,
            "reason": self.reason,
        }


def _wd(code: LinearCode, wd: WeightDistribution | None, budget: int | None) -> WeightDistribution:
    return weight_distribution(code, budget) if wd is None else wd


def _p_power(value: int, p: int) -> int:
    """Largest power of p dividing value (value > 0)."""
    out = 1
    while value % (out * p) == 0:
        out *= p
    return out


def check_divisible_so_theorem(
    code: LinearCode, wd: WeightDistribution | None = None, budget: int | None = None
) -> Audit:
    """1 in C and p-divisible implies self-orthogonal."""
    p = code.field.p
    if p == 2:
        return Audit("divisible_self_orthogonal", False, None, reason="odd characteristic required")
    wd = _wd(code, wd, budget)
    one = code.contains_all_one()
    div = divisor(wd)
    p_div = div % p == 0
    so = is_self_orthogonal(code)
    details = {"contains_one": one, "divisor": div, "p_divisible": p_div, "self_orthogonal": so}
    if one and p_div:
        return Audit("divisible_self_orthogonal", True, so, details)
    if so:
        details["converse_counterexample"] = True
    return Audit("divisible_self_orthogonal", True, True, details, reason="hypothesis not met")


def is_macdonald_shape(n: int, k: int, q: int, weights: list[int]) -> bool:
    return n == (q**k - q) // (q - 1) and sorted(weights) == [q ** (k - 1) - 1, q ** (k - 1)]


def audit_projective_two_weight(
    code: LinearCode, wd: WeightDistribution | None = None, budget: int | None = None
) -> Audit:
    name = "projective_two_weight"
    if code.k < 3:
        return Audit(name, False, None, reason="dimension below 3")
    if not is_projective(code):
        return Audit(name, False, None, reason="not projective")
    wd = _wd(code, wd, budget)
    weights = wd.nonzero_weights
    if len(weights) != 2:
        return Audit(name, False, None, reason=f"{len(weights)} nonzero weights")
    p, q = code.field.p, code.q
    details = {"weights": weights}
    if is_macdonald_shape(code.n, code.k, q, weights):
        details["macdonald"] = True
        return Audit(name, True, True, details, reason="MacDonald parameters, divisibility exempt")
    p_div = divisor(wd) % p == 0
    details["p_divisible"] = p_div
    holds = p_div
    if code.contains_all_one():
        so = is_self_orthogonal(code)
        details["contains_one"] = True
        details["self_orthogonal"] = so
        holds = holds and so
    return Audit(name, True, holds, details)


def audit_griesmer(
    code: LinearCode, wd: WeightDistribution | None = None, budget: int | None = None
) -> Audit:
    name = "griesmer"
    if code.field.d != 1:
        return Audit(name, False, None, reason="stated over prime fields only")
    wd = _wd(code, wd, budget)
    n, k, d, p = code.n, code.k, wd.min_distance, code.field.p
    if d == 0:
        return Audit(name, False, None, reason="zero code")
    met = griesmer_sum(k, d, p) == n
    details = {"griesmer_sum": griesmer_sum(k, d, p), "griesmer_met": met}
    if not met:
        return Audit(name, False, None, details, reason="Griesmer bound not met")
    if d % p:
        return Audit(name, False, None, details, reason="p does not divide d")
    if not code.contains_all_one():
        return Audit(name, False, None, details, reason="all-one vector not in code")
    pe = _p_power(d, p)
    div = divisor(wd)
    so = is_self_orthogonal(code)
    details.update({"p_power_of_d": pe, "divisor": div, "self_orthogonal": so})
    return Audit(name, True, div % pe == 0 and so, details)


# ---------------------------------------------------------------- designs


@dataclass
class DesignWitness:
    t: int
    n: int
    kappa: int
    lam: int | None
    blocks: int
    mode: str
    sample_size: int | None
    in_dual: bool
    holds: bool
    count_matches: bool
    assmus_mattson: bool

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "n": self.n,
            "kappa": self.kappa,
            "lambda": self.lam,
            "blocks": self.blocks,
            "mode": self.mode,
            "sample_size": self.sample_size,
            "in_dual": self.in_dual,
            "holds": self.holds,
            "count_matches": self.count_matches,
            "assmus_mattson": self.assmus_mattson,
        }


def am_bound(n: int, q: int, d: int) -> int:
    """Largest w <= n with w - floor((w+q-2)/(q-1)) < d."""
    best = 0
    for w in range(n + 1):
        if w - (w + q - 2) // (q - 1) < d:
            best = w
    return best


def assmus_mattson(wd: WeightDistribution, dual: DualSummary, t: int) -> tuple[bool, int, int]:
    """Applicability of Assmus-Mattson at strength t, with the ranges w and w-perp."""
    n, q, d, dp = wd.n, wd.q, wd.min_distance, dual.d_perp
    w = am_bound(n, q, d)
    wp = am_bound(n, q, dp)
    count = sum(1 for i in range(1, n - t + 1) if wd.get(i))
    ok = 1 <= t < d and count <= dp - t
    return ok, w, wp


def codewords_of_weight(code: LinearCode, kappa: int, budget: int | None = None) -> np.ndarray:
    """All codewords of weight kappa, one row each."""
    budget = default_budget() if budget is None else budget
    spec, k = code.field, code.k
    size = code.q**k
    if size > budget:
        raise BudgetExceeded("codeword listing", size, budget)
    basis = code.basis
    out = []
    chunk = 1 << 14
    radix = code.q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(0, size, chunk):
        idx = np.arange(start, min(size, start + chunk), dtype=np.int64)
        msgs = (idx[:, None] // radix[None, :]) % code.q
        words = np.asarray(spec.sum(spec.mul(msgs[:, :, None], basis[None, :, :]), axis=1))
        hit = np.count_nonzero(words, axis=1) == kappa
        if hit.any():
            out.append(words[hit])
    if not out:
        return np.zeros((0, code.n), dtype=np.int64)
    return np.vstack(out)


def _supports(words: np.ndarray) -> np.ndarray:
    """Distinct supports as a 0/1 incidence matrix (scalar multiples merge)."""
    if len(words) == 0:
        return np.zeros((0, words.shape[1] if words.ndim == 2 else 0), dtype=np.int64)
    inc = (words != 0).astype(np.uint8)
    return np.unique(inc, axis=0).astype(np.int64)


def _check_design(inc: np.ndarray, t: int, mode: str, rng: np.random.Generator):
    n = inc.shape[1]
    if mode == "full":
        counts = {int(inc[:, list(s)].all(axis=1).sum()) for s in combinations(range(n), t)}
        return counts, None
    counts = set()
    for _ in range(DESIGN_SAMPLE):
        s = rng.choice(n, size=t, replace=False)
        counts.add(int(inc[:, s].all(axis=1).sum()))
    return counts, DESIGN_SAMPLE


def extract_designs(
    code: LinearCode,
    wd: WeightDistribution,
    dual: DualSummary,
    kappas: list[int],
    t: int,
    budget: int | None = None,
    in_dual: bool = False,
    seed: int = 0,
) -> list[DesignWitness]:
    """Check whether supports of weight-kappa words (of C or of its dual) form t-designs."""
    if t < 1:
        raise ValueError("t must be positive")
    n, q = code.n, code.q
    ref = dual.dual if in_dual else wd
    am_ok, w, wp = assmus_mattson(wd, dual, t)
    lo, hi = (dual.d_perp, wp) if in_dual else (wd.min_distance, w)
    mode = "full" if n <= FULL_DESIGN_MAX_N and t <= 2 else "sampled"
    rng = np.random.default_rng(seed)
    out = []
    for kappa in kappas:
        a = ref.get(kappa)
        if in_dual:
            words = low_weight_dual_words(code, kappa, budget).get(kappa, [])
            vecs = np.array([dw.vector(n) for dw in words], dtype=np.int64).reshape(-1, n)
        else:
            vecs = codewords_of_weight(code, kappa, budget)
        inc = _supports(vecs)
        blocks = inc.shape[0]
        count_ok = blocks * (q - 1) == a
        counts, sample = _check_design(inc, t, mode, rng) if blocks else ({0}, None)
        holds = blocks > 0 and len(counts) == 1
        lam = counts.pop() if holds else None
        if holds and mode == "full":
            # lambda C(n,t) = C(kappa,t) A_kappa/(q-1)
            holds = lam * math.comb(n, t) * (q - 1) == math.comb(kappa, t) * a
        out.append(
            DesignWitness(
                t, n, kappa, lam, blocks, mode, sample, in_dual, holds, count_ok,
                am_ok and a != 0 and lo <= kappa <= hi,
            )
        )
    return out


# ---------------------------------------------------------------- locality


@dataclass
class LocalityWitness:
    r: int
    repairs: dict[int, tuple[tuple[int, ...], tuple[int, ...]]]
    lemma_r: int | None = None
    lemma_applies: bool = False

    def check(self, code: LinearCode) -> bool:
        """Every column equals its stated combination."""
        spec = code.field
        cols = code.column_vectors()
        for i, (support, coefs) in self.repairs.items():
            acc = np.zeros(code.k, dtype=np.int64)
            for j, c in zip(support, coefs):
                acc = spec.add(acc, spec.mul(cols[j], c))
            if not np.array_equal(acc, cols[i]):
                return False
        return True

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "lemma_r": self.lemma_r,
            "lemma_applies": self.lemma_applies,
            "repairs": {str(i): {"support": list(s), "coefficients": list(c)} for i, (s, c) in sorted(self.repairs.items())},
        }


class LocalityError(ValueError):
    pass


class _RepairTables:
    """Meet-in-the-middle tables over all columns, built once per size."""

    def __init__(self, code: LinearCode):
        self.cs = _ColumnSums(code)
        self.pool = list(range(code.n))
        self.sizes: dict[int, tuple] = {}

    def _tables(self, size: int) -> tuple:
        if size not in self.sizes:
            cs = self.cs
            ls, lc, lv = cs.combos(self.pool, (size + 1) // 2)
            rs, rc, rv = cs.combos(self.pool, size // 2)
            rkeys = cs.keys(rv)
            order = np.argsort(rkeys, kind="stable")
            self.sizes[size] = (ls, lc, lv, rs, rc, order, rkeys[order])
        return self.sizes[size]

    def search(self, column: int, size: int):
        """Lexicographically first (support, coefficients) repairing ``column``."""
        cs = self.cs
        ls, lc, lv, rs, rc, order, keys = self._tables(size)
        target = cs.vectors[column, 0]
        need = cs.keys((target[None, :] - lv) % cs.p)
        lo = np.searchsorted(keys, need, side="left")
        hi = np.searchsorted(keys, need, side="right")
        counts = hi - lo
        total = int(counts.sum())
        if total == 0:
            return None
        left = np.repeat(np.arange(len(lo)), counts)
        first = np.repeat(lo - np.concatenate([[0], np.cumsum(counts)[:-1]]), counts)
        right = order[np.arange(total) + first]
        sup = np.hstack([ls[left], rs[right]])
        cf = np.hstack([lc[left], rc[right]])
        keep = ~np.any(sup == column, axis=1)
        if rs.shape[1] and ls.shape[1]:
            keep &= rs[right, 0] > ls[left, -1]
        # hashed keys can collide; confirm the sum
        vec = (lv[left] + cs.vectors[sup[:, ls.shape[1]:], cf[:, ls.shape[1]:]].sum(axis=1)) % cs.p
        keep &= np.all(vec == target % cs.p, axis=1)
        if not keep.any():
            return None
        sup, cf = sup[keep], cf[keep]
        pick = np.lexsort(np.hstack([sup, cf]).T[::-1])[0]
        support = tuple(int(x) for x in sup[pick])
        coefs = tuple(int(cs.scalars[c]) for c in cf[pick])
        return support, coefs


def _column_repair(tables: _RepairTables, i: int, r_max: int):
    for size in range(1, r_max + 1):
        found = tables.search(i, size)
        if found:
            return found
    return None


def lemma_locality(code: LinearCode, dual: DualSummary, budget: int | None = None) -> int | None:
    """d-perp - 1 when minimum-weight dual supports form a 1-design, else None."""
    dp = dual.d_perp
    if dp < 2:
        return None
    words = low_weight_dual_words(code, dp, budget).get(dp, [])
    if not words:
        return None
    inc = _supports(np.array([w.vector(code.n) for w in words], dtype=np.int64))
    per_point = set(inc.sum(axis=0).tolist())
    if len(per_point) != 1 or 0 in per_point:
        return None
    return dp - 1


def locality(
    code: LinearCode,
    r_max: int = 6,
    budget: int | None = None,
    dual: DualSummary | None = None,
    workers: int = 1,
) -> LocalityWitness:
    """Smallest r such that every column is a combination of at most r others."""
    cols = code.column_vectors()
    zero = [i for i in range(code.n) if not cols[i].any()]
    if zero:
        raise LocalityError(f"zero column at {zero[0]}")
    budget = default_budget() if budget is None else budget
    width = code.k * code.field.d
    need = sum(meet_cells(code.n, code.q, size, width) for size in range(1, r_max + 1))
    if need > budget:
        raise BudgetExceeded("locality search", need, budget)
    tables = _RepairTables(code)
    for size in range(1, r_max + 1):
        tables._tables(size)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        found = list(pool.map(lambda i: _column_repair(tables, i, r_max), range(code.n)))
    missing = [i for i, f in enumerate(found) if f is None]
    if missing:
        raise LocalityError(f"locality > {r_max} (column {missing[0]})")
    repairs = {i: f for i, f in enumerate(found)}
    r = max(len(s) for s, _ in repairs.values())
    wit = LocalityWitness(r, repairs)
    if dual is not None and dual.d_perp <= r_max + 1:
        try:
            wit.lemma_r = lemma_locality(code, dual, budget)
        except BudgetExceeded:
            wit.lemma_r = None
        wit.lemma_applies = wit.lemma_r is not None
    return wit
