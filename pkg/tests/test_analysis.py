from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ortholab.analysis import (
    LocalityError,
    am_bound,
    assmus_mattson,
    audit_griesmer,
    audit_projective_two_weight,
    check_divisible_so_theorem,
    codewords_of_weight,
    extract_designs,
    lemma_locality,
    locality,
)
from ortholab.code_core import BudgetExceeded, LinearCode, macwilliams, weight_distribution
from ortholab.galois import field_create

from conftest import checked_wd, family, family_wd, random_code

GF3 = field_create(3, 1)
GF5 = field_create(5, 1)


def simplex(spec, k):
    cols = []
    for v in product(range(spec.q), repeat=k):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            cols.append(v)
    return LinearCode(spec, np.array(cols).T)


def brute_locality(code):
    """Max over columns of the smallest repair set, by trying every subset and coefficient."""
    spec, cols = code.field, code.column_vectors()
    worst = 0
    for i in range(code.n):
        others = [j for j in range(code.n) if j != i]
        best = None
        for r in range(1, code.n):
            for sub in combinations(others, r):
                for coefs in product(range(1, spec.q), repeat=r):
                    acc = np.zeros(code.k, dtype=np.int64)
                    for j, c in zip(sub, coefs):
                        acc = spec.add(acc, spec.mul(cols[j], c))
                    if np.array_equal(acc, cols[i]):
                        best = r
                        break
                if best:
                    break
            if best:
                break
        assert best is not None
        worst = max(worst, best)
    return worst


def test_divisible_so_on_families():
    for text in ["family=defset q=3 m=3", "family=bch2 q=3 m=3", "family=c4 p=3 e=1 s=2", "family=grm q=3 m=2 rho=1"]:
        wd, _ = family_wd(text)
        audit = check_divisible_so_theorem(family(text), wd)
        assert audit.applicable and audit.holds
        assert audit.details["contains_one"] and audit.details["p_divisible"]


def test_divisible_so_hypothesis_not_met():
    audit = check_divisible_so_theorem(family("family=grs q=27 k=3"))
    assert audit.reason == "hypothesis not met"
    assert audit.details["converse_counterexample"]


def test_macdonald_code_is_exempt():
    full = simplex(GF3, 3)
    assert full.n == 13
    cols = full.column_vectors()
    code = LinearCode(GF3, cols[1:].T)
    wd = weight_distribution(code)
    assert wd.nonzero_weights == [8, 9]
    audit = audit_projective_two_weight(code, wd)
    assert audit.applicable and audit.holds and audit.details["macdonald"]


def test_two_weight_defset():
    code = family("family=defset q=3 m=3")
    audit = audit_projective_two_weight(code)
    assert audit.applicable and audit.holds
    assert audit.details["self_orthogonal"]


def test_two_weight_not_applicable():
    assert not audit_projective_two_weight(LinearCode(GF3, [[1, 0, 1], [0, 1, 1]])).applicable
    assert not audit_projective_two_weight(family("family=lrc1 q=3 m=4 m1=1 m2=1")).applicable


def test_griesmer_audit():
    code = family("family=defset q=3 m=3")
    audit = audit_griesmer(code)
    assert audit.details["griesmer_met"]
    assert audit.holds
    grs = audit_griesmer(family("family=grs q=27 k=3"))
    assert not grs.applicable


def test_am_bound():
    # w - floor((w+1)/2) < d over GF(3)
    for d in range(1, 10):
        w = am_bound(40, 3, d)
        assert w - (w + 1) // 2 < d
        assert w == 40 or (w + 1) - (w + 2) // 2 >= d


def test_bch2_designs_full():
    code = family("family=bch2 q=3 m=3")
    wd, dual = family_wd("family=bch2 q=3 m=3")
    (primal,) = extract_designs(code, wd, dual, [15], 2)
    assert primal.mode == "full" and primal.holds and primal.lam == 105
    assert primal.count_matches
    (in_dual,) = extract_designs(code, wd, dual, [5], 2, in_dual=True)
    assert in_dual.holds and in_dual.lam == 20 and in_dual.count_matches


def test_design_brute_force_lambda():
    code = family("family=bch2 q=3 m=3")
    words = codewords_of_weight(code, 15)
    supports = {tuple(np.nonzero(w)[0]) for w in words}
    for pair in [(0, 1), (3, 17), (25, 26)]:
        assert sum(1 for s in supports if set(pair) <= set(s)) == 105


def test_assmus_mattson_range():
    wd, dual = family_wd("family=bch2 q=3 m=3")
    ok, w, wp = assmus_mattson(wd, dual, 2)
    assert isinstance(ok, bool) and w >= wd.min_distance and wp >= dual.d_perp


def test_design_rejects_bad_t():
    wd, dual = family_wd("family=defset q=3 m=3")
    with pytest.raises(ValueError):
        extract_designs(family("family=defset q=3 m=3"), wd, dual, [6], 0)


def test_codeword_listing_budget():
    with pytest.raises(BudgetExceeded):
        codewords_of_weight(family("family=grs q=27 k=3"), 25, budget=10)


@pytest.mark.parametrize(
    "text,r",
    [
        ("family=bch2 q=3 m=3", 4),
        ("family=lrc1 q=3 m=4 m1=1 m2=1", 2),
        ("family=bent p=3 m=4", 2),
    ],
)
def test_family_locality(text, r):
    code = family(text)
    _, dual = family_wd(text)
    wit = locality(code, r_max=r, dual=dual)
    assert wit.r == r
    assert wit.check(code)


def test_locality_lemma_equality():
    code = family("family=bch2 q=3 m=3")
    _, dual = family_wd("family=bch2 q=3 m=3")
    assert lemma_locality(code, dual) == dual.d_perp - 1 == 4


def test_locality_zero_column():
    with pytest.raises(LocalityError):
        locality(LinearCode(GF3, [[1, 0, 1], [1, 0, 2]]))


def test_locality_too_small_rmax():
    code = family("family=bch2 q=3 m=3")
    with pytest.raises(LocalityError):
        locality(code, r_max=3)


@pytest.mark.parametrize("seed", range(6))
def test_locality_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    spec = GF3 if seed % 2 else GF5
    n = 7 if spec is GF3 else 6
    code = random_code(rng, spec, 3, n)
    while not code.column_vectors().any(axis=1).all():
        code = random_code(rng, spec, 3, n)
    wit = locality(code, r_max=n - 1)
    assert wit.check(code)
    assert wit.r == brute_locality(code)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_planted_dependency(seed, r):
    rng = np.random.default_rng(seed)
    code = random_code(rng, GF3, 4, 9)
    rows = code.rows.copy()
    if rows.shape[0] < 4:
        return
    rows[:, 0] = 0
    for j, c in zip(range(1, r + 1), rng.integers(1, 3, size=r)):
        rows[:, 0] = GF3.add(rows[:, 0], GF3.mul(rows[:, j], int(c)))
    planted = LinearCode(GF3, rows)
    if not planted.column_vectors().any(axis=1).all():
        return
    try:
        wit = locality(planted, r_max=8)
    except LocalityError:
        return
    assert wit.check(planted)
    assert len(wit.repairs[0][0]) <= r


def test_checked_wd_on_simplex():
    code = simplex(GF5, 2)
    wd, dual = checked_wd(code)
    assert wd.nonzero_weights == [5]
    assert macwilliams(wd).d_perp == 3
