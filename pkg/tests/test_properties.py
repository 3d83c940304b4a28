import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ortholab.analysis import check_divisible_so_theorem
from ortholab.code_core import LinearCode, divisor, extend, is_self_orthogonal
from ortholab.galois import field_create

from conftest import checked_wd, family, random_code

FIELDS = [field_create(3, 1), field_create(5, 1), field_create(3, 2)]
DIVISIBLE_FAMILIES = [
    "family=bch2 q=3 m=3",
    "family=c4 p=3 e=1 s=2",
    "family=c4 p=5 e=1 s=2",
    "family=defset q=3 m=3",
    "family=grm q=3 m=2 rho=1",
]


def repeated_code(rng, spec):
    """Random code with the all-1 row, each column repeated a multiple of p times."""
    k = int(rng.integers(1, 4))
    base_n = int(rng.integers(2, 6))
    base = rng.integers(0, spec.q, size=(k, base_n))
    base = np.vstack([base, np.ones((1, base_n), dtype=np.int64)])
    reps = spec.p * rng.integers(1, 3, size=base_n)
    rows = np.repeat(base, reps, axis=1)
    return LinearCode(spec, rows[:, rng.permutation(rows.shape[1])])


def family_subcode(rng, text):
    """Span of the all-1 vector and a few random codewords of a divisible family code."""
    code = family(text)
    spec = code.field
    extra = int(rng.integers(1, 4))
    mix = rng.integers(0, spec.q, size=(extra, code.k))
    words = np.asarray(spec.sum(spec.mul(mix[:, :, None], code.basis[None, :, :]), axis=1))
    rows = np.vstack([np.ones((1, code.n), dtype=np.int64), words])
    return LinearCode(spec, rows)


def divisible_cases(count=200):
    rng = np.random.default_rng(20261017)
    cases = []
    for i in range(count):
        if i % 4 == 3:
            cases.append(family_subcode(rng, DIVISIBLE_FAMILIES[i % len(DIVISIBLE_FAMILIES)]))
        else:
            cases.append(repeated_code(rng, FIELDS[i % 3]))
    return cases


def test_divisible_codes_with_one_are_self_orthogonal():
    cases = divisible_cases()
    assert len(cases) == 200
    seen = set()
    for code in cases:
        wd, _ = checked_wd(code)
        assert code.contains_all_one()
        assert divisor(wd) % code.field.p == 0
        assert is_self_orthogonal(code)
        audit = check_divisible_so_theorem(code, wd)
        assert audit.applicable and audit.holds
        seen.add(code.q)
    assert seen == {3, 5, 9}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2), st.integers(1, 4), st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_random_code_invariants(f, k, n, seed):
    spec = FIELDS[f]
    k = min(k, n)
    code = random_code(np.random.default_rng(seed), spec, k, n)
    wd, dual = checked_wd(code)
    assert wd.counts[0] == 1
    assert wd.k + dual.dual.k == n


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_extend_invariants(f, k, seed):
    spec = FIELDS[f]
    code = random_code(np.random.default_rng(seed), spec, k, 5)
    ext = extend(code)
    wd, _ = checked_wd(ext)
    assert wd.k == code.k


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_self_orthogonal_pairs(seed):
    rng = np.random.default_rng(seed)
    code = repeated_code(rng, FIELDS[int(rng.integers(0, 3))])
    spec = code.field
    for _ in range(10):
        u = code.encode(rng.integers(0, spec.q, size=code.k))
        v = code.encode(rng.integers(0, spec.q, size=code.k))
        assert spec.dot(u, v) == 0


@pytest.mark.parametrize("text", DIVISIBLE_FAMILIES)
def test_family_codes_pass_core_checks(text):
    checked_wd(family(text))
