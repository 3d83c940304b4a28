import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ortholab.galois import (
    CycInt,
    FunctionTable,
    Rejection,
    SubfieldMap,
    absolute_trace,
    field_create,
    field_from_descriptor,
    gauss_sum_direct,
    gauss_sum_quadratic,
    quadratic_character,
    rf_membership,
    walsh_spectrum,
    walsh_transform,
    weil_sum,
    weil_sum_direct,
)

ODD_FIELDS = [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 1), (11, 2), (13, 2), (17, 2), (19, 2), (23, 2)]


def test_prime_field_is_residues():
    spec = field_create(3, 1)
    assert spec.add(2, 2) == 1
    assert spec.mul(2, 2) == 1
    assert list(spec.elements()) == [0, 1, 2]


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        field_create(4, 2)


def test_gf27_modulus_is_smallest_primitive():
    spec = field_create(3, 3)
    assert spec.modulus == (1, 2, 0, 1)
    # brute force: first irreducible monic cubic whose root has order 26
    from itertools import product

    def order_of_x(mod):
        # multiply by x modulo mod, track powers as digit tuples
        c0, c1, c2 = mod[:3]
        v = (0, 1, 0)
        for k in range(1, 27):
            if v == (1, 0, 0):
                return k
            a, b, c = v
            v = ((-c * c0) % 3, (a - c * c1) % 3, (b - c * c2) % 3)
        return None

    for c2, c1, c0 in product(range(3), repeat=3):
        if c0 and _has_no_root((c0, c1, c2)) and order_of_x((c0, c1, c2)) == 26:
            assert (c0, c1, c2, 1) == spec.modulus
            break


def _has_no_root(mod):
    c0, c1, c2 = mod
    return all((x**3 + c2 * x * x + c1 * x + c0) % 3 for x in range(3))


def test_log_exp_roundtrip():
    for p, d in [(3, 4), (5, 2), (7, 2)]:
        spec = field_create(p, d)
        nz = spec.nonzero()
        assert np.array_equal(spec.exp[spec.log[nz]], nz)
        assert len(set(spec.alpha_pow(np.arange(spec.q - 1)).tolist())) == spec.q - 1


def test_descriptor_roundtrip():
    spec = field_create(5, 3)
    assert field_from_descriptor(spec.descriptor()) == spec


def test_trace_of_one():
    smap = SubfieldMap(field_create(3, 2), 1)
    assert smap.to_small(smap.trace(1)) == 2


def test_trace_kernel_size():
    spec = field_create(3, 3)
    smap = SubfieldMap(spec, 1)
    assert int(np.count_nonzero(smap.trace(spec.elements()) == 0)) == 9


def test_relative_trace_matches_power_sum():
    big = field_create(3, 4)
    smap = SubfieldMap(big, 2)
    for x in [1, 5, 17, 40, 80]:
        assert smap.trace(x) == big.add(x, big.power(x, 9))


@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 8))
def test_trace_linear_and_norm_multiplicative(x, y, c):
    big = field_create(3, 4)
    smap = SubfieldMap(big, 2)
    cs = smap.subfield_elements()[c]
    assert smap.trace(big.add(x, y)) == big.add(smap.trace(x), smap.trace(y))
    assert smap.trace(big.mul(cs, x)) == big.mul(cs, smap.trace(x))
    assert smap.norm(big.mul(x, y)) == big.mul(smap.norm(x), smap.norm(y))


def test_quadratic_character_examples():
    spec = field_create(3, 2)
    assert quadratic_character(spec, 0) == 0
    assert quadratic_character(spec, spec.alpha_pow(1)) == -1
    assert quadratic_character(spec, spec.neg(1)) == 1
    with pytest.raises(ValueError):
        quadratic_character(field_create(2, 3), 1)


def test_gauss_sum_signs():
    g5 = gauss_sum_quadratic(field_create(5, 1))
    assert (g5.sign, g5.imaginary) == (1, False)
    g3 = gauss_sum_quadratic(field_create(3, 1))
    assert (g3.sign, g3.imaginary) == (1, True)
    assert gauss_sum_quadratic(field_create(3, 2)).as_int() == 3


@pytest.mark.parametrize("p,d", [(p, d) for p, d in ODD_FIELDS if p**d <= 729])
def test_gauss_closed_form_equals_summation(p, d):
    spec = field_create(p, d)
    g = gauss_sum_quadratic(spec)
    direct = gauss_sum_direct(spec)
    assert g.to_cycint() == direct
    assert direct.abs2() == spec.q


def test_weil_sum_small_example():
    spec = field_create(3, 1)
    expected = CycInt.integer(3, 1) + CycInt.zeta(3) * 2
    assert weil_sum(spec, 1, 0, 0) == expected
    assert weil_sum_direct(spec, 1, 0, 0) == expected
    with pytest.raises(ValueError):
        weil_sum(spec, 0, 1, 0)


@pytest.mark.parametrize("p,d", [(3, 2), (5, 1), (5, 2), (7, 1), (3, 3)])
def test_weil_sum_random_triples(p, d):
    spec = field_create(p, d)
    rng = np.random.default_rng(p * 100 + d)
    for _ in range(200):
        a2 = int(rng.integers(1, spec.q))
        a1, a0 = (int(x) for x in rng.integers(0, spec.q, size=2))
        value = weil_sum(spec, a2, a1, a0)
        assert value == weil_sum_direct(spec, a2, a1, a0)
        assert value.abs2() == spec.q


def test_walsh_trivial_function():
    spec = field_create(3, 2)
    zero = FunctionTable.from_array(spec, np.zeros(9, dtype=int))
    assert walsh_transform(zero, 0) == CycInt.integer(3, 9)
    assert walsh_transform(zero, 4) == CycInt.integer(3, 0)


def test_walsh_of_quadratic_is_flat():
    f = FunctionTable.quadratic_trace(field_create(3, 2))
    assert all(w.abs2() == 9 for w in walsh_spectrum(f))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9))
def test_parseval(values):
    f = FunctionTable.from_array(field_create(3, 2), values)
    assert sum(w.abs2() for w in walsh_spectrum(f)) == 3**4


def test_rf_membership_quadratic_form():
    spec = field_create(3, 4)
    prof = rf_membership(FunctionTable.quadratic_trace(spec))
    assert not isinstance(prof, Rejection)
    assert prof.h == 2
    assert prof.epsilon in (1, -1)
    # dual function of tr(x^2) is tr(-x^2/4) = tr(-x^2) over GF(3)
    smap = SubfieldMap(spec, 1)
    xs = spec.elements()
    expect = smap.to_small(smap.trace(spec.neg(spec.mul(xs, xs))))
    assert tuple(int(v) for v in expect) == tuple(prof.dual)


def test_rf_membership_rejections():
    spec = field_create(3, 2)
    linear = FunctionTable.from_array(spec, absolute_trace(spec, spec.elements()))
    assert isinstance(rf_membership(linear), Rejection)
    shifted = FunctionTable.from_array(spec, np.ones(9, dtype=int))
    rej = rf_membership(shifted)
    assert isinstance(rej, Rejection) and rej.clause == "i"


@given(
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
    st.lists(st.integers(-5, 5), min_size=4, max_size=4),
)
def test_cycint_ring_laws(a, b, c):
    x, y, z = (CycInt.from_counts(5, v + [0]) for v in (a, b, c))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x.conj().conj() == x
