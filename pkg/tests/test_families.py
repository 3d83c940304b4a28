import json
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ortholab.code_core import LinearCode, divisor, is_self_orthogonal, weight_distribution
from ortholab.families import (
    CountSpec,
    FamilyParams,
    NoPrediction,
    ParamError,
    PredictionDefect,
    build_family,
    count_trace_values,
    grm_dimension,
    has_erratum,
    lrc_gauss_checks,
    mds_weights,
    predict_family,
)
from ortholab.galois import SubfieldMap, field_create

from conftest import family, family_wd

DATA = json.loads(resources.files("ortholab").joinpath("data/expectations.json").read_text())
DEFAULT = [inst for inst in DATA["instances"] if inst["tier"] == "default"]


def _prediction(text):
    params = FamilyParams.parse(text)
    return predict_family(params, errata=has_erratum(params))


@pytest.mark.parametrize("inst", DEFAULT, ids=[i["params"] for i in DEFAULT])
def test_prediction_matches_enumeration(inst):
    text = inst["params"]
    code = family(text)
    wd, dual = family_wd(text)
    pred = _prediction(text)
    assert (pred.n, pred.k) == (code.n, code.k)
    if pred.weights is not None:
        assert pred.weights == wd.counts
    if pred.d is not None:
        assert pred.d == wd.min_distance
    if pred.dual_distance is not None:
        assert pred.dual_distance == dual.d_perp
    for i, value in pred.dual_coefficients.items():
        assert dual.dual.get(i) == value
    if pred.self_orthogonal is not None:
        assert pred.self_orthogonal == is_self_orthogonal(code)
    if pred.contains_one is not None:
        assert pred.contains_one == code.contains_all_one()
    if pred.divisible_by:
        assert divisor(wd) % pred.divisible_by == 0
    if pred.exact_p_power is not None:
        assert divisor(wd) == pred.exact_p_power


@pytest.mark.parametrize("inst", DEFAULT, ids=[i["params"] for i in DEFAULT])
def test_expectations_file(inst):
    text = inst["params"]
    wd, dual = family_wd(text)
    if "nkd" in inst:
        assert [wd.n, wd.k, wd.min_distance] == inst["nkd"]
    if "dual_nkd" in inst:
        assert [wd.n, wd.n - wd.k, dual.d_perp] == inst["dual_nkd"]
    if "weights" in inst:
        assert {int(w): c for w, c in inst["weights"].items()} == wd.counts
    if "divisor" in inst:
        assert divisor(wd) == inst["divisor"]
    for i, value in inst.get("dual_coefficients", {}).items():
        assert dual.dual.get(int(i)) == value


def test_table_rows_spot_values():
    c4 = _prediction("family=c4 p=3 e=1 s=2")
    assert (12, 40) in c4.rows
    bch2 = _prediction("family=bch2 q=3 m=3")
    assert (15, 702) in bch2.rows


def test_equal_weights_are_merged():
    pred = _prediction("family=c4 p=3 e=1 s=2")
    assert pred.weights[12] == sum(f for w, f in pred.rows if w == 12)
    assert 12 in pred.merged_weights


@pytest.mark.parametrize("text", ["family=lrc1 q=3 m=5 m1=1 m2=1", "family=bch3 q=3 m=4"])
def test_literal_tables_are_defective(text):
    params = FamilyParams.parse(text)
    assert has_erratum(params)
    with pytest.raises(PredictionDefect) as info:
        predict_family(params)
    assert info.value.erratum
    fixed = predict_family(params, errata=True)
    assert fixed.errata
    assert fixed.weights == family_wd(text)[0].counts


def test_bch3_even_dual_coefficient():
    _, dual = family_wd("family=bch3 q=3 m=4")
    assert dual.d_perp == 6
    assert dual.dual.get(6) == 144720
    pred = _prediction("family=bch3 q=3 m=4")
    assert pred.dual_coefficients.get(6) == 144720


def test_no_erratum_for_clean_cases():
    for text in ["family=lrc1 q=3 m=4 m1=1 m2=1", "family=bch3 q=3 m=5", "family=c4 p=3 e=1 s=2"]:
        assert not has_erratum(FamilyParams.parse(text))


@pytest.mark.parametrize(
    "text,message",
    [
        ("family=c1 p=3 m=6 k=4", "k/e must be odd"),
        ("family=c1 p=3 m=2 k=1", "at least 3"),
        ("family=lrc1 q=3 m=2 m1=1 m2=1", "3*m1"),
        ("family=c1 p=4 m=3 k=1", "prime"),
        ("family=bch2 q=3", "needs m"),
    ],
)
def test_parameter_validation(text, message):
    with pytest.raises(ParamError, match=message):
        FamilyParams.parse(text).validate()


def test_parse_rejects_garbage():
    with pytest.raises(ParamError):
        FamilyParams.parse("family=c4 p3")


def test_aliases():
    a = FamilyParams.parse("family=c4 q=9 s=2")
    assert (a.p, a.e) == (3, 2)
    b = FamilyParams.parse("family=bch q=3 m=3 delta=2")
    assert b.family == "bch2"


@pytest.mark.parametrize("q,m,rho", [(3, 2, 1), (3, 2, 2), (3, 3, 1), (3, 3, 2), (5, 2, 1), (5, 2, 3), (3, 2, 3)])
def test_grm_dimension_matches_rank(q, m, rho):
    code = build_family(FamilyParams.parse(f"family=grm q={q} m={m} rho={rho}"))
    assert code.k == grm_dimension(q, m, rho)
    assert code.n == q**m


def test_grm_divisibility():
    wd, _ = family_wd("family=grm q=3 m=2 rho=1")
    assert wd.n == 9 and wd.k == 3 and wd.min_distance == 6
    assert divisor(wd) == 3
    assert is_self_orthogonal(family("family=grm q=3 m=2 rho=1"))


@pytest.mark.parametrize("q,k", [(5, 2), (7, 3), (9, 2), (9, 3), (27, 3)])
def test_grs_is_mds(q, k):
    code = build_family(FamilyParams.parse(f"family=grs q={q} k={k}"))
    wd = weight_distribution(code)
    assert wd.counts == mds_weights(q, k, q)


def test_mds_weights_total():
    for n, k, q in [(9, 3, 9), (27, 3, 27), (25, 4, 25)]:
        assert sum(mds_weights(n, k, q).values()) == q**k


def test_lrc_gauss_signs_agree():
    for text in ["family=lrc1 q=3 m=5 m1=1 m2=1", "family=lrc1 q=3 m=4 m1=1 m2=1", "family=lrc1 q=5 m=3 m1=1 m2=1"]:
        for name, (from_exp, from_gauss) in lrc_gauss_checks(FamilyParams.parse(text)).items():
            assert from_exp == from_gauss, name


def test_squares_count_lemma_example():
    params = FamilyParams.parse("family=lrc1 q=3 m=3 m1=1 m2=1")
    res = count_trace_values(CountSpec("squares", params), 0)
    assert res.enumerated == 4 and res.agrees


@pytest.mark.parametrize(
    "text",
    ["family=lrc1 q=3 m=3 m1=1 m2=1", "family=lrc1 q=3 m=4 m1=1 m2=1", "family=lrc1 q=5 m=3 m1=1 m2=1",
     "family=lrc1 q=3 m=6 m1=2 m2=1", "family=lrc1 q=3 m=5 m1=1 m2=1"],
)
def test_squares_count_all_traces(text):
    params = FamilyParams.parse(text)
    total = 0
    small = field_create(params.p, params.e * params.m1)
    for a in small.elements():
        res = count_trace_values(CountSpec("squares", params), int(a))
        assert res.agrees, (a, res)
        total += res.enumerated
    assert total == (params.q**params.m - 1) // 2


@pytest.mark.parametrize("text", ["family=c4 p=3 e=1 s=2", "family=c4 p=3 e=1 s=3", "family=c4 p=5 e=1 s=2"])
@pytest.mark.parametrize("c", [0, 1])
def test_c4_value_distribution(text, c):
    res = count_trace_values(CountSpec("c4", FamilyParams.parse(text)), c)
    assert res.agrees, res


@pytest.mark.parametrize("text", ["family=c1 p=3 m=3 k=1", "family=c2 p=3 m=3 k=2", "family=c3 q=3 m=3", "family=c3 q=3 m=4"])
def test_other_value_distributions(text):
    params = FamilyParams.parse(text)
    res = count_trace_values(CountSpec(params.family, params), 1)
    assert res.agrees, res
    zero = count_trace_values(CountSpec(params.family, params), 0)
    assert zero.closed_form is None and zero.agrees is None


def test_unknown_count_lemma():
    with pytest.raises(NoPrediction):
        count_trace_values(CountSpec("c4", FamilyParams.parse("family=c3 q=3 m=3")), 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80))
def test_absolute_trace_additive(x, y):
    smap = SubfieldMap(field_create(3, 4), 1)
    big = smap.big
    assert smap.to_small(smap.trace(big.add(x, y))) == (smap.to_small(smap.trace(x)) + smap.to_small(smap.trace(y))) % 3


def test_random_subcodes_stay_divisible():
    code = family("family=bch2 q=3 m=3")
    rng = np.random.default_rng(7)
    for _ in range(5):
        mix = rng.integers(0, 3, size=(3, code.k))
        sub = LinearCode(code.field, code.field.sum(code.field.mul(mix[:, :, None], code.basis[None, :, :]), axis=1))
        wd = weight_distribution(sub)
        assert divisor(wd) % 3 == 0 or sub.k == 0
