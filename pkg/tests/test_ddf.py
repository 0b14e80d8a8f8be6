import itertools
import json

import pytest
from hypothesis import given, strategies as st

from ddfkit.algebra import units_mod
from ddfkit.ddf import (
    DifferenceFamily,
    application_predicates,
    canonical_form,
    classify,
    ddf_equivalent,
    ddf_new,
    spectrum,
)
from ddfkit.errors import ElementOutOfRange, EmptyClass, OverlappingClasses

EX11 = ddf_new(7, [{0, 1, 3}, {2, 4, 5, 6}])
EX12 = ddf_new(25, [{1, 2, 3, 4, 6, 15}, {5, 9, 10, 14, 17, 24}])


def brute(f):
    """Direct pair enumeration: (internal, external, per-pair) counts."""
    I = {d: 0 for d in range(1, f.v)}
    E = dict(I)
    pair = {}
    for i, A in enumerate(f.classes):
        for j, B in enumerate(f.classes):
            for a in A:
                for b in B:
                    if a == b:
                        continue
                    d = (a - b) % f.v
                    if i == j:
                        I[d] += 1
                    else:
                        E[d] += 1
                        pair[(i, j, d)] = pair.get((i, j, d), 0) + 1
    return I, E, pair


@st.composite
def families(draw, max_v=30, max_classes=4):
    v = draw(st.integers(min_value=2, max_value=max_v))
    labels = draw(st.lists(st.integers(min_value=-1, max_value=max_classes - 1), min_size=v, max_size=v))
    classes = [tuple(x for x in range(v) if labels[x] == i) for i in range(max_classes)]
    classes = [c for c in classes if c]
    if not classes:
        classes = [(0,)]
    return ddf_new(v, classes)


# construction -----------------------------------------------------------------

def test_valid_examples():
    assert ddf_new(7, [{0, 1, 3}]).sizes == (3,)
    assert EX12.sizes == (6, 6)


def test_validation_errors():
    with pytest.raises(OverlappingClasses):
        ddf_new(7, [{0, 1, 3}, {1, 2}])
    with pytest.raises(ElementOutOfRange):
        ddf_new(7, [{0, 7}])
    with pytest.raises(EmptyClass):
        ddf_new(7, [{0}, set()])


def test_class_order_kept():
    f = ddf_new(7, [{5, 2}, {0}])
    assert f.classes == ((2, 5), (0,))


def test_json_round_trip():
    obj = json.loads(json.dumps(EX11.to_json()))
    assert DifferenceFamily.from_json(obj) == EX11
    assert str(EX11) == "(Z_7; {0,1,3}, {2,4,5,6})"


# spectra ------------------------------------------------------------------------

def test_example_1_1():
    single = spectrum(ddf_new(7, [{0, 1, 3}]))
    assert set(single.internal.values()) == {1}
    sp = spectrum(EX11)
    assert set(sp.internal.values()) == {3}
    assert set(sp.external.values()) == {4}
    assert {v for (i, d), v in sp.internal_by_class.items() if i == 0} == {1}
    assert {v for (i, d), v in sp.internal_by_class.items() if i == 1} == {2}
    assert set(sp.external_by_class.values()) == {2}


def test_example_1_2():
    sp = spectrum(EX12)
    assert set(sp.external.values()) == {3}
    I = sp.internal
    assert I[1] == I[24] == 4
    assert all(I[d] == 2 for d in (7, 9, 10, 15, 16, 18))
    assert all(I[d] == 1 for d in (6, 8, 17, 19))
    assert I[2] == 3
    assert sum(1 for d in I if I[d] == 3) == 24 - 2 - 6 - 4


def test_rows_layout():
    rows = spectrum(EX11).rows()
    assert rows[0] == {"d": 1, "I": 3, "E": 4}
    assert [r["d"] for r in rows] == list(range(1, 7))


@given(families())
def test_spectrum_matches_brute_force(f):
    I, E, pair = brute(f)
    sp = spectrum(f)
    assert sp.internal == I
    assert sp.external == E
    for (i, j, d), c in sp.external_pairwise.items():
        assert c == pair.get((i, j, d), 0)


@given(families())
def test_spectrum_identities(f):
    sp = spectrum(f)
    for d in range(1, f.v):
        assert sp.internal[d] == sum(sp.internal_by_class[(i, d)] for i in range(f.q))
        assert sp.external[d] == sum(sp.external_by_class[(i, d)] for i in range(f.q))
        assert sp.external[d] == sum(
            sp.external_pairwise[(i, j, d)] for i in range(f.q) for j in range(f.q) if i != j
        )
    for i, k in enumerate(f.sizes):
        assert sum(sp.internal_by_class[(i, d)] for d in range(1, f.v)) == k * (k - 1)
    ks = f.sizes
    assert sum(sp.internal.values()) == sum(k * (k - 1) for k in ks)
    assert sum(sp.external.values()) == sum(ks) ** 2 - sum(k * k for k in ks)


@given(families())
def test_pair_conservation(f):
    sp = spectrum(f)
    U = set().union(*map(set, f.classes))
    for d in range(1, f.v):
        total = sum(1 for a in U if (a - d) % f.v in U)
        assert sp.internal[d] + sp.external[d] == total
        if f.is_partition():
            assert total == f.v


@given(families())
def test_partition_duality(f):
    cl = classify(f)
    if cl.partition_type:
        assert cl.perfect_internal == cl.perfect_external


@given(families(max_v=20), st.data())
def test_affine_invariance(f, data):
    a = data.draw(st.sampled_from(units_mod(f.v)))
    b = data.draw(st.integers(min_value=0, max_value=f.v - 1))
    g = f.affine_image(a, b)
    s1, s2 = spectrum(f).internal, spectrum(g).internal
    for d in range(1, f.v):
        assert s2[(a * d) % f.v] == s1[d]


# classification -----------------------------------------------------------------

def test_classify_examples():
    cl = classify(EX11)
    assert (cl.uniform, cl.partition_type, cl.perfect_internal, cl.perfect_external) == (False, True, True, True)
    assert (cl.internal_max, cl.external_min) == (3, 4)
    cl = classify(EX12)
    assert cl.perfect_external and not cl.perfect_internal
    cl = classify(ddf_new(5, [{0}]))
    assert cl.uniform and not cl.partition_type and cl.perfect_internal and cl.internal_max == 0


def test_application_predicates():
    ap = application_predicates(EX12)
    assert ap.dss_index == 3
    assert ap.is_edf and ap.edf_lambda == 3
    assert application_predicates(ddf_new(7, [{0, 1, 3}])).bounded_lambda == 1
    single = application_predicates(ddf_new(5, [{0}]))
    assert single.ooc_auto == 0
    ap = application_predicates(EX11)
    assert not ap.is_edf and ap.bounded_lambda is None
    assert ap.ooc_auto == 2 and ap.ooc_cross == 2


# equivalence ----------------------------------------------------------------------

def brute_equivalent(f1, f2):
    if f1.v != f2.v:
        return False
    target = f2.as_set()
    return any(
        f1.affine_image(a, b).as_set() == target for a in units_mod(f1.v) for b in range(f1.v)
    )


def test_z5_example():
    f1 = ddf_new(5, [{1}, {0, 2}, {3, 4}])
    f2 = ddf_new(5, [{0}, {1, 4}, {2, 3}])
    a, b = ddf_equivalent(f1, f2, multipliers=[1])
    assert (a, b) == (1, 4)
    assert ddf_equivalent(f1, f2) is not None
    assert canonical_form(f1) == canonical_form(f2)


def test_self_and_negative():
    assert ddf_equivalent(EX11, EX11) == (1, 0)
    assert ddf_equivalent(ddf_new(7, [{0, 1, 3}]), ddf_new(7, [{0, 1, 2}])) is None
    assert not brute_equivalent(ddf_new(7, [{0, 1, 3}]), ddf_new(7, [{0, 1, 2}]))
    assert ddf_equivalent(EX11, ddf_new(8, [{0}])) is None


def test_canonical_difference_set():
    got = canonical_form(ddf_new(7, [{0, 1, 3}]))
    want = min(
        tuple(sorted((a * x + b) % 7 for x in (0, 1, 3))) for a in range(1, 7) for b in range(7)
    )
    assert got.classes == (want,)


def test_class_order_does_not_matter():
    g = ddf_new(7, [{2, 4, 5, 6}, {0, 1, 3}])
    assert ddf_equivalent(EX11, g) == (1, 0)


@given(families(max_v=14, max_classes=3), st.data())
def test_equivalence_of_images(f, data):
    a = data.draw(st.sampled_from(units_mod(f.v)))
    b = data.draw(st.integers(min_value=0, max_value=f.v - 1))
    g = f.affine_image(a, b)
    hit = ddf_equivalent(f, g)
    assert hit is not None
    assert f.affine_image(*hit).as_set() == g.as_set()
    back = ddf_equivalent(g, f)
    assert back is not None and g.affine_image(*back).as_set() == f.as_set()
    assert canonical_form(f) == canonical_form(g)


@given(families(max_v=10, max_classes=3), families(max_v=10, max_classes=3))
def test_equivalence_agrees_with_brute_force(f, g):
    expect = brute_equivalent(f, g)
    assert (ddf_equivalent(f, g) is not None) == expect
    assert (canonical_form(f) == canonical_form(g)) == expect
