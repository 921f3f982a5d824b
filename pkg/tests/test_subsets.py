import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normgrowth.errors import EmptySubset, EmptyWord, NotNormal, ParseError
from normgrowth.subsets import (
    NormalSubset,
    Subset,
    enumerate_normal_subsets,
    parse_subset_expr,
    random_normal_subset,
    random_subset,
    require_nonempty,
    subset_mask,
    subset_size,
)


def test_subset_basics():
    s = Subset.from_indices(10, [3, 1, 3])
    assert s.size == 2
    assert 1 in s and 3 in s and 0 not in s
    assert s.indices.tolist() == [1, 3]
    assert Subset.full(4).size == 4


def test_subset_mask_polymorphism(a5):
    mask = np.zeros(60, dtype=bool)
    mask[5] = True
    assert subset_mask(mask) is mask
    assert subset_size(Subset(mask)) == 1
    ns = NormalSubset.from_classes(a5.classes, [1])
    assert subset_size(ns) == a5.classes.sizes[1]
    assert (subset_mask(ns) == ns.mask).all()


def test_normal_subset_from_classes(a5):
    ct = a5.classes
    ns = NormalSubset.from_classes(ct, [2, 1])
    assert ns.class_indices == (1, 2)
    assert ns.size == int(ct.sizes[1] + ct.sizes[2])
    assert ns.mask.sum() == ns.size
    with pytest.raises(ParseError):
        NormalSubset.from_classes(ct, [9])


def test_normal_subset_symmetry(psl27):
    ct = psl27.classes
    # the two order-7 classes are mutually inverse
    seven = [k for k in range(ct.n_classes) if ct.rep_orders[k] == 7]
    one_of_them = NormalSubset.from_classes(ct, seven[:1])
    both = NormalSubset.from_classes(ct, seven)
    assert not one_of_them.symmetric
    assert both.symmetric
    assert NormalSubset.from_classes(ct, [0]).symmetric


def test_normal_subset_from_subset(a5):
    ct = a5.classes
    full_class = Subset(np.isin(np.arange(60), ct.classes[3]))
    ns = NormalSubset.from_subset(ct, full_class)
    assert ns.class_indices == (3,)
    ragged = Subset.from_indices(60, [0, int(ct.classes[3][0])])
    with pytest.raises(NotNormal):
        NormalSubset.from_subset(ct, ragged)


def test_is_trivial(a5):
    ct = a5.classes
    assert NormalSubset.from_classes(ct, [0]).is_trivial()
    assert NormalSubset.from_classes(ct, []).is_trivial()
    assert not NormalSubset.from_classes(ct, [1]).is_trivial()


def test_require_nonempty(a5):
    with pytest.raises(EmptySubset):
        require_nonempty(NormalSubset.from_classes(a5.classes, []), "A")
    with pytest.raises(EmptySubset):
        require_nonempty(np.zeros(60, dtype=bool), "B")


# -- expression parsing ----------------------------------------------------------


def test_parse_class_exprs(a5):
    g, ct = a5.group, a5.classes
    one = parse_subset_expr("class:2", g, ct)
    assert one.class_indices == (2,)
    many = parse_subset_expr("classes:0,2,3", g, ct)
    assert many.class_indices == (0, 2, 3)
    nonid = parse_subset_expr("all-nonid", g, ct)
    assert nonid.class_indices == tuple(range(1, ct.n_classes))
    assert nonid.size == 59


def test_parse_complement_real(psl27):
    g, ct = psl27.group, psl27.classes
    s = parse_subset_expr("complement-real", g, ct)
    # exactly the two non-real classes of order 7
    assert len(s.class_indices) == 2
    for k in s.class_indices:
        assert not ct.is_real[k]


def test_parse_word_expr(a5):
    g, ct = a5.group, a5.classes
    s = parse_subset_expr("word:xx", g, ct)
    assert s.size == 45
    assert 0 in s.as_subset()


def test_parse_errors(a5):
    g, ct = a5.group, a5.classes
    for bad in ("", "class:", "class:99", "classes:", "nope", "class:x"):
        with pytest.raises(ParseError):
            parse_subset_expr(bad, g, ct)
    with pytest.raises(EmptyWord):
        parse_subset_expr("word:", g, ct)
    with pytest.raises(EmptyWord):
        parse_subset_expr("word:xX", g, ct)


@settings(max_examples=40)
@given(st.sets(st.integers(min_value=0, max_value=4), min_size=1))
def test_expr_roundtrip(idxs):
    from normgrowth.context import get_context

    ctx = get_context("A:5")
    ns = NormalSubset.from_classes(ctx.classes, sorted(idxs))
    back = parse_subset_expr(ns.expr(), ctx.group, ctx.classes)
    assert back.class_indices == ns.class_indices


# -- enumeration and sampling ----------------------------------------------------


def test_enumerate_counts(a5):
    ct = a5.classes
    with_id = enumerate_normal_subsets(ct, include_identity_class=True)
    without = enumerate_normal_subsets(ct, include_identity_class=False)
    assert len(with_id) == 2**5 - 1
    assert len(without) == 2**4 - 1
    assert all(0 not in s.class_indices for s in without)
    # no duplicates
    assert len({s.class_indices for s in with_id}) == len(with_id)


def test_random_normal_subset(a5):
    rng = np.random.default_rng(0)
    for _ in range(50):
        s = random_normal_subset(a5.classes, rng)
        assert s.size > 0
    rng = np.random.default_rng(0)
    t = random_normal_subset(a5.classes, rng)
    rng = np.random.default_rng(0)
    assert random_normal_subset(a5.classes, rng).class_indices == t.class_indices


def test_random_subset_reproducible():
    rng = np.random.default_rng(7)
    a = random_subset(100, rng)
    assert a.size > 0
    rng = np.random.default_rng(7)
    b = random_subset(100, rng)
    assert (a.mask == b.mask).all()
