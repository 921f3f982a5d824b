import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normgrowth.errors import (
    CapExceeded,
    EmptyWord,
    NoCharacteristic,
    NotBijective,
    ParseError,
)
from normgrowth.permgroup import (
    FiniteGroup,
    Permutation,
    build_alternating,
    build_symmetric,
    closure,
    compute_classes,
    generators_from_text,
    parse_cycle_line,
    parse_word,
    real_census,
    word_arity,
    word_image,
)

perm_images = st.permutations(list(range(6)))


def test_permutation_validation():
    Permutation((0, 1, 2))
    with pytest.raises(NotBijective):
        Permutation((0, 0, 2))
    with pytest.raises(NotBijective):
        Permutation((0, 3))
    with pytest.raises(NotBijective):
        Permutation(())


def test_permutation_composition_convention():
    # (p*q)(x) = p(q(x))
    p = Permutation.from_cycles([(0, 1)], 3)
    q = Permutation.from_cycles([(1, 2)], 3)
    assert (p * q).images == (1, 2, 0)
    assert (q * p).images == (2, 0, 1)


@given(perm_images, perm_images, perm_images)
def test_permutation_associativity(a, b, c):
    pa, pb, pc = Permutation(a), Permutation(b), Permutation(c)
    assert (pa * pb) * pc == pa * (pb * pc)


@given(perm_images)
def test_permutation_inverse_and_order(images):
    p = Permutation(images)
    ident = Permutation(range(6))
    assert p * p.inverse() == ident
    assert p.inverse() * p == ident
    # order = lcm of cycle lengths
    k = p.order()
    acc = ident
    for _ in range(k):
        acc = acc * p
    assert acc == ident
    assert k == math.lcm(*(len(c) for c in p.cycles()), 1)


@given(perm_images)
def test_permutation_cycles_roundtrip(images):
    p = Permutation(images)
    assert Permutation.from_cycles(p.cycles(), 6) == p


def test_closure_identity_only():
    g = closure([Permutation((0, 1, 2))], cap=10)
    assert g.n == 1
    assert g.perms.shape == (1, 3)


def test_closure_s3():
    gens = [Permutation.from_cycles([(0, 1, 2)], 3), Permutation.from_cycles([(0, 1)], 3)]
    g = closure(gens, cap=10)
    assert g.n == 6


def test_closure_a5_from_given_generators():
    gens = [
        Permutation.from_cycles([(0, 1, 2)], 5),
        Permutation.from_cycles([(0, 1, 2, 3, 4)], 5),
    ]
    assert closure(gens, cap=100).n == 60


def test_closure_cap():
    gens = [
        Permutation.from_cycles([(0, 1, 2)], 5),
        Permutation.from_cycles([(0, 1, 2, 3, 4)], 5),
    ]
    with pytest.raises(CapExceeded):
        closure(gens, cap=59)


def test_closure_identity_first_and_unique():
    g = build_symmetric(4)
    assert (g.perms[0] == np.arange(4)).all()
    keys = {row.tobytes() for row in g.perms}
    assert len(keys) == g.n


@pytest.mark.parametrize("m,order", [(2, 2), (3, 6), (4, 24), (5, 120), (6, 720)])
def test_symmetric_orders(m, order):
    assert build_symmetric(m).n == order


@pytest.mark.parametrize("m,order", [(2, 1), (3, 3), (4, 12), (5, 60), (6, 360)])
def test_alternating_orders(m, order):
    assert build_alternating(m).n == order


def test_builder_caps():
    with pytest.raises(CapExceeded):
        build_symmetric(10)
    with pytest.raises(CapExceeded):
        build_alternating(1)
    assert build_alternating(5).simple
    assert not build_alternating(4).simple
    assert not build_symmetric(5).simple


def test_index_arithmetic_consistency():
    g = build_symmetric(5)
    rng = np.random.default_rng(0)
    idx = rng.integers(0, g.n, size=50)
    for a, b in zip(idx[:25], idx[25:]):
        pa, pb = g.permutation(a), g.permutation(b)
        assert g.permutation(g.mul(a, b)) == pa * pb
        assert g.mul(a, g.inv(a)) == 0
    # batch products agree with scalar products
    tab = g.pairwise_product_indices(idx[:5], idx[5:10])
    for i in range(5):
        for j in range(5):
            assert tab[i, j] == g.mul(int(idx[i]), int(idx[5 + j]))


def test_translations():
    g = build_symmetric(4)
    all_idx = np.arange(g.n)
    for h in (1, 5, 17):
        left = g.left_translate(h, all_idx)
        right = g.right_translate(all_idx, h)
        assert sorted(left) == list(all_idx)
        assert sorted(right) == list(all_idx)
        assert left[0] == h and right[0] == h


def test_division_table():
    g = build_symmetric(4)
    dt = g.division_table()
    for a in (0, 3, 10):
        for b in (0, 7, 23):
            assert dt[a, b] == g.mul(g.inv(a), b)


# -- conjugacy classes -----------------------------------------------------------


def brute_classes(g: FiniteGroup):
    """Independent all-element conjugation orbits, as frozensets."""
    seen = set()
    classes = []
    for x in range(g.n):
        if x in seen:
            continue
        orbit = {int(g.mul(g.mul(h, x), g.inv(h))) for h in range(g.n)}
        seen |= orbit
        classes.append(frozenset(orbit))
    return set(classes)


@pytest.mark.parametrize("builder,m", [(build_symmetric, 4), (build_alternating, 5)])
def test_classes_match_brute_force(builder, m):
    g = builder(m)
    ct = compute_classes(g)
    ours = {frozenset(int(i) for i in cls) for cls in ct.classes}
    assert ours == brute_classes(g)


def test_class_table_shape_a5(a5):
    ct = a5.classes
    assert sorted(ct.sizes.tolist()) == [1, 12, 12, 15, 20]
    assert ct.sizes[0] == 1 and ct.reps[0] == 0
    assert ct.sizes.sum() == 60
    # sorted ascending by size after the identity class
    assert list(ct.sizes) == sorted(ct.sizes)
    assert sorted(ct.rep_orders.tolist()) == [1, 2, 3, 5, 5]


def test_class_table_invariants(psl27):
    ct = psl27.classes
    g = psl27.group
    assert ct.n_classes == 6
    # partition
    assert sorted(int(i) for cls in ct.classes for i in cls) == list(range(g.n))
    # conjugation closure under generators
    for k, cls in enumerate(ct.classes):
        for gen in g.generators:
            assert set(g.conjugate_indices(cls, gen).tolist()) == set(cls.tolist())
    # inverse_class involution fixing the identity class
    inv = ct.inverse_class
    assert inv[0] == 0
    assert (inv[inv] == np.arange(ct.n_classes)).all()


def test_trivial_group_classes():
    g = closure([Permutation((0,))], cap=2)
    ct = compute_classes(g)
    assert ct.n_classes == 1


# -- real census -----------------------------------------------------------------


def test_real_census_a5(a5):
    rep = real_census(a5.group, a5.classes)
    assert rep.real_classes == 5
    assert rep.real_elements == 60
    assert rep.non_real_classes == ()


def test_real_census_psl27(psl27):
    ct = psl27.classes
    rep = real_census(psl27.group, ct, include_coprime_order=True)
    assert len(rep.non_real_classes) == 2
    for k in rep.non_real_classes:
        assert ct.rep_orders[k] == 7
    # order-7 elements are not coprime to the characteristic 7
    assert rep.non_real_coprime_order_classes == ()


def test_real_census_needs_characteristic(a5):
    with pytest.raises(NoCharacteristic):
        real_census(a5.group, a5.classes, include_coprime_order=True)


# -- words -----------------------------------------------------------------------


def test_parse_word():
    assert parse_word("xyXY") == [(0, 1), (1, 1), (0, -1), (1, -1)]
    assert parse_word("xxX") == [(0, 1)]
    assert word_arity("xx") == 1
    assert word_arity("xyXY") == 2
    with pytest.raises(EmptyWord):
        parse_word("xX")
    with pytest.raises(EmptyWord):
        parse_word("")
    with pytest.raises(ParseError):
        parse_word("xz")


def test_word_image_identity_word(a5):
    img = word_image(a5.group, "x")
    assert img.sum() == 60


def test_word_image_squares(a5):
    img = word_image(a5.group, "xx")
    assert img.sum() == 45
    assert img[0]
    # independent brute force
    g = a5.group
    brute = {int(g.mul(i, i)) for i in range(g.n)}
    assert set(np.flatnonzero(img).tolist()) == brute


def test_word_image_commutators(psl27):
    img = word_image(psl27.group, "xyXY")
    assert img.sum() == 168


def test_word_image_two_letter_brute():
    g = build_symmetric(4)
    img = word_image(g, "xxyy")
    brute = {
        int(g.mul(g.mul(i, i), g.mul(j, j)))
        for i in range(g.n)
        for j in range(g.n)
    }
    assert set(np.flatnonzero(img).tolist()) == brute


def test_word_image_normal(a5):
    g = a5.group
    img = word_image(g, "xx")
    idxs = np.flatnonzero(img)
    for gen in g.generators:
        assert img[g.conjugate_indices(idxs, gen)].all()


def test_word_image_cap(a5):
    with pytest.raises(CapExceeded):
        word_image(a5.group, "xyXY", cap=100)


# -- cycle-notation parsing ------------------------------------------------------


def test_parse_cycle_line():
    assert parse_cycle_line("(0 1 2) (3 4)") == [(0, 1, 2), (3, 4)]
    with pytest.raises(ParseError):
        parse_cycle_line("(0 1")
    with pytest.raises(ParseError):
        parse_cycle_line("0 1 2")


def test_generators_from_text_builds_group():
    gens = generators_from_text("(0 1 2)\n(0 1)\n")
    assert closure(gens, cap=10).n == 6


@settings(max_examples=25)
@given(st.lists(perm_images, min_size=1, max_size=3))
def test_closure_always_a_group(gen_images):
    gens = [Permutation(im) for im in gen_images]
    g = closure(gens, cap=720)
    # closed under products and inverses
    rng = np.random.default_rng(1)
    idx = rng.integers(0, g.n, size=min(10, g.n))
    for a in idx:
        g.inv(int(a))
        for b in idx:
            g.mul(int(a), int(b))
    assert g.n % 1 == 0
