import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fintopo.space import (
    EmptySubspace,
    GroundSetTooLarge,
    MissingEmptyOrFull,
    NotClosedUnderIntersection,
    NotClosedUnderUnion,
    PointMap,
    SpaceMismatch,
    closure,
    complement,
    compose,
    discrete,
    image,
    indiscrete,
    interior,
    lift,
    preimage,
    subspace,
    validate_topology,
)

from conftest import small_spaces

A, B, C = 0b001, 0b010, 0b100


def brute_interior(space, a):
    out = 0
    for u in space.opens:
        if u & ~a == 0:
            out |= u
    return out


def brute_closure(space, a):
    out = space.full
    for c in space.closed_sets:
        if a & ~c == 0:
            out &= c
    return out


# -- validate_topology ----------------------------------------------------


def test_validate_example_space(ex_x):
    assert ex_x.opens == (0, A, 0b111)
    assert ex_x.is_open(A) and not ex_x.is_open(B)


def test_validate_indiscrete():
    s = validate_topology(2, [0, 0b11])
    assert s == indiscrete(2)


def test_validate_reports_union_witness():
    with pytest.raises(NotClosedUnderUnion) as exc:
        validate_topology(3, [0, A, B, 0b111])
    assert exc.value.pair == (A, B)


def test_validate_reports_intersection_witness():
    with pytest.raises(NotClosedUnderIntersection) as exc:
        validate_topology(3, [0, A | B, B | C, 0b111])
    assert exc.value.pair == (A | B, B | C)


@pytest.mark.parametrize("family", [[A, 0b111], [0, A], []])
def test_validate_needs_empty_and_full(family):
    with pytest.raises(MissingEmptyOrFull):
        validate_topology(3, family)


@pytest.mark.parametrize("n", [0, 17])
def test_validate_size_bounds(n):
    with pytest.raises(GroundSetTooLarge):
        validate_topology(n, [0])


def test_validate_deduplicates():
    assert validate_topology(2, [0, 3, 3, 0, 1]).opens == (0, 1, 3)


def test_validate_round_trip(spaces_upto_3):
    for s in spaces_upto_3:
        assert validate_topology(s.n, s.opens) == s


def test_lookup_matches_opens(spaces_upto_3):
    for s in spaces_upto_3:
        assert [a for a in s.subsets() if s.open_lookup[a]] == list(s.opens)


def test_names_do_not_affect_equality(ex_x):
    assert ex_x == validate_topology(3, ex_x.opens)
    assert hash(ex_x) == hash(validate_topology(3, ex_x.opens))
    with pytest.raises(ValueError):
        ex_x.with_names("aab")


# -- interior / closure ---------------------------------------------------


def test_interior_examples(ex_x):
    assert interior(ex_x, A | C) == A
    assert interior(ex_x, ex_x.full) == ex_x.full
    assert interior(indiscrete(2), 0b01) == 0


def test_closure_examples(ex_x):
    assert closure(ex_x, A) == 0b111
    assert closure(ex_x, 0) == 0
    assert closure(ex_x, B | C) == B | C


def test_interior_and_closure_match_brute_force(spaces_upto_4):
    for s in spaces_upto_4:
        for a in s.subsets():
            assert interior(s, a) == brute_interior(s, a)
            assert closure(s, a) == brute_closure(s, a)


def test_kuratowski_laws(spaces_upto_4):
    for s in spaces_upto_4:
        for a in s.subsets():
            i, c = interior(s, a), closure(s, a)
            assert i & ~a == 0 and a & ~c == 0
            assert interior(s, i) == i
            assert closure(s, c) == c
            assert c == complement(interior(s, complement(a, s.n)), s.n)
            for b in range(a, 1 << s.n):
                assert closure(s, a | b) == c | closure(s, b)


spaces_st = st.sampled_from(small_spaces(4))


@settings(max_examples=200, deadline=None)
@given(spaces_st, st.data())
def test_closure_is_monotone(s, data):
    a = data.draw(st.integers(0, s.full))
    b = data.draw(st.integers(0, s.full)) | a
    assert closure(s, a) & ~closure(s, b) == 0
    assert interior(s, a) & ~interior(s, b) == 0


# -- subspaces ------------------------------------------------------------


def test_subspace_examples(ex_x):
    sub, parent = subspace(ex_x, B | C)
    assert parent == (1, 2)
    assert sub == indiscrete(2)
    assert sub.point_names == ("b", "c")

    sub, parent = subspace(ex_x, A | B)
    assert sub.opens == (0, 0b01, 0b11)

    sub, parent = subspace(ex_x, ex_x.full)
    assert sub == ex_x and parent == (0, 1, 2)


def test_empty_subspace():
    with pytest.raises(EmptySubspace):
        subspace(discrete(2), 0)


def test_subspace_of_subspace(spaces_upto_4):
    for s in spaces_upto_4:
        for h in range(1, 1 << s.n):
            sub, parent = subspace(s, h)
            for k in range(1, 1 << sub.n):
                twice, _ = subspace(sub, k)
                once, _ = subspace(s, lift(k, parent))
                assert twice == once


# -- maps -----------------------------------------------------------------


def test_preimage_examples(ex_f, ex_y):
    assert preimage(ex_f, 0b10) == A | C
    assert preimage(ex_f, 0b01) == B
    assert preimage(ex_f, ex_y.full) == 0b111


def test_image_examples(ex_f, ex_x, ex_y):
    assert image(ex_f, A | B) == 0b11
    assert image(ex_f, 0) == 0
    const = PointMap.constant(ex_x, ex_y, 1)
    for a in range(1, 8):
        assert image(const, a) == 0b10


def test_compose_examples(ex_f, ex_x, ex_y):
    swap = PointMap(ex_y, ex_y, (1, 0))
    assert compose(ex_f, swap).image == (0, 1, 0)
    assert compose(PointMap.identity(ex_x), ex_f) == ex_f
    assert compose(ex_f, PointMap.identity(ex_y)) == ex_f
    with pytest.raises(SpaceMismatch):
        compose(ex_f, ex_f)


def test_pointmap_rejects_bad_images(ex_x, ex_y):
    with pytest.raises(ValueError):
        PointMap(ex_x, ex_y, (0, 1))
    with pytest.raises(ValueError):
        PointMap(ex_x, ex_y, (0, 1, 2))


@settings(max_examples=200, deadline=None)
@given(spaces_st, spaces_st, st.data())
def test_preimage_commutes_with_complement(x, y, data):
    img = tuple(data.draw(st.lists(st.integers(0, y.n - 1), min_size=x.n, max_size=x.n)))
    f = PointMap(x, y, img)
    b = data.draw(st.integers(0, y.full))
    assert preimage(f, y.full ^ b) == x.full ^ preimage(f, b)
    assert preimage(f, image(f, x.full)) == x.full
