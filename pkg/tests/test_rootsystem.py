import math
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import rs_of
from peterson_schubert import NonCartan, NotARoot, UnknownType
from peterson_schubert.rootsystem import (
    DynkinSpec, all_subsets, build, cartan_determinant, cartan_matrix, exponents,
    height, highest_root, highest_root_product, mask, members, subsets_of,
)
from peterson_schubert.weyl import weyl_group

TABLE = {
    "A1": [1], "A4": [1, 2, 3, 4], "A7": list(range(1, 8)),
    "B2": [1, 3], "B5": [1, 3, 5, 7, 9], "C4": [1, 3, 5, 7],
    "D4": [1, 3, 3, 5], "D5": [1, 3, 4, 5, 7], "D6": [1, 3, 5, 5, 7, 9],
    "E6": [1, 4, 5, 7, 8, 11], "E7": [1, 5, 7, 9, 11, 13, 17],
    "E8": [1, 7, 11, 13, 17, 19, 23, 29], "F4": [1, 5, 7, 11], "G2": [1, 5],
}

COUNTS = {
    "A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
}

ALL_TYPES = (
    [f"A{n}" for n in range(1, 8)] + [f"B{n}" for n in range(2, 6)]
    + [f"C{n}" for n in range(2, 6)] + [f"D{n}" for n in range(4, 7)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


def test_b2_roots():
    rs = rs_of("B2")
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert [rs.height(b) for b in rs.positive_roots] == [1, 1, 2, 3]


def test_a1_and_e8():
    assert len(rs_of("A1").positive_roots) == 1
    e8 = rs_of("E8")
    assert len(e8.positive_roots) == 120
    assert max(map(sum, e8.positive_roots)) == 29


@pytest.mark.parametrize("name", ALL_TYPES)
def test_root_counts_and_exponent_sum(name):
    rs = rs_of(name)
    letter, n = name[0], int(name[1:])
    if letter in COUNTS:
        assert len(rs.positive_roots) == COUNTS[letter](n)
    ex = exponents(rs, rs.full)
    assert sum(ex) == len(rs.positive_roots)
    assert len(ex) == n
    assert all(min(b) >= 0 and sum(b) > 0 for b in rs.positive_roots)
    keys = [(sum(b), b) for b in rs.positive_roots]
    assert keys == sorted(keys)


@pytest.mark.parametrize("name,want", sorted(TABLE.items()))
def test_exponents_table(name, want):
    rs = rs_of(name)
    assert sorted(exponents(rs, rs.full)) == want


def test_exponents_empty_subset():
    assert exponents(rs_of("B3"), 0) == []


def test_height_examples():
    b2, g2 = rs_of("B2"), rs_of("G2")
    assert height(b2, (1, 2)) == 3
    assert height(g2, (3, 2)) == 5
    for rs in (b2, g2):
        for i in range(rs.rank):
            assert height(rs, rs.simple_root(i)) == 1
    with pytest.raises(NotARoot):
        height(b2, (2, 1))


def test_highest_root_product_examples():
    assert highest_root(rs_of("B2"), 0b11) == (1, 2)
    assert highest_root_product(rs_of("B2"), 0b11) == 2
    assert highest_root_product(rs_of("G2"), 0b11) == 6
    assert highest_root_product(rs_of("E8"), rs_of("E8").full) == 17280
    assert highest_root_product(rs_of("F4"), 0b0001) == 1
    assert highest_root_product(rs_of("A3"), 0) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_determinant_type_a(n):
    rs = rs_of(f"A{n}")
    assert cartan_determinant(rs, rs.full) == n + 1


def test_determinant_misc():
    assert cartan_determinant(rs_of("E8"), rs_of("E8").full) == 1
    assert cartan_determinant(rs_of("D5"), 0) == 1
    assert cartan_determinant(rs_of("E6"), rs_of("E6").full) == 3


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "D4", "B4", "F4", "A2xA1"])
def test_order_identity_on_connected_subsets(name):
    rs = rs_of(name)
    g = weyl_group(rs)
    for I in all_subsets(rs.rank):
        if len(rs.components(I)) != 1:
            continue
        order = len(g.enumerate(within=I))
        k = I.bit_count()
        assert order == math.factorial(k) * cartan_determinant(rs, I) * highest_root_product(rs, I)


def test_subsystem_heights_are_local():
    # alpha_2 + 2 alpha_3 in B3 is the highest root of the B2 subdiagram {2, 3}
    rs = rs_of("B3")
    assert sorted(exponents(rs, 0b110)) == [1, 3]
    assert highest_root(rs, 0b110) == (0, 1, 2)


def test_bourbaki_labelling():
    assert cartan_matrix("B", 3)[2][1] == -2
    assert cartan_matrix("C", 3)[1][2] == -2
    assert cartan_matrix("F", 4)[2][1] == -2
    assert cartan_matrix("G", 2)[0][1] == -3
    d5 = cartan_matrix("D", 5)
    assert d5[4][2] == -1 and d5[4][3] == 0


def test_parse_and_errors():
    spec = DynkinSpec.parse("A2xA1")
    assert spec.name == "A2xA1"
    assert build(spec).rank == 3
    for bad in ("B1", "D3", "E5", "H3", "A0", ""):
        with pytest.raises(UnknownType):
            build(bad)
    with pytest.raises(NonCartan):
        build(DynkinSpec.from_matrix([[2, -2], [-2, 2]]))
    with pytest.raises(NonCartan):
        build(DynkinSpec.from_matrix([[2, -1], [0, 2]]))
    with pytest.raises(NonCartan):
        build(DynkinSpec.from_matrix([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]))


def test_load_json(tmp_path):
    p = tmp_path / "g2.json"
    p.write_text("[[2, -3], [-1, 2]]")
    rs = build(DynkinSpec.load_json(p))
    assert len(rs.positive_roots) == 6


def test_relabelled_matrix_gives_same_counts():
    c = cartan_matrix("B", 3)
    perm = (2, 0, 1)
    d = [[c[perm[i]][perm[j]] for j in range(3)] for i in range(3)]
    rs = build(DynkinSpec.from_matrix(d))
    assert len(rs.positive_roots) == 9
    assert sorted(exponents(rs, rs.full)) == [1, 3, 5]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A4", "B4", "C4", "D4", "F4", "G2", "A2xB2"]), st.data())
def test_reflections_permute_roots(name, data):
    rs = rs_of(name)
    i = data.draw(st.integers(0, rs.rank - 1))
    beta = data.draw(st.sampled_from(rs.positive_roots))
    img = rs.reflect(i, beta)
    assert rs.is_root(img)
    if beta == rs.simple_root(i):
        assert img == tuple(-x for x in beta)
    else:
        assert min(img) >= 0


def test_subset_helpers():
    assert mask([0, 2]) == 0b101
    assert members(0b101) == (0, 2)
    subs = all_subsets(3)
    assert subs[0] == 0 and subs[-1] == 0b111 and len(subs) == 8
    for a, b in zip(subs, subs[1:]):
        assert a.bit_count() <= b.bit_count()
    assert sorted(subsets_of(0b101)) == [0, 1, 4, 5]
