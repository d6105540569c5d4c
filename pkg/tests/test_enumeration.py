import math
from fractions import Fraction

import pytest

from unimap.enumeration import (CountTable, catalan, count_dominant,
                                count_unicellular, dominant_schemes,
                                enum_schemes, enum_trees_with_triples,
                                enum_unicellular, eq_doublerooting_check,
                                halfT, involutions, marked_trees, tstar,
                                u_asym)
from unimap.errors import GenusOutOfRange, OutOfRange, ResourceBound
from unimap.maps import genus, is_unicellular


def test_involution_count():
    for n in range(1, 5):
        assert sum(1 for _ in involutions(n)) == \
            math.prod(range(1, 2 * n, 2))


def test_involutions_are_fixed_point_free():
    for a in involutions(3):
        assert all(a[i - 1] != i for i in range(1, 7))
        assert all(a[a[i - 1] - 1] == i for i in range(1, 7))


def test_enum_unicellular_counts():
    # genus-1 counts 1, 10, 70, 420, 2310 for n = 2..6
    expected = {2: 1, 3: 10, 4: 70, 5: 420, 6: 2310}
    for n, c in expected.items():
        assert count_unicellular(1, n) == c


def test_enum_yields_canonical_unicellular():
    for m in enum_unicellular(1, 3):
        assert is_unicellular(m.map)
        assert genus(m.map) == 1
        assert m.root == 1


def test_genus_out_of_range():
    with pytest.raises(GenusOutOfRange):
        next(iter(enum_unicellular(2, 3)))
    with pytest.raises(GenusOutOfRange):
        next(iter(enum_unicellular(-1, 3)))


def test_budget_enforced():
    with pytest.raises(ResourceBound):
        list(enum_unicellular(1, 5, budget=10))


def test_genus_one_scheme_shapes():
    shapes = sorted(sorted(len(c) for c in
                           __import__("unimap.permutations",
                                      fromlist=["cycles"]).cycles(s.map.beta))
                    for _, s in enum_schemes(1))
    assert shapes == [[3, 3], [4]]


def test_formula_values():
    assert [catalan(n) for n in range(6)] == [1, 1, 2, 5, 14, 42]
    assert halfT(3) == 10
    assert dominant_schemes(1) == 1
    assert dominant_schemes(2) == 105
    assert tstar(1) == 2
    assert marked_trees(1, 3) == 20
    assert u_asym(1, 100) == pytest.approx(
        100 ** 1.5 * 4.0 ** 100 / (12 * math.sqrt(math.pi)))
    with pytest.raises(OutOfRange):
        marked_trees(2, 4)
    with pytest.raises(OutOfRange):
        dominant_schemes(0)


def test_marked_trees_formula_vs_brute():
    from unimap.enumeration import _triple_lists
    from unimap.maps import vertices
    from unimap.trees import all_trees
    for n in (3, 4, 5):
        cnt = sum(sum(1 for _ in _triple_lists(vertices(t), 1))
                  for t in all_trees(n))
        assert cnt == marked_trees(1, n)


def test_trees_with_triples_match_dominant():
    for n in (3, 4, 5):
        trees = sum(1 for _ in enum_trees_with_triples(1, n))
        assert trees == 2 * count_dominant(1, n)


def test_doublerooting_identity():
    counted, predicted = eq_doublerooting_check(1, 5)
    assert counted[2:] == predicted[2:]
    assert predicted[2:] == [Fraction(1), Fraction(10), Fraction(70),
                             Fraction(420)]


def test_count_table_csv():
    t = CountTable()
    t.add(1, 3, 10, "brute-force")
    assert t.to_csv() == "g,n,count,generator\n1,3,10,brute-force\n"
