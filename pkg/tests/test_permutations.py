import pytest

from unimap import permutations as perm
from unimap.errors import NotInvolution


def test_identity_and_apply():
    p = perm.identity(4)
    assert p == (1, 2, 3, 4)
    assert perm.apply(p, 3) == 3


def test_compose_order():
    # compose(p, q) applies q first
    p = (2, 3, 1)
    q = (3, 1, 2)
    assert perm.compose(p, q) == (1, 2, 3)
    assert perm.compose(q, p) == (1, 2, 3)
    r = (2, 1, 3)
    assert perm.compose(p, r)[1 - 1] == perm.apply(p, perm.apply(r, 1))


def test_inverse():
    p = (3, 1, 4, 2)
    assert perm.compose(p, perm.inverse(p)) == perm.identity(4)


def test_cycles_start_at_minimum():
    p = (2, 3, 1, 5, 4)
    cs = [tuple(c) for c in perm.cycles(p)]
    assert cs == [(1, 2, 3), (4, 5)]
    assert perm.cycle_count(p) == 2


def test_from_cycles_roundtrip():
    p = (4, 3, 2, 1, 6, 5)
    assert perm.from_cycles(6, perm.cycles(p)) == p


def test_check_involution_rejects_fixed_points():
    with pytest.raises(NotInvolution):
        perm.check_involution((1, 2))
    with pytest.raises(NotInvolution):
        perm.check_involution((2, 3, 1))
    perm.check_involution((2, 1, 4, 3))


def test_is_permutation():
    assert perm.is_permutation((2, 1, 3))
    assert not perm.is_permutation((1, 1, 3))
