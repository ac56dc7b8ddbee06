from __future__ import annotations

from collections import Counter

import pytest

from surface.origami import (
    COPIES,
    DeckGroup,
    Origami,
    WindingSignTable,
    build_origami,
    canonical_form,
    deck_action,
    is_isomorphic,
    perm_compose,
    perm_cycles,
    perm_inverse,
    singularity_profile,
)
from cylinders.decomposition import matrix_inverse, sl2z_transform


def _torus():
    return Origami([0], [0])


def test_single_square_torus():
    torus = _torus()
    assert torus.genus() == 1
    assert singularity_profile(torus) == Counter({1: 1})
    assert not torus.isSingularCorner(0)


def test_perm_helpers():
    perm = (1, 2, 0, 3)
    assert perm_compose(perm, perm_inverse(perm)) == (0, 1, 2, 3)
    assert sorted(len(c) for c in perm_cycles(perm)) == [1, 3]


def test_square_table_stratum(square_half):
    origami, deck, signs = build_origami(square_half)
    assert origami.n == 48
    assert origami.isConnected()
    assert singularity_profile(origami) == Counter({3: 4, 1: 36})
    assert origami.genus() == 5
    assert sum(1 for s in range(origami.n) if origami.isSingularCorner(s)) == 12
    assert signs.isBalanced()


def test_plus_table_stratum(plus_table):
    origami, _, _ = build_origami(plus_table)
    assert origami.n == 80
    assert singularity_profile(origami) == Counter({3: 8, 1: 56})
    assert origami.genus() == 9


def test_copies_and_cells(square_half):
    origami, _, _ = build_origami(square_half)
    assert Counter(origami.copy_of) == Counter({copy: 12 for copy in COPIES})
    assert all(not square_half.isBlocked(*cell) for cell in origami.cell_pos)


def test_deck_group_relations(square_half):
    origami, deck, _ = build_origami(square_half)
    identity = tuple(range(origami.n))
    for g in DeckGroup.ELEMENTS:
        permutation = deck.permutation(g)
        assert perm_compose(permutation, permutation) == identity
        if DeckGroup.isRotation(g):
            assert perm_compose(permutation, origami.right) == perm_compose(origami.left, permutation)
        else:
            assert perm_compose(permutation, origami.up) == perm_compose(origami.up, permutation)
    assert deck.apply((1, 1, 0), 0) == deck.apply((1, 0, 0), deck.apply((0, 1, 0), 0))
    assert deck_action(deck, (0, 0, 1), 5) == deck.iota[5]


def test_deck_orbits_have_eight_squares(square_half):
    origami, deck, _ = build_origami(square_half)
    for s in range(origami.n):
        assert len({deck.apply(g, s) for g in DeckGroup.ELEMENTS}) == 8


def test_subgroups_are_closed():
    for subgroup in (DeckGroup.SUBGROUP_H, DeckGroup.SUBGROUP_V):
        assert {DeckGroup.compose(g, h) for g in subgroup for h in subgroup} == set(subgroup)


def test_default_signs():
    signs = WindingSignTable()
    assert signs.sign_h == {(0, 0): 1, (0, 1): -1, (1, 0): 1, (1, 1): -1}
    assert signs.sign_v == {(0, 0): 1, (0, 1): 1, (1, 0): -1, (1, 1): -1}
    assert not WindingSignTable(sign_v={copy: 1 for copy in COPIES}).isBalanced()


def test_canonical_form_ignores_labels(square_half):
    origami, _, _ = build_origami(square_half)
    relabel = list(reversed(range(origami.n)))
    right = [0] * origami.n
    up = [0] * origami.n
    for s in range(origami.n):
        right[relabel[s]] = relabel[origami.right[s]]
        up[relabel[s]] = relabel[origami.up[s]]
    assert canonical_form(Origami(right, up)) == canonical_form(origami)
    assert is_isomorphic(Origami(right, up), origami)
    assert not is_isomorphic(_torus(), origami)


@pytest.mark.parametrize('matrix', [((1, 0), (0, 1)), ((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1)), ((3, -2), (-1, 1)), ((-1, 0), (0, -1))])
def test_sl2z_action_preserves_stratum(square_half, matrix):
    origami, _, _ = build_origami(square_half)
    image = sl2z_transform(origami, matrix)
    assert image.n == origami.n
    assert singularity_profile(image) == singularity_profile(origami)
    assert image.isConnected()
    assert is_isomorphic(sl2z_transform(image, matrix_inverse(matrix)), origami)


def test_sl2z_identity_is_isomorphic(square_half):
    origami, _, _ = build_origami(square_half)
    assert is_isomorphic(sl2z_transform(origami, ((1, 0), (0, 1))), origami)
    with pytest.raises(ValueError):
        sl2z_transform(origami, ((1, 1), (1, 1)))
