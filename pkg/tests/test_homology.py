from __future__ import annotations

import numpy as np
import pytest

from utils.errors import ConstructionError
from surface.origami import DeckGroup, WindingSignTable, build_origami
from surface.homology import (
    CohomologyBasis,
    QuotientWindings,
    average_over,
    displacement_weights,
    edge_ends,
    face_incidence,
    is_cocycle,
)


@pytest.fixture(scope='module')
def square_origami():
    from surface.windTreeTable import square_table
    return build_origami(square_table('1/2', '1/2'))


def test_faces_match_vertices(square_origami):
    origami, _, _ = square_origami
    faces = face_incidence(origami)
    assert len(faces) == 40
    # every edge bounds two faces with opposite signs
    total = np.zeros(2 * origami.n, dtype=np.int64)
    for face in faces:
        for e, c in face.items():
            total[e] += c
    assert not total.any()


def test_basis_size_is_twice_genus(square_origami):
    origami, _, _ = square_origami
    basis = CohomologyBasis(origami)
    assert basis.genus == 5
    assert basis.generators.shape == (10, 2 * origami.n)
    for k, row in enumerate(basis.generators):
        assert is_cocycle(origami, row, basis.faces)
        assert basis.coordinates(row) == [1 if j == k else 0 for j in range(10)]


def test_coboundaries_have_zero_coordinates(square_origami):
    origami, _, _ = square_origami
    basis = CohomologyBasis(origami)
    rng = np.random.default_rng(3)
    potential = rng.integers(-5, 6, size=origami.n)
    weights = np.zeros(2 * origami.n, dtype=np.int64)
    for e in range(2 * origami.n):
        tail, head = edge_ends(origami, e)
        weights[e] = potential[head] - potential[tail]
    assert is_cocycle(origami, weights, basis.faces)
    assert basis.coordinates(weights) == [0] * 10


def test_displacement_is_closed_for_default_signs(square_origami):
    origami, _, signs = square_origami
    dx, dy = displacement_weights(origami, signs)
    assert is_cocycle(origami, dx)
    assert is_cocycle(origami, dy)
    assert set(np.unique(dx)) <= {-1, 0, 1}
    assert not dx[origami.n:].any()
    assert not dy[:origami.n].any()


def test_averaging_keeps_cocycles(square_origami):
    origami, deck, _ = square_origami
    basis = CohomologyBasis(origami)
    for subgroup in (DeckGroup.SUBGROUP_H, DeckGroup.SUBGROUP_V):
        for row in basis.generators:
            assert is_cocycle(origami, average_over(origami, deck, row, subgroup), basis.faces)


def test_horizontal_row_displacement(square_origami):
    origami, deck, signs = square_origami
    windings = QuotientWindings(origami, deck, signs, 4)
    # a free row of copy (0, 0) moves four grid units to the right
    start = next(s for s in range(origami.n) if origami.copy_of[s] == (0, 0) and origami.cell_pos[s] == (0, 0))
    chain = np.zeros(2 * origami.n, dtype=np.int64)
    s = start
    for _ in range(4):
        chain[s] += 1
        s = origami.right[s]
    assert s == start
    assert windings.displacement(chain) == (4, 0)
    assert windings.windings(chain)[1][0] == 1


def test_unbalanced_signs_are_rejected(square_origami):
    origami, deck, _ = square_origami
    signs = WindingSignTable(sign_v={(0, 0): 1, (0, 1): -1, (1, 0): -1, (1, 1): -1})
    dx, _ = displacement_weights(origami, signs)
    assert not is_cocycle(origami, dx)
    with pytest.raises(ConstructionError):
        QuotientWindings(origami, deck, signs, 4)
