#!/usr/bin/env python3

from collections import deque
from fractions import Fraction

import numpy as np

from utils import logger
from utils.errors import ConstructionError, InternalError
from surface.origami import DeckGroup

log = logger.get_log(__name__)

# Edge e < n is the crossing s -> right[s] with s = e; edge n + s is s -> up[s].

def face_incidence(origami):
    '''Signed edge lists of the faces (one face per vertex of the tiling).'''
    n = origami.n
    faceOf, faces = origami.vertices
    incidence = [[] for _ in faces]
    for s in range(n):
        r = origami.right[s]
        incidence[faceOf[r]].append((s, -1))
        incidence[faceOf[origami.up[r]]].append((s, 1))
        u = origami.up[s]
        incidence[faceOf[u]].append((n + s, 1))
        incidence[faceOf[origami.right[u]]].append((n + s, -1))
    merged = []
    for edges in incidence:
        coef = {}
        for e, c in edges:
            coef[e] = coef.get(e, 0) + c
        merged.append({e: c for e, c in coef.items() if c != 0})
    return merged

def edge_ends(origami, e):
    n = origami.n
    if e < n:
        return e, origami.right[e]
    return e - n, origami.up[e - n]

def is_cocycle(origami, weights, faces=None):
    faces = face_incidence(origami) if faces is None else faces
    return all(sum(c * weights[e] for e, c in face.items()) == 0 for face in faces)

def displacement_weights(origami, signs):
    '''Grid-unit x and y displacement of each edge crossing in the billiard plane.'''
    n = origami.n
    dx = np.zeros(2 * n, dtype=np.int64)
    dy = np.zeros(2 * n, dtype=np.int64)
    for s in range(n):
        copy = origami.copy_of[s]
        if origami.copy_of[origami.right[s]] == copy:
            dx[s] = signs.sign_v[copy]
        if origami.copy_of[origami.up[s]] == copy:
            dy[n + s] = signs.sign_h[copy]
    return dx, dy

def _rank(rows):
    matrix = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(matrix[0]) if matrix else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col] != 0:
                factor = matrix[r][col] / matrix[rank][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[rank])]
        rank += 1
    return rank

class CohomologyBasis(object):
    '''
    Tree-cotree basis of H^1(X; Z) on the dual square complex.
    '''
    def __init__(self, origami):
        self.origami = origami
        n = origami.n
        self.faces = face_incidence(origami)
        edgeCount = 2 * n

        # spanning tree of squares
        self.treeParent = [None] * n
        self.order = [0]
        inTree = [False] * edgeCount
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        while queue:
            s = queue.popleft()
            for e in (s, n + s, origami.left[s], n + origami.down[s]):
                tail, head = edge_ends(origami, e)
                other = head if tail == s else tail
                if not seen[other]:
                    seen[other] = True
                    inTree[e] = True
                    self.treeParent[other] = e
                    self.order.append(other)
                    queue.append(other)

        # spanning tree of faces through the remaining edges
        facesOfEdge = [[] for _ in range(edgeCount)]
        for f, face in enumerate(self.faces):
            for e in face:
                facesOfEdge[e].append(f)
        inCotree = [False] * edgeCount
        self.faceParent = [None] * len(self.faces)
        faceOrder = [0]
        faceSeen = [False] * len(self.faces)
        faceSeen[0] = True
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for e in sorted(self.faces[f]):
                if inTree[e] or len(facesOfEdge[e]) != 2:
                    continue
                other = facesOfEdge[e][0] if facesOfEdge[e][1] == f else facesOfEdge[e][1]
                if not faceSeen[other]:
                    faceSeen[other] = True
                    inCotree[e] = True
                    self.faceParent[other] = e
                    faceOrder.append(other)
                    queue.append(other)
        if not all(faceSeen):
            raise ConstructionError('face graph is disconnected')

        self.leftover = [e for e in range(edgeCount) if not inTree[e] and not inCotree[e]]
        self.genus = len(self.leftover) // 2
        if len(self.leftover) % 2 or self.genus != origami.genus():
            raise ConstructionError('tree-cotree left {} edges for genus {}'.format(len(self.leftover), origami.genus()))

        self.generators = np.zeros((len(self.leftover), edgeCount), dtype=np.int64)
        for k, e in enumerate(self.leftover):
            values = [0] * edgeCount
            values[e] = 1
            for f in reversed(faceOrder[1:]):
                parentEdge = self.faceParent[f]
                face = self.faces[f]
                rest = sum(c * values[x] for x, c in face.items() if x != parentEdge)
                values[parentEdge] = -rest * face[parentEdge]
            self.generators[k] = values
        for row in self.generators:
            if not is_cocycle(origami, row, self.faces):
                raise InternalError('tree-cotree generator is not closed')

    def coordinates(self, weights):
        '''Coordinates of a cocycle in the generator basis.'''
        origami = self.origami
        potential = [0] * origami.n
        for s in self.order[1:]:
            e = self.treeParent[s]
            tail, head = edge_ends(origami, e)
            if head == s:
                potential[s] = potential[tail] + weights[e]
            else:
                potential[s] = potential[head] - weights[e]
        coords = []
        for e in self.leftover:
            tail, head = edge_ends(origami, e)
            coords.append(int(weights[e]) - potential[head] + potential[tail])
        return coords

def average_over(origami, deck, weights, subgroup):
    '''Pull-back sum of an edge cochain over a deck subgroup.'''
    n = origami.n
    total = np.zeros(2 * n, dtype=np.int64)
    for g in subgroup:
        image = [deck.apply(g, s) for s in range(n)]
        for s in range(n):
            if DeckGroup.isRotation(g):
                total[s] -= weights[image[origami.right[s]]]
                total[n + s] -= weights[n + image[origami.up[s]]]
            else:
                total[s] += weights[image[s]]
                total[n + s] += weights[n + image[s]]
    return total

def _parallel(a, b):
    return _rank([a, b]) < 2

class QuotientWindings(object):
    '''
    Integer coordinates of the projection of a cycle to the genus-one quotients.

    For each quotient the pair is (cover displacement / D, complementary coordinate);
    both vanish exactly when the averaged class is trivial.
    '''
    def __init__(self, origami, deck, signs, denominator):
        self.origami = origami
        self.denominator = denominator
        self.basis = CohomologyBasis(origami)
        dx, dy = displacement_weights(origami, signs)
        faces = self.basis.faces
        for name, weights in (('x', dx), ('y', dy)):
            if not is_cocycle(origami, weights, faces):
                raise ConstructionError('{} displacement cochain is not closed for this sign table'.format(name))
        self.functionals = np.vstack([
            dy, self._complement(deck, dy, DeckGroup.SUBGROUP_H, 'h'),
            dx, self._complement(deck, dx, DeckGroup.SUBGROUP_V, 'v'),
        ])

    def _complement(self, deck, displacement, subgroup, name):
        averaged = [average_over(self.origami, deck, row, subgroup) for row in self.basis.generators]
        coords = [self.basis.coordinates(row) for row in averaged]
        base = self.basis.coordinates(displacement)
        if _rank(coords) != 2:
            raise ConstructionError('quotient {} has rank {}, expected 2'.format(name, _rank(coords)))
        if _rank(coords + [base]) != 2:
            raise ConstructionError('displacement is not invariant for quotient {}'.format(name))
        for row, c in zip(averaged, coords):
            if not _parallel(c, base):
                return row
        raise ConstructionError('no complementary functional for quotient {}'.format(name))

    def windings(self, chain):
        values = self.functionals @ chain
        D = self.denominator
        if values[0] % D or values[2] % D:
            raise InternalError('displacement {} not divisible by {}'.format((int(values[2]), int(values[0])), D))
        winding_h = (int(values[0]) // D, int(values[1]))
        winding_v = (int(values[2]) // D, int(values[3]))
        return winding_h, winding_v

    def displacement(self, chain):
        values = self.functionals @ chain
        return int(values[2]), int(values[0])
