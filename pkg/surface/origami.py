#!/usr/bin/env python3

from collections import Counter, deque

from utils import logger
from utils.errors import ConstructionError

log = logger.get_log(__name__)

COPIES = ((0, 0), (0, 1), (1, 0), (1, 1))

def perm_inverse(perm):
    inverse = [0] * len(perm)
    for i, image in enumerate(perm):
        inverse[image] = i
    return tuple(inverse)

def perm_compose(outer, inner):
    '''outer after inner.'''
    return tuple(outer[i] for i in inner)

def perm_cycles(perm):
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = perm[i]
        cycles.append(cycle)
    return cycles

def sign_of(index):
    return 1 if index == 0 else -1

class Origami(object):
    '''
    Square-tiled surface given by right and up neighbour permutations.
    '''
    def __init__(self, right, up, copy_of=None, cell_pos=None):
        if len(right) != len(up):
            raise ConstructionError('right and up act on different square sets')
        self.right = tuple(right)
        self.up = tuple(up)
        self.left = perm_inverse(self.right)
        self.down = perm_inverse(self.up)
        self.copy_of = tuple(copy_of) if copy_of is not None else None
        self.cell_pos = tuple(cell_pos) if cell_pos is not None else None
        self._vertices = None

    @property
    def n(self):
        return len(self.right)

    @property
    def commutator(self):
        return perm_compose(self.right, perm_compose(self.up, perm_compose(self.left, self.down)))

    def isConnected(self):
        seen = {0}
        queue = deque([0])
        while queue:
            s = queue.popleft()
            for t in (self.right[s], self.up[s], self.left[s], self.down[s]):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return len(seen) == self.n

    @property
    def vertices(self):
        '''
        (faceOf, faces): square s has its bottom-left corner at vertex faceOf[s];
        faces lists the squares sharing each vertex as a bottom-left corner.
        '''
        if self._vertices is None:
            around = [self.up[self.right[self.down[self.left[s]]]] for s in range(self.n)]
            faces = perm_cycles(around)
            faceOf = [0] * self.n
            for f, cycle in enumerate(faces):
                for s in cycle:
                    faceOf[s] = f
            self._vertices = (tuple(faceOf), faces)
        return self._vertices

    def isSingularCorner(self, s):
        faceOf, faces = self.vertices
        return len(faces[faceOf[s]]) > 1

    def genus(self):
        faceOf, faces = self.vertices
        # V - E + F on the square tiling
        euler = len(faces) - 2 * self.n + self.n
        return (2 - euler) // 2

    def __eq__(self, other):
        if not isinstance(other, Origami):
            return NotImplemented
        return self.right == other.right and self.up == other.up

    def __hash__(self):
        return hash((self.right, self.up))

    def __repr__(self):
        return 'Origami(n={})'.format(self.n)

def singularity_profile(origami):
    return Counter(len(c) for c in perm_cycles(origami.commutator))

def canonical_form(origami):
    best = None
    for start in range(origami.n):
        labels = {start: 0}
        order = [start]
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for t in (origami.right[s], origami.up[s]):
                if t not in labels:
                    labels[t] = len(order)
                    order.append(t)
                    queue.append(t)
        if len(order) != origami.n:
            raise ConstructionError('canonical form needs a connected origami')
        form = (tuple(labels[origami.right[s]] for s in order), tuple(labels[origami.up[s]] for s in order))
        if best is None or form < best:
            best = form
    return best

def is_isomorphic(first, second):
    if first.n != second.n:
        return False
    return canonical_form(first) == canonical_form(second)

class DeckGroup(object):
    '''
    Translations tau_h, tau_v and the half-turn iota, as square permutations.
    Group elements are bit triples (a, b, c) for tau_h^a tau_v^b iota^c.
    '''
    def __init__(self, tau_h, tau_v, iota):
        self.tau_h = tuple(tau_h)
        self.tau_v = tuple(tau_v)
        self.iota = tuple(iota)

    ELEMENTS = tuple((a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1))
    TRANSLATIONS = tuple(g for g in ELEMENTS if g[2] == 0)
    # <tau_h, iota tau_v> and <tau_v, iota tau_h>
    SUBGROUP_H = ((0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1))
    SUBGROUP_V = ((0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1))

    @staticmethod
    def compose(g, h):
        return (g[0] ^ h[0], g[1] ^ h[1], g[2] ^ h[2])

    @staticmethod
    def isRotation(g):
        return g[2] == 1

    def apply(self, g, square):
        if g[2]:
            square = self.iota[square]
        if g[1]:
            square = self.tau_v[square]
        if g[0]:
            square = self.tau_h[square]
        return square

    def permutation(self, g):
        return tuple(self.apply(g, s) for s in range(len(self.tau_h)))

def deck_action(deck, element, square):
    return deck.apply(element, square)

class WindingSignTable(object):
    '''
    Copy signs weighting unit steps: h weighs vertical steps, v weighs horizontal ones.
    '''
    def __init__(self, sign_h=None, sign_v=None):
        self.sign_h = dict(sign_h) if sign_h is not None else {c: sign_of(c[1]) for c in COPIES}
        self.sign_v = dict(sign_v) if sign_v is not None else {c: sign_of(c[0]) for c in COPIES}

    def isBalanced(self):
        return all(sorted(signs.values()) == [-1, -1, 1, 1] for signs in (self.sign_h, self.sign_v))

def build_origami(table):
    D = table.denominator
    free = table.freeCells
    cellIndex = {cell: k for k, cell in enumerate(free)}
    F = len(free)
    n = 4 * F

    def square(copy, cell):
        return (2 * copy[0] + copy[1]) * F + cellIndex[cell]

    copy_of = [None] * n
    cell_pos = [None] * n
    for copy in COPIES:
        for cell in free:
            s = square(copy, cell)
            copy_of[s] = copy
            cell_pos[s] = cell

    right = [0] * n
    up = [0] * n
    tau_h = [0] * n
    tau_v = [0] * n
    iota = [0] * n
    for s in range(n):
        (i, j), (X, Y) = copy_of[s], cell_pos[s]
        nextX = ((X + sign_of(i)) % D, Y)
        if nextX in cellIndex:
            right[s] = square((i, j), nextX)
        else:
            right[s] = square((1 - i, j), (X, Y))
        nextY = (X, (Y + sign_of(j)) % D)
        if nextY in cellIndex:
            up[s] = square((i, j), nextY)
        else:
            up[s] = square((i, 1 - j), (X, Y))
        tau_h[s] = square((1 - i, j), (D - 1 - X, Y))
        tau_v[s] = square((i, 1 - j), (X, D - 1 - Y))
        iota[s] = square((i, j), (D - 1 - X, D - 1 - Y))

    if sorted(right) != list(range(n)) or sorted(up) != list(range(n)):
        raise ConstructionError('wall gluings do not give permutations')
    origami = Origami(right, up, copy_of, cell_pos)
    if not origami.isConnected():
        raise ConstructionError('square permutations do not act transitively')

    m = table.corners.count(1) // 4
    profile = singularity_profile(origami)
    expected = Counter({3: 4 * m, 1: n - 12 * m})
    if +profile != +expected:
        raise ConstructionError('commutator cycle type {} is not {{3^{}, 1^{}}}'.format(dict(profile), 4 * m, n - 12 * m))

    deck = DeckGroup(tau_h, tau_v, iota)
    _check_deck(origami, deck)
    log.debug('Built origami with {} squares, genus {}'.format(n, origami.genus()))
    return origami, deck, WindingSignTable()

def _check_deck(origami, deck):
    for name, tau in (('tau_h', deck.tau_h), ('tau_v', deck.tau_v)):
        if perm_compose(tau, origami.right) != perm_compose(origami.right, tau) or \
           perm_compose(tau, origami.up) != perm_compose(origami.up, tau):
            raise ConstructionError('{} is not a translation automorphism'.format(name))
    if perm_compose(deck.iota, origami.right) != perm_compose(origami.left, deck.iota) or \
       perm_compose(deck.iota, origami.up) != perm_compose(origami.down, deck.iota):
        raise ConstructionError('iota is not a half-turn automorphism')
