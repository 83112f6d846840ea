"""Finite groups by multiplication table, and the wreath products S_n wr G.

Group elements are just indices into the table.  Index 0 is always the
identity; group_from_table relabels if the input puts it elsewhere.

A wreath element carries an arity n, a permutation of range(n), and a
decoration list of n group indices.  The composition convention matches the
category the engine is built on: (x*y).dec[i] = y.dec[i] * x.dec[y.perm[i]].
"""

import math


class GroupError(ValueError):
    pass


class FiniteGroup:
    __slots__ = ("order", "mul", "inv", "name")

    def __init__(self, mul, name=None):
        self.mul = tuple(tuple(row) for row in mul)
        self.order = len(self.mul)
        self.name = name
        self._check()
        self.inv = tuple(self._find_inverse(x) for x in range(self.order))

    def _check(self):
        n = self.order
        for row in self.mul:
            if len(row) != n:
                raise GroupError("multiplication table is not square")
            for e in row:
                if not (0 <= e < n):
                    raise GroupError("table entry %r out of range" % (e,))
        for x in range(n):
            if self.mul[0][x] != x or self.mul[x][0] != x:
                raise GroupError("index 0 is not a two-sided identity")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]]:
                        raise GroupError(
                            "table not associative at (%d,%d,%d)" % (x, y, z))

    def _find_inverse(self, x):
        for y in range(self.order):
            if self.mul[x][y] == 0 and self.mul[y][x] == 0:
                return y
        raise GroupError("no inverse for element %d" % x)

    def multiply(self, x, y):
        return self.mul[x][y]

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return "FiniteGroup(order=%d%s)" % (
            self.order, ", name=%r" % self.name if self.name else "")


def group_from_table(table, name=None):
    """Validate a multiplication table, relocating the identity to index 0."""
    n = len(table)
    ident = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise GroupError("table has no two-sided identity")
    if ident != 0:
        order = [ident] + [x for x in range(n) if x != ident]
        pos = {old: new for new, old in enumerate(order)}
        table = [[pos[table[order[i]][order[j]]] for j in range(n)]
                 for i in range(n)]
    return FiniteGroup(table, name=name)


def trivial_group():
    return FiniteGroup([[0]], name="trivial")


def cyclic_group(n):
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name="Z%d" % n)


def symmetric_group_3():
    """S_3 with elements listed as permutations of (0,1,2)."""
    import itertools
    perms = sorted(itertools.permutations(range(3)))
    # make the identity come first (it already sorts first)
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms]
             for p in perms]
    return group_from_table(table, name="S3")


GROUP_PRESETS = {
    "trivial": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "S3": symmetric_group_3,
}


class WreathGroupElement:
    """An element (sigma, g) of S_n wr G."""

    __slots__ = ("n", "perm", "dec")

    def __init__(self, perm, dec):
        self.perm = tuple(perm)
        self.dec = tuple(dec)
        self.n = len(self.perm)
        if sorted(self.perm) != list(range(self.n)):
            raise GroupError("perm is not a permutation of range(%d)" % self.n)
        if len(self.dec) != self.n:
            raise GroupError("decoration length mismatch")

    @staticmethod
    def identity(n):
        return WreathGroupElement(range(n), [0] * n)

    def is_identity(self):
        return all(self.perm[i] == i for i in range(self.n)) and \
            all(g == 0 for g in self.dec)

    def __eq__(self, other):
        return (isinstance(other, WreathGroupElement)
                and self.perm == other.perm and self.dec == other.dec)

    def __hash__(self):
        return hash((self.perm, self.dec))

    def __repr__(self):
        return "WreathGroupElement(perm=%r, dec=%r)" % (self.perm, self.dec)


def wreath_compose(G, x, y):
    """x after y, with decorations combined as dec[i] = y.dec[i]*x.dec[y.perm[i]]."""
    if x.n != y.n:
        raise GroupError("arity mismatch: %d vs %d" % (x.n, y.n))
    perm = tuple(x.perm[y.perm[i]] for i in range(x.n))
    mul = G.mul
    dec = tuple(mul[y.dec[i]][x.dec[y.perm[i]]] for i in range(x.n))
    return WreathGroupElement(perm, dec)


def wreath_inverse(G, x):
    perm = [0] * x.n
    for i, j in enumerate(x.perm):
        perm[j] = i
    dec = tuple(G.inv[x.dec[perm[i]]] for i in range(x.n))
    return WreathGroupElement(perm, dec)


def wreath_embed(x, m):
    """Embed an element of G_n into G_m, fixing the new points trivially."""
    if m < x.n:
        raise GroupError("cannot embed into smaller arity")
    perm = x.perm + tuple(range(x.n, m))
    dec = x.dec + (0,) * (m - x.n)
    return WreathGroupElement(perm, dec)


def wreath_generators(G, n):
    """Generating set of G_n: adjacent transpositions plus decorations at 0.

    Deterministic order: s_0, ..., s_{n-2}, then d_g for g = 1..|G|-1.
    For n = 0 the group is trivial and the list is empty.
    """
    gens = []
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(WreathGroupElement(perm, [0] * n))
    if n >= 1:
        for g in range(1, G.order):
            dec = [0] * n
            dec[0] = g
            gens.append(WreathGroupElement(range(n), dec))
    return gens


def coset_chain(G, n):
    """Coset representatives along a subgroup chain from the trivial group
    up to the full degree-n wreath product.

    Returns a list of levels, innermost first.  Each level is a list of
    elements (always containing the identity) that represents the cosets of
    the previous subgroup in the next one: first the decoration copies of G
    one position at a time, then the symmetric group grown one point at a
    time via the transpositions (j, k), j <= k.  Products of one choice per
    level enumerate the whole group exactly once, which is what averaging
    arguments need: |group| = product of the level sizes.
    """
    levels = []
    for i in range(n):
        level = [WreathGroupElement.identity(n)]
        for g in range(1, G.order):
            dec = [0] * n
            dec[i] = g
            level.append(WreathGroupElement(range(n), dec))
        if len(level) > 1:
            levels.append(level)
    for k in range(1, n):
        level = []
        for j in range(k + 1):
            perm = list(range(n))
            perm[j], perm[k] = perm[k], perm[j]
            level.append(WreathGroupElement(perm, [0] * n))
        levels.append(level)
    return levels


def wreath_order(G, n):
    """The order of the degree-n wreath product group."""
    return math.factorial(n) * G.order ** n


def wreath_factor(G, x):
    """Write x as a word in wreath_generators(G, x.n).

    Returns a list of generator indices; composing the generators in list
    order (leftmost applied last) reproduces x.  Used to evaluate a
    representation given on generators only.
    """
    n = x.n
    word_swaps = []
    cur = list(x.perm)
    # bubble sort cur to the identity by right-composing adjacent swaps;
    # the swaps, reversed, then give x.perm as a product s_{i1}...s_{ik}.
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word_swaps.append(i)
                changed = True
    word = list(reversed(word_swaps))
    # now x = (perm, triv) * (id, dec'), where dec' = x.dec (the pure
    # decoration acts first, then the permutation with trivial decoration).
    dec_word = []
    for i in range(n):
        g = x.dec[i]
        if g == 0:
            continue
        # (id, g at i) = swap(0,i) * (id, g at 0) * swap(0,i)
        move = []
        for k in range(i - 1, -1, -1):
            move.append(k)          # s_k chain carries position i to 0
        gen_idx = (n - 1) + (g - 1)
        dec_word.extend(move)
        dec_word.append(gen_idx)
        dec_word.extend(reversed(move))
    return word + dec_word


def enumerate_wreath(G, n):
    """All of G_n, in lexicographic (perm, dec) order.  Use sparingly."""
    import itertools
    out = []
    for perm in itertools.permutations(range(n)):
        for dec in itertools.product(range(G.order), repeat=n):
            out.append(WreathGroupElement(perm, dec))
    return out
