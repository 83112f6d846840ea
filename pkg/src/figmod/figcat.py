"""Injections with group decorations: the arrows the whole engine acts along.

Points are 0-based internally: an arity-n object is range(n).  The
combinatorial subsets (sigma, j_product, the lex and span verifiers) keep
the 1-based labels of the usual presentation, since they are pure set
arithmetic; helpers convert at the boundary.
"""

import itertools

from .groups import WreathGroupElement, wreath_compose


class CategoryError(ValueError):
    pass


class FIGMorphism:
    """A pair (injection, decoration) from range(src) to range(dst)."""

    __slots__ = ("src", "dst", "inj", "dec")

    def __init__(self, src, dst, inj, dec):
        self.src = src
        self.dst = dst
        self.inj = tuple(inj)
        self.dec = tuple(dec)
        if len(self.inj) != src or len(self.dec) != src:
            raise CategoryError("injection/decoration length mismatch")
        if len(set(self.inj)) != src:
            raise CategoryError("not injective: %r" % (self.inj,))
        if any(not (0 <= v < dst) for v in self.inj):
            raise CategoryError("target value out of range")

    @staticmethod
    def identity(n):
        return FIGMorphism(n, n, range(n), [0] * n)

    @staticmethod
    def standard_inclusion(n, m):
        if m < n:
            raise CategoryError("no inclusion of %d into %d" % (n, m))
        return FIGMorphism(n, m, range(n), [0] * n)

    @staticmethod
    def from_wreath(x):
        return FIGMorphism(x.n, x.n, x.perm, x.dec)

    def to_wreath(self):
        if self.src != self.dst:
            raise CategoryError("not an automorphism")
        return WreathGroupElement(self.inj, self.dec)

    def image(self):
        return frozenset(self.inj)

    def __eq__(self, other):
        return (isinstance(other, FIGMorphism) and self.src == other.src
                and self.dst == other.dst and self.inj == other.inj
                and self.dec == other.dec)

    def __hash__(self):
        return hash((self.src, self.dst, self.inj, self.dec))

    def __lt__(self, other):
        return (self.inj, self.dec) < (other.inj, other.dec)

    def __repr__(self):
        return "FIGMorphism(%d->%d, inj=%r, dec=%r)" % (
            self.src, self.dst, self.inj, self.dec)


def compose_morphisms(G, outer, inner):
    """outer after inner; decorations multiply as dec_in[i] * dec_out[f_in(i)]."""
    if inner.dst != outer.src:
        raise CategoryError("arity mismatch: inner lands in %d, outer starts at %d"
                            % (inner.dst, outer.src))
    inj = tuple(outer.inj[v] for v in inner.inj)
    mul = G.mul
    dec = tuple(mul[inner.dec[i]][outer.dec[inner.inj[i]]]
                for i in range(inner.src))
    return FIGMorphism(inner.src, outer.dst, inj, dec)


def enumerate_hom(n, m, G):
    """All morphisms range(n) -> range(m), lexicographic on (inj, dec)."""
    if n > m:
        return []
    out = []
    for inj in itertools.permutations(range(m), n):
        for dec in itertools.product(range(G.order), repeat=n):
            out.append(FIGMorphism(n, m, inj, dec))
    return out


def orbit_representatives(n, m, G):
    """One morphism per right G_n-orbit: increasing injection, trivial dec."""
    if n > m:
        raise CategoryError("no injections of %d into %d" % (n, m))
    return [FIGMorphism(n, m, comb, [0] * n)
            for comb in itertools.combinations(range(m), n)]


def rep_decompose(G, mor):
    """Split mor as rep o aut with rep an orbit representative.

    Returns (rep, aut) where rep has increasing injection and trivial
    decoration and aut is the unique wreath element with
    mor = compose_morphisms(G, rep, from_wreath(aut)).
    """
    order = sorted(range(mor.src), key=lambda i: mor.inj[i])
    sorted_inj = tuple(mor.inj[i] for i in order)
    rank = {v: k for k, v in enumerate(sorted_inj)}
    tau = tuple(rank[mor.inj[i]] for i in range(mor.src))
    rep = FIGMorphism(mor.src, mor.dst, sorted_inj, [0] * mor.src)
    aut = WreathGroupElement(tau, mor.dec)
    return rep, aut


# ---------------------------------------------------------------------------
# Formal integer combinations of group elements / morphisms


class GroupAlgebraElement:
    """Finitely supported integer combination of wreath elements at one arity."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=()):
        self.n = n
        cleaned = {}
        for elem, c in dict(terms).items():
            if elem.n != n:
                raise CategoryError("mixed arities in group algebra element")
            if c != 0:
                cleaned[elem] = c
        self.terms = cleaned

    @staticmethod
    def unit(n):
        return GroupAlgebraElement(n, {WreathGroupElement.identity(n): 1})

    def multiply(self, G, other):
        if other.n != self.n:
            raise CategoryError("mixed arities in product")
        acc = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                z = wreath_compose(G, x, y)
                acc[z] = acc.get(z, 0) + cx * cy
        return GroupAlgebraElement(self.n, acc)

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement)
                and self.n == other.n and self.terms == other.terms)

    def __len__(self):
        return len(self.terms)

    def apply_morphism(self, G, mor):
        """Formal sum of composites (sigma,g) o mor, with cancellation."""
        if mor.dst != self.n:
            raise CategoryError("morphism target does not match arity")
        acc = {}
        for x, c in self.terms.items():
            comp = compose_morphisms(G, FIGMorphism.from_wreath(x), mor)
            acc[comp] = acc.get(comp, 0) + c
            if acc[comp] == 0:
                del acc[comp]
        return acc


def transposition_element(n, i, j):
    perm = list(range(n))
    perm[i], perm[j] = perm[j], perm[i]
    return WreathGroupElement(perm, [0] * n)


def j_factor(n, i, j):
    """id - (i j), with trivial decorations, at 0-based positions i, j."""
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise CategoryError("bad transposition (%d %d) at arity %d" % (i, j, n))
    return GroupAlgebraElement(n, {
        WreathGroupElement.identity(n): 1,
        transposition_element(n, i, j): -1,
    })


def j_pair_product(G, n, pairs):
    """Product of j_factor over a list of (i, j) pairs, 0-based."""
    acc = GroupAlgebraElement.unit(n)
    for i, j in pairs:
        acc = acc.multiply(G, j_factor(n, i, j))
    return acc


# ---------------------------------------------------------------------------
# Admissible subsets and their alternating products


class SigmaSet:
    """The b-subsets of {1..2b} whose i-th smallest member is at most 2i-1."""

    __slots__ = ("b", "subsets")

    def __init__(self, b, subsets):
        self.b = b
        self.subsets = [tuple(sorted(s)) for s in subsets]
        for s in self.subsets:
            if len(s) != b or any(not (1 <= x <= 2 * b) for x in s):
                raise CategoryError("not a %d-subset of [2b]: %r" % (b, s))
            if any(s[i] > 2 * i + 1 for i in range(b)):
                raise CategoryError("subset %r violates the growth condition" % (s,))

    def __len__(self):
        return len(self.subsets)

    def __iter__(self):
        return iter(self.subsets)

    def __contains__(self, s):
        return tuple(sorted(s)) in self.subsets


def _admissible(s):
    return all(v <= 2 * i + 1 for i, v in enumerate(s))


def sigma(b):
    if b < 0:
        raise CategoryError("negative size parameter")
    subsets = [s for s in itertools.combinations(range(1, 2 * b + 1), b)
               if _admissible(s)]
    return SigmaSet(b, subsets)


def sigma_ab(a, b):
    if not 1 <= a <= b:
        raise CategoryError("need 1 <= a <= b, got a=%d b=%d" % (a, b))
    prefix = set(range(1, a + 1))
    return SigmaSet(b, [s for s in sigma(b) if prefix <= set(s)])


def j_product(S, n, G):
    """Expanded product of id - (s_i t_i) over the pairing of S with its
    complement in [2b], as an element of the arity-n group algebra.

    S uses 1-based labels; the transpositions act on 0-based positions.
    """
    S = tuple(sorted(S))
    b = len(S)
    universe = set(range(1, 2 * b + 1))
    if not set(S) <= universe:
        raise CategoryError("%r is not a subset of [2b]" % (S,))
    if n < 2 * b:
        raise CategoryError("arity %d too small for a %d-subset product" % (n, b))
    T = tuple(sorted(universe - set(S)))
    pairs = [(S[i] - 1, T[i] - 1) for i in range(b)]
    return j_pair_product(G, n, pairs)


def verify_lex_first(S, U, idx, n):
    """Check one instance of the orbit-minimality implication.

    All arguments 1-based.  H is generated by the disjoint transpositions
    (idx_p, s_p); the claim is: if S is admissible then U sorts first in
    its H-orbit.  Returns True when the implication holds.
    """
    S = tuple(sorted(S))
    U = frozenset(U)
    idx = tuple(sorted(idx))
    b = len(S)
    if len(idx) != b or not set(S) <= U:
        raise CategoryError("need S <= U and |idx| = |S|")
    if set(idx) & U:
        raise CategoryError("idx must avoid U")
    if any(not (1 <= x <= n) for x in U | set(idx)):
        raise CategoryError("labels exceed the ambient arity")
    if not (_admissible(S) and all(1 <= x <= 2 * b for x in S)):
        return True  # implication with a false hypothesis
    base = tuple(sorted(U))
    best = base
    for mask in range(1, 1 << b):
        swap = {}
        for p in range(b):
            if mask >> p & 1:
                swap[S[p]] = idx[p]
                swap[idx[p]] = S[p]
        moved = tuple(sorted(swap.get(x, x) for x in U))
        if moved < best:
            best = moved
    return best == base


def _hom_index(basis):
    return {mor: i for i, mor in enumerate(basis)}


def _ga_vector(G, ga, mor, index):
    vec = [0] * len(index)
    for comp, c in ga.apply_morphism(G, mor).items():
        vec[index[comp]] += c
    return vec


def disjoint_pair_products(n, b):
    """All ways to pick b disjoint transposition pairs from range(n),
    canonically ordered.  These index the degree-b generators of the ideal."""
    out = []
    for chosen in itertools.combinations(range(n), 2 * b):
        for pairing in _perfect_pairings(chosen):
            out.append(pairing)
    return out


def _perfect_pairings(points):
    points = list(points)
    if not points:
        yield ()
        return
    first = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1:]
        for sub in _perfect_pairings(rest):
            yield ((first, points[k]),) + sub


def ideal_span_rows(G, r, n, b, basis, index):
    """Integer generators of the ideal-times-module span inside Z[Hom],
    closed under the left action of the arity-n automorphisms."""
    from .exactla import hnf, lattice_contains
    rows = []
    for pairs in disjoint_pair_products(n, b):
        J = j_pair_product(G, n, pairs)
        for mor in basis:
            if any(not (set(p) & set(mor.inj)) for p in pairs):
                continue  # vanishes: the product kills morphisms missing a pair
            v = _ga_vector(G, J, mor, index)
            if any(v):
                rows.append(v)
    if not rows:
        return ()
    # left multiplication by automorphisms permutes the basis; saturate
    from .groups import wreath_generators
    gen_perms = []
    for g in wreath_generators(G, n):
        gm = FIGMorphism.from_wreath(g)
        gen_perms.append([index[compose_morphisms(G, gm, mor)] for mor in basis])
    form = hnf(rows)
    while True:
        new = []
        for row in form:
            for pm in gen_perms:
                moved = [0] * len(row)
                for i, c in enumerate(row):
                    if c:
                        moved[pm[i]] = c
                if not lattice_contains(form, moved):
                    new.append(moved)
        if not new:
            return form
        form = hnf(list(form) + new)


def verify_span_identity(r, n, b, G):
    """Decide whether the ideal span plus the small-image part fills Z[Hom].

    r is the source arity, n the target arity, b the number of factors.
    Requires n >= b + r, where the identity is claimed.
    """
    from .exactla import hnf
    if n < b + r:
        raise CategoryError("need n >= b + r (got n=%d, b=%d, r=%d)" % (n, b, r))
    basis = enumerate_hom(r, n, G)
    index = _hom_index(basis)
    dim = len(basis)
    admissible = [s for s in sigma(b)]
    rows = list(ideal_span_rows(G, r, n, b, basis, index))
    for i, mor in enumerate(basis):
        im = set(v + 1 for v in mor.inj)  # back to 1-based labels
        if not any(set(s) <= im for s in admissible):
            v = [0] * dim
            v[i] = 1
            rows.append(v)
    full = hnf([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])
    return hnf(rows) == full


def annihilation_holds(G, r, n, m, mor, pairs):
    """Part of the ideal calculus: an m-fold product kills a morphism as soon
    as its image misses one of the pairs entirely.  Returns True when the
    formal expansion cancels to zero."""
    J = j_pair_product(G, n, list(pairs))
    return not J.apply_morphism(G, mor)
