"""Graded modules over the decorated-injection category, truncated at a
fixed degree N.

A truncated module is stored degree by degree: a dimension, action matrices
for the standard generators of the automorphism group at that degree, and a
one-step transition map X_n into the next degree.  Every other induced map
is recovered by factoring a morphism as (automorphism) o (standard
inclusions).  All three ingredients are produced lazily through provider
callbacks so that dimension-only questions never touch any matrix.
"""

from .exactla import (Matrix, image, kernel, solve, quotient_map,
                      invariant_span, block_diag)
from .groups import (WreathGroupElement, wreath_compose, wreath_embed,
                     wreath_generators, wreath_factor, enumerate_wreath)
from .figcat import (FIGMorphism, compose_morphisms, orbit_representatives,
                     rep_decompose)

import itertools

NEG_INF = float("-inf")


class ModuleError(ValueError):
    pass


class TruncationError(ModuleError):
    """Raised when an operation needs degrees beyond the truncation.

    Carries the truncation that would have sufficed, when known.
    """

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


def _word_matrix(field, dim, gens, word):
    out = Matrix.identity(field, dim)
    for idx in word:
        out = out @ gens[idx]
    return out


class FBGModule:
    """A finitely supported family of representations, one per degree."""

    def __init__(self, field, group, support):
        self.field = field
        self.group = group
        self.support = {}
        for n, (dim, mats) in support.items():
            if dim > 0:
                self.support[n] = (dim, list(mats))
        self._act_cache = {}

    @staticmethod
    def zero(field, group):
        return FBGModule(field, group, {})

    @staticmethod
    def single(field, group, degree, dim, gen_mats):
        return FBGModule(field, group, {degree: (dim, gen_mats)})

    @staticmethod
    def regular(field, group, degree):
        """The regular representation of the degree-n automorphism group."""
        elems = enumerate_wreath(group, degree)
        pos = {e: i for i, e in enumerate(elems)}
        d = len(elems)
        mats = []
        for g in wreath_generators(group, degree):
            M = Matrix.zeros(field, d, d)
            o = field.one()
            for i, x in enumerate(elems):
                M.rows[pos[wreath_compose(group, g, x)]][i] = o
            mats.append(M)
        return FBGModule.single(field, group, degree, d, mats)

    def degrees(self):
        return sorted(self.support)

    def dim(self, n):
        return self.support.get(n, (0, None))[0]

    def gen_action(self, n):
        if n not in self.support:
            return []
        return self.support[n][1]

    def action(self, n, elem):
        key = (n, elem)
        if key not in self._act_cache:
            d = self.dim(n)
            word = wreath_factor(self.group, elem)
            self._act_cache[key] = _word_matrix(
                self.field, d, self.gen_action(n), word)
        return self._act_cache[key]

    def deg(self):
        """Largest supported degree, or -inf for the zero module."""
        return max(self.support) if self.support else NEG_INF

    def is_zero(self):
        return not self.support

    def total_dim(self):
        return sum(d for d, _ in self.support.values())

    def validate(self, pair_cap=60):
        """Check the homomorphism property of each degree's action."""
        problems = []
        for n, (d, mats) in sorted(self.support.items()):
            gens = wreath_generators(self.group, n)
            if len(mats) != len(gens):
                problems.append("degree %d: %d action matrices for %d generators"
                                % (n, len(mats), len(gens)))
                continue
            for M in mats:
                if M.m != d or M.n != d:
                    problems.append("degree %d: action matrix of wrong shape" % n)
            elems = enumerate_wreath(self.group, n)
            if len(elems) <= pair_cap:
                for x in elems:
                    for y in elems:
                        xy = wreath_compose(self.group, x, y)
                        if self.action(n, xy) != self.action(n, x) @ self.action(n, y):
                            problems.append(
                                "degree %d: action not multiplicative at (%r,%r)"
                                % (n, x, y))
                            break
                    else:
                        continue
                    break
            else:
                for M in mats:
                    if solve(M, Matrix.identity(self.field, d)) is None:
                        problems.append("degree %d: generator acts singularly" % n)
        return problems


class TruncatedFIGModule:
    """Degree-wise data of a module, valid through degree `truncation`."""

    def __init__(self, field, group, truncation, dim_fn, gen_action_fn,
                 transition_fn, induced_fn=None):
        if truncation < 0:
            raise ModuleError("negative truncation")
        self.field = field
        self.group = group
        self.truncation = truncation
        self._dim_fn = dim_fn
        self._gen_fn = gen_action_fn
        self._trans_fn = transition_fn
        self._induced_fn = induced_fn
        self._dims = {}
        self._gens = {}
        self._trans = {}
        self._acts = {}

    # -- data access --------------------------------------------------

    def _check_degree(self, n, top=None):
        if n < 0 or n > (self.truncation if top is None else top):
            raise TruncationError(
                "degree %d outside truncation %d" % (n, self.truncation),
                required=n)

    def dim(self, n):
        self._check_degree(n)
        if n not in self._dims:
            self._dims[n] = self._dim_fn(n)
        return self._dims[n]

    def gen_action(self, n):
        self._check_degree(n)
        if n not in self._gens:
            self._gens[n] = list(self._gen_fn(n))
        return self._gens[n]

    def transition(self, n):
        self._check_degree(n, self.truncation - 1)
        if n not in self._trans:
            self._trans[n] = self._trans_fn(n)
        return self._trans[n]

    def action(self, n, elem):
        if elem.n != n:
            raise ModuleError("arity mismatch in action")
        key = (n, elem)
        if key not in self._acts:
            if self._induced_fn is not None:
                self._acts[key] = self._induced_fn(FIGMorphism.from_wreath(elem))
            else:
                word = wreath_factor(self.group, elem)
                self._acts[key] = _word_matrix(
                    self.field, self.dim(n), self.gen_action(n), word)
        return self._acts[key]

    def induced(self, mor):
        """Matrix of the map induced along an arbitrary morphism."""
        n, m = mor.src, mor.dst
        self._check_degree(m)
        if self._induced_fn is not None:
            return self._induced_fn(mor)
        used = set(mor.inj)
        rest = [v for v in range(m) if v not in used]
        perm = list(mor.inj) + rest
        dec = list(mor.dec) + [0] * (m - n)
        aut = WreathGroupElement(perm, dec)
        M = Matrix.identity(self.field, self.dim(n))
        for k in range(n, m):
            M = self.transition(k) @ M
        if not aut.is_identity():
            M = self.action(m, aut) @ M
        return M

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_tables(field, group, dims, gen_mats, transitions):
        N = len(dims) - 1
        return TruncatedFIGModule(
            field, group, N,
            lambda n: dims[n],
            lambda n: gen_mats[n],
            lambda n: transitions[n])

    @staticmethod
    def zero(field, group, truncation):
        return TruncatedFIGModule(
            field, group, truncation,
            lambda n: 0,
            lambda n: [Matrix.zeros(field, 0, 0)
                       for _ in wreath_generators(group, n)],
            lambda n: Matrix.zeros(field, 0, 0))

    def truncate(self, new_top):
        if new_top > self.truncation:
            raise TruncationError("cannot extend truncation %d to %d"
                                  % (self.truncation, new_top),
                                  required=new_top)
        return TruncatedFIGModule(
            self.field, self.group, new_top,
            self.dim, self.gen_action, self.transition)

    # -- structural checks ------------------------------------------------

    def validate(self):
        problems = []
        field, G = self.field, self.group
        for n in range(self.truncation + 1):
            d = self.dim(n)
            gens = wreath_generators(G, n)
            mats = self.gen_action(n)
            if len(mats) != len(gens):
                problems.append("degree %d: generator matrix count" % n)
                continue
            for M in mats:
                if M.m != d or M.n != d:
                    problems.append("degree %d: action shape %dx%d for dim %d"
                                    % (n, M.m, M.n, d))
        if problems:
            return problems
        for n in range(self.truncation):
            X = self.transition(n)
            if X.m != self.dim(n + 1) or X.n != self.dim(n):
                problems.append("transition %d: shape %dx%d" % (n, X.m, X.n))
                continue
            for g, M in zip(wreath_generators(G, n), self.gen_action(n)):
                lhs = X @ M
                rhs = self.action(n + 1, wreath_embed(g, n + 1)) @ X
                if lhs != rhs:
                    problems.append("transition %d not equivariant" % n)
                    break
        for n in range(self.truncation - 1):
            XX = self.transition(n + 1) @ self.transition(n)
            swap = WreathGroupElement(
                list(range(n)) + [n + 1, n], [0] * (n + 2))
            if self.action(n + 2, swap) @ XX != XX:
                problems.append("two-step symmetry fails at degree %d" % n)
        return problems

    def dims(self):
        return [self.dim(n) for n in range(self.truncation + 1)]

    def is_zero(self):
        return all(self.dim(n) == 0 for n in range(self.truncation + 1))

    def degree(self):
        """Largest degree with a nonzero space, -inf if none (within N)."""
        top = NEG_INF
        for n in range(self.truncation + 1):
            if self.dim(n) > 0:
                top = n
        return top


class ModuleMorphism:
    """Degree-wise linear maps commuting with actions and transitions."""

    def __init__(self, source, target, mats):
        self.source = source
        self.target = target
        self.mats = dict(mats)

    def at(self, n):
        return self.mats[n]

    def validate(self):
        problems = []
        V, W = self.source, self.target
        if V.truncation != W.truncation:
            problems.append("truncation mismatch")
            return problems
        for n in range(V.truncation + 1):
            f = self.mats.get(n)
            if f is None or f.m != W.dim(n) or f.n != V.dim(n):
                problems.append("degree %d: missing or misshapen matrix" % n)
                return problems
            for Mv, Mw in zip(V.gen_action(n), W.gen_action(n)):
                if f @ Mv != Mw @ f:
                    problems.append("degree %d: not equivariant" % n)
                    break
        for n in range(V.truncation):
            if self.mats[n + 1] @ V.transition(n) != W.transition(n) @ self.mats[n]:
                problems.append("degree %d: does not commute with transition" % n)
        return problems

    def compose(self, other):
        """self after other."""
        mats = {n: self.mats[n] @ other.mats[n] for n in self.mats
                if n in other.mats}
        return ModuleMorphism(other.source, self.target, mats)


# ---------------------------------------------------------------------------
# Relatively projective modules


class GeneratorSummand:
    """One generator block: a representation W of the degree-m automorphisms.

    gen_mats is aligned with wreath_generators(group, degree); None means
    the regular representation (a plain free generator).
    """

    __slots__ = ("degree", "dim", "gen_mats")

    def __init__(self, degree, dim, gen_mats):
        self.degree = degree
        self.dim = dim
        self.gen_mats = None if gen_mats is None else list(gen_mats)


def free_summand(field, group, degree):
    """A single free generator at the given degree (regular representation)."""
    W = FBGModule.regular(field, group, degree)
    d, mats = W.support[degree]
    return GeneratorSummand(degree, d, mats)


class FreeCover:
    """The induced module on a list of generator summands.

    The degree-n basis is indexed by (summand j, increasing injection from
    the summand degree into range(n), W-basis index), ordered by j, then by
    injection, then by W index.
    """

    def __init__(self, field, group, summands, truncation):
        self.field = field
        self.group = group
        self.truncation = truncation
        self.summands = []
        for s in summands:
            if s.degree > truncation:
                raise TruncationError(
                    "generator degree %d above truncation %d"
                    % (s.degree, truncation), required=s.degree)
            mats = s.gen_mats
            if mats is None:
                reg = FBGModule.regular(field, group, s.degree)
                dim, mats = reg.support[s.degree]
                self.summands.append(GeneratorSummand(s.degree, dim, mats))
            else:
                self.summands.append(GeneratorSummand(s.degree, s.dim, mats))
        self._basis = {}
        self._index = {}
        self._wact = {}
        self._module = None

    def basis(self, n):
        if n not in self._basis:
            bas = []
            for j, s in enumerate(self.summands):
                if s.degree > n:
                    continue
                for comb in itertools.combinations(range(n), s.degree):
                    for k in range(s.dim):
                        bas.append((j, comb, k))
            self._basis[n] = bas
            self._index[n] = {b: i for i, b in enumerate(bas)}
        return self._basis[n]

    def index(self, n):
        self.basis(n)
        return self._index[n]

    def dim(self, n):
        total = 0
        for s in self.summands:
            if s.degree <= n:
                total += _binom(n, s.degree) * s.dim
        return total

    def w_action(self, j, elem):
        key = (j, elem)
        if key not in self._wact:
            s = self.summands[j]
            word = wreath_factor(self.group, elem)
            self._wact[key] = _word_matrix(self.field, s.dim, s.gen_mats, word)
        return self._wact[key]

    def induced(self, mor):
        """Matrix of the induced map along mor, straight from the basis."""
        n, m = mor.src, mor.dst
        G, field = self.group, self.field
        out = Matrix.zeros(field, self.dim(m), self.dim(n))
        idx_m = self.index(m)
        p = field.p
        for col, (j, comb, k) in enumerate(self.basis(n)):
            s = self.summands[j]
            rep = FIGMorphism(s.degree, n, comb, [0] * s.degree)
            comp = compose_morphisms(G, mor, rep)
            rep2, aut = rep_decompose(G, comp)
            Wm = self.w_action(j, aut)
            for k2 in range(s.dim):
                c = Wm.rows[k2][k]
                if c != 0:
                    row = idx_m[(j, rep2.inj, k2)]
                    out.rows[row][col] += c
                    if p is not None:
                        out.rows[row][col] %= p
        return out

    def gen_action(self, n):
        return [self.induced(FIGMorphism.from_wreath(g))
                for g in wreath_generators(self.group, n)]

    def transition(self, n):
        return self.induced(FIGMorphism.standard_inclusion(n, n + 1))

    def as_module(self):
        if self._module is None:
            self._module = TruncatedFIGModule(
                self.field, self.group, self.truncation,
                self.dim, self.gen_action, self.transition,
                induced_fn=self.induced)
        return self._module

    def generator_vector(self, j, k):
        """The tautological basis vector of summand j at its own degree."""
        s = self.summands[j]
        vec = [self.field.zero()] * self.dim(s.degree)
        vec[self.index(s.degree)[(j, tuple(range(s.degree)), k)]] = self.field.one()
        return vec

    def h0(self):
        """Zeroth homology: just the generator blocks, degree by degree."""
        support = {}
        degs = sorted(set(s.degree for s in self.summands))
        for m in degs:
            parts = [s for s in self.summands if s.degree == m]
            dim = sum(s.dim for s in parts)
            ngen = len(wreath_generators(self.group, m))
            mats = []
            for gi in range(ngen):
                mats.append(block_diag(self.field,
                                       [s.gen_mats[gi] for s in parts]))
            support[m] = (dim, mats)
        return FBGModule(self.field, self.group, support)

    def h0_projection(self, m):
        """Coordinate projection from degree m onto the generator blocks."""
        cols = []
        z, o = self.field.zero(), self.field.one()
        dim_m = self.dim(m)
        idx = self.index(m)
        rows = []
        for j, s in enumerate(self.summands):
            if s.degree != m:
                continue
            for k in range(s.dim):
                row = [z] * dim_m
                row[idx[(j, tuple(range(m)), k)]] = o
                rows.append(row)
        return Matrix(self.field, rows, (len(rows), dim_m))

    def h0_section(self, m):
        return self.h0_projection(m).transpose()


def _binom(n, k):
    import math
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def build_free(W, N, group=None, field=None):
    """The induced module on an FBG family: one summand per supported degree."""
    group = group or W.group
    field = field or W.field
    summands = [GeneratorSummand(m, W.dim(m), W.gen_action(m))
                for m in W.degrees()]
    return FreeCover(field, group, summands, N)


# ---------------------------------------------------------------------------
# Presentations and their degree-wise realization


class Relation:
    """A formal sum of terms (generator index, morphism, coefficient row),
    all landing in one target degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms):
        self.degree = degree
        self.terms = list(terms)


class Presentation:
    def __init__(self, field, group, generators, relations):
        self.field = field
        self.group = group
        self.generators = [g if g.gen_mats is not None
                           else free_summand(field, group, g.degree)
                           for g in generators]
        self.relations = list(relations)
        for rel in self.relations:
            for j, mor, coeffs in rel.terms:
                g = self.generators[j]
                if mor.src != g.degree or mor.dst != rel.degree:
                    raise ModuleError("relation term arity mismatch")
                if len(coeffs) != g.dim:
                    raise ModuleError("relation coefficient row length")

    @property
    def generation_degree(self):
        return max((g.degree for g in self.generators), default=-1)

    @property
    def relation_degree(self):
        return max((r.degree for r in self.relations), default=NEG_INF)


class RealizedModule:
    """A presentation realized degree by degree as a quotient of its cover.

    Exposes the cover, the saturated relation span R_n, and the quotient
    coordinates (Q_n, S_n) with Q_n S_n = I.
    """

    def __init__(self, presentation, truncation):
        P = presentation
        for rel in P.relations:
            if rel.degree > truncation:
                raise TruncationError(
                    "truncation %d below relation degree %d"
                    % (truncation, rel.degree), required=rel.degree)
        self.presentation = P
        self.field = P.field
        self.group = P.group
        self.truncation = truncation
        self.cover = FreeCover(P.field, P.group, P.generators, truncation)
        self._span = {}      # n -> Matrix whose columns span R_n
        self._q = {}
        self._s = {}
        self._top = -1
        self._rel_by_degree = {}
        for rel in P.relations:
            self._rel_by_degree.setdefault(rel.degree, []).append(rel)
        self.module = TruncatedFIGModule(
            P.field, P.group, truncation,
            self._dim, self._gen_action, self._transition)

    def _relation_vector(self, rel):
        field = self.field
        dim = self.cover.dim(rel.degree)
        vec = [field.zero()] * dim
        for j, mor, coeffs in rel.terms:
            M = self.cover.induced(mor)
            for k, c in enumerate(coeffs):
                c = field.of(c)
                if c == 0:
                    continue
                col = self.cover.index(self.presentation.generators[j].degree)[
                    (j, tuple(range(mor.src)), k)]
                for row in range(dim):
                    a = M.rows[row][col]
                    if a != 0:
                        vec[row] += a * c
        if field.p is not None:
            vec = [x % field.p for x in vec]
        return vec

    def _ensure(self, n):
        while self._top < n:
            k = self._top + 1
            seeds = []
            if k > 0 and self._span[k - 1].n > 0:
                X = self.cover.transition(k - 1)
                moved = X @ self._span[k - 1]
                seeds.extend(moved.cols())
            for rel in self._rel_by_degree.get(k, []):
                seeds.append(self._relation_vector(rel))
            dim = self.cover.dim(k)
            ops = self.cover.gen_action(k) if seeds else []
            R = invariant_span(self.field, dim, ops, seeds)
            self._span[k] = R
            Q, S = quotient_map(self.field, dim, R)
            self._q[k] = Q
            self._s[k] = S
            self._top = k

    def relation_span(self, n):
        self._ensure(n)
        return self._span[n]

    def proj(self, n):
        self._ensure(n)
        return self._q[n]

    def sect(self, n):
        self._ensure(n)
        return self._s[n]

    def _dim(self, n):
        self._ensure(n)
        return self._q[n].m

    def _gen_action(self, n):
        self._ensure(n)
        Q, S = self._q[n], self._s[n]
        return [Q @ M @ S for M in self.cover.gen_action(n)]

    def _transition(self, n):
        self._ensure(n + 1)
        return self._q[n + 1] @ self.cover.transition(n) @ self._s[n]

    def quotient_morphism(self):
        mats = {n: self.proj(n) for n in range(self.truncation + 1)}
        return ModuleMorphism(self.cover.as_module(), self.module, mats)


def realize(presentation, truncation):
    return RealizedModule(presentation, truncation)


def free_presentation(field, group, degrees):
    """A presentation with one free generator per listed degree, no relations."""
    gens = [GeneratorSummand(m, 0, None) for m in degrees]
    return Presentation(field, group, gens, [])


# ---------------------------------------------------------------------------
# Morphisms out of relatively projective modules, sums, sub and quotient
# structures


def hom_from_free(cover, V, phi_by_summand):
    """Extend degree-level equivariant maps to a morphism cover -> V.

    phi_by_summand[j] sends the j-th generator block (a representation at
    its degree) into V at the same degree; the unique extension sends the
    basis vector (j, rep, k) to the map induced along rep applied to the
    image of the k-th block vector.
    """
    field, G = cover.field, cover.group
    for j, s in enumerate(cover.summands):
        phi = phi_by_summand[j]
        if phi.m != V.dim(s.degree) or phi.n != s.dim:
            raise ModuleError("block map %d has the wrong shape" % j)
        for gmat, vmat in zip(s.gen_mats,
                              [V.action(s.degree, g)
                               for g in wreath_generators(G, s.degree)]):
            if phi @ gmat != vmat @ phi:
                raise ModuleError("block map %d is not equivariant" % j)
    from .groups import wreath_inverse
    from .figcat import rep_decompose, compose_morphisms
    mats = {}
    blocks_prev = {}
    for n in range(V.truncation + 1):
        blocks = {}
        top = n - 1
        deferred = []
        for j, s in enumerate(cover.summands):
            if s.degree > n:
                continue
            for comb in itertools.combinations(range(n), s.degree):
                if s.degree == n:
                    blocks[(j, comb)] = phi_by_summand[j]
                elif top not in comb:
                    blocks[(j, comb)] = V.transition(n - 1) @ blocks_prev[(j, comb)]
                else:
                    deferred.append((j, comb))
        for j, comb in deferred:
            s = cover.summands[j]
            p = min(set(range(n)) - set(comb))
            perm = list(range(n))
            perm[p], perm[top] = perm[top], perm[p]
            tau = WreathGroupElement(perm, [0] * n)
            comb2 = tuple(sorted(set(comb) - {top} | {p}))
            rep2 = FIGMorphism(s.degree, n, comb2, [0] * s.degree)
            comp = compose_morphisms(G, FIGMorphism.from_wreath(tau), rep2)
            back, aut = rep_decompose(G, comp)
            assert back.inj == comb
            Wback = cover.w_action(j, wreath_inverse(G, aut))
            blocks[(j, comb)] = V.action(n, tau) @ blocks[(j, comb2)] @ Wback
        cols = []
        for (j, comb, k) in cover.basis(n):
            B = blocks[(j, comb)]
            cols.append([B.rows[t][k] for t in range(B.m)])
        mats[n] = Matrix.from_cols(field, cols, V.dim(n))
        blocks_prev = blocks
    return ModuleMorphism(cover.as_module(), V, mats)


def direct_sum(V, W):
    if (V.field, V.group, V.truncation) != (W.field, W.group, W.truncation):
        raise ModuleError("direct sum of incompatible modules")
    field = V.field
    return TruncatedFIGModule(
        field, V.group, V.truncation,
        lambda n: V.dim(n) + W.dim(n),
        lambda n: [block_diag(field, [a, b])
                   for a, b in zip(V.gen_action(n), W.gen_action(n))],
        lambda n: block_diag(field, [V.transition(n), W.transition(n)]))


def submodule(V, bases):
    """The module carried by degree-wise stable subspaces, plus its inclusion.

    bases maps each degree to a matrix of independent columns spanning a
    subspace assumed stable under the action and the transitions; solve
    failures surface as errors, which indicates a non-stable input.
    """
    field = V.field

    def _restrict(big, B_from, B_to):
        X = solve(B_to, big @ B_from)
        if X is None:
            raise ModuleError("subspaces are not stable under the structure maps")
        return X

    def dim_fn(n):
        return bases[n].n

    def gen_fn(n):
        return [_restrict(M, bases[n], bases[n]) for M in V.gen_action(n)]

    def trans_fn(n):
        return _restrict(V.transition(n), bases[n], bases[n + 1])

    W = TruncatedFIGModule(field, V.group, V.truncation, dim_fn, gen_fn, trans_fn)
    incl = ModuleMorphism(W, V, {n: bases[n] for n in range(V.truncation + 1)})
    return W, incl


def quotient_module(V, bases):
    """The quotient by degree-wise stable subspaces, plus its projection."""
    field = V.field
    qs = {}

    def _qs(n):
        if n not in qs:
            qs[n] = quotient_map(field, V.dim(n), bases[n])
        return qs[n]

    def dim_fn(n):
        return _qs(n)[0].m

    def gen_fn(n):
        Q, S = _qs(n)
        return [Q @ M @ S for M in V.gen_action(n)]

    def trans_fn(n):
        Q1, _ = _qs(n + 1)
        _, S0 = _qs(n)
        return Q1 @ V.transition(n) @ S0

    W = TruncatedFIGModule(field, V.group, V.truncation, dim_fn, gen_fn, trans_fn)
    proj = ModuleMorphism(V, W, {n: _qs(n)[0]
                                 for n in range(V.truncation + 1)})
    return W, proj


def kernel_module(phi):
    """Degree-wise kernel of a morphism, as a submodule of its source."""
    bases = {n: kernel(phi.at(n)) for n in range(phi.source.truncation + 1)}
    return submodule(phi.source, bases)


def image_subspaces(phi):
    return {n: image(phi.at(n)) for n in range(phi.target.truncation + 1)}
