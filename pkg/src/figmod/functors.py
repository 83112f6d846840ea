"""Shift, derivative, homology, and the derived derivative functors.

Everything consumes and produces truncated modules.  A shift by b or a
derivative power a lowers the truncation by that amount; homology does not
(all kernels and cokernels at degree n only need data in degrees <= n + 1,
which the truncated form carries).
"""

from .exactla import (Matrix, EchelonBasis, image, kernel, solve,
                      quotient_map, invariant_span, intersect_subspaces,
                      sum_subspaces, hstack, rref)
from .groups import (wreath_embed, wreath_generators, wreath_inverse,
                     wreath_order, coset_chain)
from .figcat import FIGMorphism
from .figmodules import (TruncatedFIGModule, ModuleMorphism, FBGModule,
                         FreeCover, GeneratorSummand, ModuleError,
                         TruncationError, hom_from_free, kernel_module,
                         submodule, quotient_module)


def _shift_inclusion(n, b):
    """The map range(n+b) -> range(n+1+b) fixing the low part and moving the
    b distinguished top points up by one."""
    inj = list(range(n)) + list(range(n + 1, n + 1 + b))
    return FIGMorphism(n + b, n + 1 + b, inj, [0] * (n + b))


def _skip_inclusion(n, p):
    """The order inclusion range(n-1) -> range(n) missing the point p."""
    inj = list(range(p)) + list(range(p + 1, n))
    return FIGMorphism(n - 1, n, inj, [0] * (n - 1))


def shift(V, b):
    if b < 1 or b > V.truncation:
        raise TruncationError("shift amount %d outside truncation %d"
                              % (b, V.truncation), required=b)
    G, field = V.group, V.field
    return TruncatedFIGModule(
        field, G, V.truncation - b,
        lambda n: V.dim(n + b),
        lambda n: [V.action(n + b, wreath_embed(g, n + b))
                   for g in wreath_generators(G, n)],
        lambda n: V.induced(_shift_inclusion(n, b)))


def iota(V, b):
    """The canonical morphism from V (suitably truncated) into its shift."""
    SV = shift(V, b)
    src = V.truncate(V.truncation - b)
    mats = {n: V.induced(FIGMorphism.standard_inclusion(n, n + b))
            for n in range(src.truncation + 1)}
    return ModuleMorphism(src, SV, mats)


def derivative_with_maps(V, a):
    """The a-th derivative together with its quotient coordinates.

    Returns (DV, qs) where qs[n] = (Q_n, S_n) presents DV_n as a quotient of
    V_{n+a}; the pair is what is needed to push morphisms through the
    functor.
    """
    if a < 1 or a > V.truncation:
        raise TruncationError("derivative power %d outside truncation %d"
                              % (a, V.truncation), required=a)
    G, field = V.group, V.field
    N2 = V.truncation - a
    qs = {}

    def _qs(n):
        if n not in qs:
            imgs = [image(V.induced(_skip_inclusion(n + a, p)))
                    for p in range(n, n + a)]
            U = sum_subspaces(V.dim(n + a), field, imgs)
            qs[n] = quotient_map(field, V.dim(n + a), U)
        return qs[n]

    def dim_fn(n):
        return _qs(n)[0].m

    def gen_fn(n):
        Q, S = _qs(n)
        return [Q @ V.action(n + a, wreath_embed(g, n + a)) @ S
                for g in wreath_generators(G, n)]

    def trans_fn(n):
        Q1, _ = _qs(n + 1)
        _, S0 = _qs(n)
        return Q1 @ V.induced(_shift_inclusion(n, a)) @ S0

    DV = TruncatedFIGModule(field, G, N2, dim_fn, gen_fn, trans_fn)
    return DV, _qs


def derivative(V, a=1):
    return derivative_with_maps(V, a)[0]


def derivative_cover_maps(cover, a):
    """Derivative of an induced module, using that the span being divided
    out is a coordinate subspace of the standard basis: a basis element
    survives exactly when its injection covers all a distinguished points.

    Matches derivative_with_maps on such modules but does no elimination.
    """
    V = cover.as_module()
    field, G = cover.field, cover.group
    if a < 1 or a > V.truncation:
        raise TruncationError("derivative power %d outside truncation %d"
                              % (a, V.truncation), required=a)
    qs = {}

    def _qs(n):
        if n not in qs:
            need = set(range(n, n + a))
            keep = [i for i, (j, comb, k) in enumerate(cover.basis(n + a))
                    if need <= set(comb)]
            dim = cover.dim(n + a)
            z, o = field.zero(), field.one()
            rows = []
            for i in keep:
                row = [z] * dim
                row[i] = o
                rows.append(row)
            Q = Matrix(field, rows, (len(keep), dim))
            qs[n] = (Q, Q.transpose())
        return qs[n]

    def dim_fn(n):
        return _qs(n)[0].m

    def gen_fn(n):
        Q, S = _qs(n)
        from .groups import wreath_embed as _we, wreath_generators as _wg
        return [Q @ V.action(n + a, _we(g, n + a)) @ S for g in _wg(G, n)]

    def trans_fn(n):
        Q1, _ = _qs(n + 1)
        _, S0 = _qs(n)
        return Q1 @ V.induced(_shift_inclusion(n, a)) @ S0

    DV = TruncatedFIGModule(field, G, V.truncation - a, dim_fn, gen_fn, trans_fn)
    return DV, _qs


def derivative_of_morphism(phi, a, src_pair=None, tgt_pair=None):
    """Push a morphism through the a-th derivative functor."""
    DV, qs_v = src_pair if src_pair else derivative_with_maps(phi.source, a)
    DW, qs_w = tgt_pair if tgt_pair else derivative_with_maps(phi.target, a)
    mats = {}
    for n in range(DV.truncation + 1):
        Qw, _ = qs_w(n)
        _, Sv = qs_v(n)
        mats[n] = Qw @ phi.at(n + a) @ Sv
    return ModuleMorphism(DV, DW, mats)


def h1d_dims(V):
    """Dimensions of the kernel of the one-step transitions: the first
    derived derivative of V, degree by degree (through truncation - 1)."""
    out = []
    for n in range(V.truncation):
        out.append(V.dim(n) - len(image(V.transition(n)).cols()))
    return out


def lower_span(V, n):
    """The subspace of V_n spanned by everything from lower degrees.

    The sum of the images of the n order inclusions range(n-1) -> range(n)
    is already stable under the degree-n group action (composing with a
    group element just permutes the inclusions), so no further saturation
    is needed.
    """
    if n == 0 or V.dim(n - 1) == 0:
        return Matrix.zeros(V.field, V.dim(n), 0)
    from .exactla import EchelonBasis
    ech = EchelonBasis(V.field, V.dim(n))
    for q in range(n):
        ech.insert_block(V.induced(_skip_inclusion(n, q)))
        if ech.rank == V.dim(n):
            break
    return ech.basis_matrix()


def h0_with_maps(V):
    """Zeroth homology plus its per-degree (Q, S) quotient coordinates."""
    support = {}
    maps = {}
    for n in range(V.truncation + 1):
        d = V.dim(n)
        if d == 0:
            maps[n] = quotient_map(V.field, 0, Matrix.zeros(V.field, 0, 0))
            continue
        U = lower_span(V, n)
        Q, S = quotient_map(V.field, d, U)
        maps[n] = (Q, S)
        if Q.m > 0:
            support[n] = (Q.m, [Q @ M @ S for M in V.gen_action(n)])
    return FBGModule(V.field, V.group, support), maps


def h0(V):
    return h0_with_maps(V)[0]


# ---------------------------------------------------------------------------
# Covers and resolutions


def _section_by_averaging(M, n, L, U0m):
    """Equivariant section of the covered-span quotient by group averaging.

    Only available when the group order at this degree is invertible in the
    field; then the average of the conjugates of any linear section is again
    a section, and it is equivariant.  The average is taken level by level
    along a coset chain, so the number of conjugations is quadratic in n
    rather than factorial.  Returns (psi, wmats) or None.
    """
    field, G = M.field, M.group
    if field.p is not None and wreath_order(G, n) % field.p == 0:
        return None
    dim = M.dim(n)
    Qw, _ = quotient_map(field, dim, L)
    Kbar = Qw @ U0m

    def rho_w(w):
        c = solve(Kbar, Qw @ (M.action(n, w) @ U0m))
        if c is None:
            raise ModuleError("kernel classes are not stable at degree %d"
                              % n)
        return c

    X = U0m
    for level in coset_chain(G, n):
        acc = None
        for c in level:
            if c.is_identity():
                term = X
            else:
                term = (M.action(n, c) @ X) @ rho_w(wreath_inverse(G, c))
            acc = term if acc is None else acc + term
        X = acc.scale(field.inv(field.of(len(level))))
    wmats = [rho_w(g) for g in wreath_generators(G, n)]
    return X, wmats


def _section_by_solve(M, n, L, LK, U0m, budget=250000):
    """Equivariant section of the covered-span quotient by linear algebra.

    Parametrizes the possible lifts of the kernel classes (the free part is
    a map into the covered part of the submodule) and solves the
    equivariance equations exactly.  Works in any characteristic but may
    find that no section exists (the extension need not split over F_p);
    returns None then, or when the system is over the cost budget.
    """
    field = M.field
    dim = M.dim(n)
    dw = U0m.n
    dl = LK.n
    ops = M.gen_action(n)
    nvar = dl * dw
    if nvar * (len(ops) * dim * dw + nvar) > budget * 40:
        return None
    Qw, _ = quotient_map(field, dim, L)
    Kbar = Qw @ U0m
    rho = []
    for g in ops:
        c = solve(Kbar, Qw @ (g @ U0m))
        if c is None:
            raise ModuleError("kernel classes are not stable at degree %d"
                              % n)
        rho.append(c)
    if dl == 0:
        # the lifts themselves must already be equivariant
        psi = U0m
        for g, w in zip(ops, rho):
            if g @ psi != psi @ w:
                return None
        return psi, rho
    z = field.zero()
    rows = []
    for g, W in zip(ops, rho):
        gU = g @ U0m
        gLK = g @ LK
        for j in range(dw):
            wcol = [W.rows[k][j] for k in range(dw)]
            for r in range(dim):
                row = [z] * (nvar + 1)
                for l in range(dl):
                    row[l * dw + j] += gLK.rows[r][l]
                for k in range(dw):
                    w = wcol[k]
                    if w != 0:
                        for l in range(dl):
                            row[l * dw + k] -= w * LK.rows[r][l]
                b = sum(U0m.rows[r][k] * wcol[k] for k in range(dw)) \
                    - gU.rows[r][j]
                row[nvar] = b
                if field.p is not None:
                    row = [x % field.p for x in row]
                if any(row):
                    rows.append(row)
    if not rows:
        psi = U0m
    else:
        A = Matrix(field, rows, (len(rows), nvar + 1))
        R, piv = rref(A)
        if nvar in piv:
            return None
        mu = [[z] * dw for _ in range(dl)]
        for r, pc in enumerate(piv):
            mu[pc // dw][pc % dw] = R.rows[r][nvar]
        psi = U0m + LK @ Matrix(field, mu, (dl, dw))
    for g, w in zip(ops, rho):
        if g @ psi != psi @ w:
            raise ModuleError("solved section fails equivariance")
    return psi, rho


def _cyclic_summand(M, n, ech, B, scan_limit=8):
    """Smallest stable span among (a bounded number of) the kernel vectors
    not yet covered.  Returns (basis, wmats) and leaves ech untouched."""
    field = M.field
    dim = M.dim(n)
    ops = M.gen_action(n)
    cands = []
    probe = ech.clone()
    for e in B.cols():
        if probe.insert(e):
            cands.append(e)
            if len(cands) >= scan_limit:
                break
    best = None
    for e in cands:
        W = invariant_span(field, dim, ops, [e],
                           cap=None if best is None else best.n - 1)
        if W is not None and (best is None or W.n < best.n):
            best = W
    if best is None:
        raise ModuleError("no stable span found at degree %d" % n)
    if ops:
        stacked = solve(best, hstack([op @ best for op in ops]))
        wmats = [Matrix(field, [r[i * best.n:(i + 1) * best.n]
                                for r in stacked.rows],
                        (best.n, best.n)) for i in range(len(ops))]
    else:
        wmats = []
    return best, wmats


def _degree_summands(M, n, ech, B):
    """Generator summands at degree n that, together with the span already
    in ech, cover the columns of B.  Prefers a single minimal summand (one
    lift per new generator class, found by averaging or by solving for an
    equivariant section); when the quotient does not split over the field,
    covers the deficit with smallest-available stable spans.  Inserts
    everything chosen into ech and returns [(summand, block), ...]."""
    field = M.field
    dim = M.dim(n)
    probe = ech.clone()
    lifts = [c for c in B.cols() if probe.insert(c)]
    if not lifts:
        return []
    U0m = Matrix.from_cols(field, lifts, dim)
    L = ech.basis_matrix()
    sect = _section_by_averaging(M, n, L, U0m)
    if sect is None:
        if B.n == dim:
            LK = L
        else:
            LK = intersect_subspaces(L, B) if L.n > 0 else L
        sect = _section_by_solve(M, n, L, LK, U0m)
    if sect is not None:
        psi, wmats = sect
        ech.insert_block(psi)
        return [(GeneratorSummand(n, psi.n, wmats), psi)]
    out = []
    while True:
        remaining = Matrix.from_cols(
            field, [c for c in B.cols() if not ech.contains(c)], dim)
        if remaining.n == 0:
            break
        W, wmats = _cyclic_summand(M, n, ech, remaining)
        out.append((GeneratorSummand(n, W.n, wmats), W))
        ech.insert_block(W)
    return out


def cover_submodule(M, kernel_bases):
    """Cover the submodule spanned degree-wise by kernel_bases inside M.

    Works entirely in ambient coordinates: scans degrees upward, keeps the
    span generated so far (the sum of the images of the order inclusions
    applied to the previous span, which is automatically stable), and covers
    any deficit with new generator summands.  Returns (cover, morphism into
    M) whose image is exactly the given submodule at every degree.
    """
    field, G = M.field, M.group
    summands = []
    blocks = []
    cur = None
    for n in range(M.truncation + 1):
        dim = M.dim(n)
        B = kernel_bases[n]
        ech = EchelonBasis(field, dim)
        if n > 0 and cur is not None and cur.n > 0:
            for q in range(n):
                ech.insert_block(M.induced(_skip_inclusion(n, q)) @ cur)
                if ech.rank == B.n:
                    break
        for summand, block in _degree_summands(M, n, ech, B):
            summands.append(summand)
            blocks.append(block)
        if ech.rank != B.n:
            raise ModuleError("generated span does not match the submodule "
                              "at degree %d" % n)
        # same span as the echelon basis, but B is usually sparser, which
        # makes the next degree's image products cheaper
        cur = B
    cover = FreeCover(field, G, summands, M.truncation)
    return cover, hom_from_free(cover, M, blocks)


def cover_module(V):
    """A surjection onto V from an induced module.

    The cover of the module itself is the cover of the full submodule; the
    summands are minimal whenever the generator-class quotients split over
    the coefficient field (always in characteristic zero).
    """
    bases = {n: Matrix.identity(V.field, V.dim(n))
             for n in range(V.truncation + 1)}
    return cover_submodule(V, bases)




class Resolution:
    """A finite chain of covers resolving a module.

    covers[j] maps onto the kernel of the previous stage; diffs[j] (for
    j >= 1) is the composite into covers[j-1]'s induced module.  Degree-wise
    exactness holds at every degree within the truncation, so the homology
    of the generator-block complex computes the derived functors.
    """

    def __init__(self, V, length):
        self.V = V
        self.covers = []
        self.diffs = {}
        self._kernels = {}
        cover, aug = cover_module(V)
        self.covers.append(cover)
        self.aug = aug
        self.extend(length)

    def extend(self, length):
        """Grow the chain until it has length + 1 covers; a no-op when it is
        already that deep."""
        for j in range(len(self.covers), length + 1):
            Mprev = self.covers[j - 1].as_module()
            bases = self.kernel_bases(j - 1)
            cover, d = cover_submodule(Mprev, bases)
            self.covers.append(cover)
            self.diffs[j] = d

    def kernel_bases(self, j):
        """Degree-wise kernel of the j-th map of the chain (j = 0 is the
        augmentation onto V), in the coordinates of covers[j]."""
        if j not in self._kernels:
            d = self.aug if j == 0 else self.diffs[j]
            top = self.covers[j].truncation
            self._kernels[j] = {n: kernel(d.at(n)) for n in range(top + 1)}
        return self._kernels[j]

    def h0_map(self, j, m):
        """The generator-block component of diffs[j] at degree m."""
        src = self.covers[j]
        tgt = self.covers[j - 1]
        P = tgt.h0_projection(m)
        E = src.h0_section(m)
        return P @ self.diffs[j].at(m) @ E


def homology(V, i, resolution=None):
    """The i-th derived functor of degree-wise generation, as an FBG family."""
    if i == 0:
        return h0(V)
    res = resolution if resolution is not None else Resolution(V, i + 1)
    field, G = V.field, V.group
    support = {}
    for m in range(V.truncation + 1):
        dmid = res.covers[i].h0().dim(m)
        if dmid == 0:
            continue
        g = res.h0_map(i, m)
        f = res.h0_map(i + 1, m)
        Z = kernel(g)
        B = image(f)
        CB = solve(Z, B)
        if CB is None:
            raise ModuleError("boundary does not land in cycles; "
                              "resolution is inconsistent")
        Q, S = quotient_map(field, Z.n, CB)
        if Q.m == 0:
            continue
        mats = []
        for M in res.covers[i].h0().gen_action(m):
            inner = solve(Z, M @ Z)
            mats.append(Q @ inner @ S)
        support[m] = (Q.m, mats)
    return FBGModule(field, G, support)


def subquotient_module(X, z_bases, b_bases):
    """The module Z/B carried by stable degree-wise subspaces B <= Z of X."""
    Zmod, _ = submodule(X, z_bases)
    inner = {}
    for n in range(X.truncation + 1):
        C = solve(z_bases[n], b_bases[n])
        if C is None:
            raise ModuleError("boundaries do not lie inside cycles")
        inner[n] = C
    H, _ = quotient_module(Zmod, inner)
    return H


def derived_derivative(V, i, a, resolution=None):
    """The i-th left derived functor of the a-th derivative, with its full
    degree-wise structure (a truncated module, not just dimensions)."""
    if i < 1 or a < 1:
        raise ModuleError("need i >= 1 and a >= 1")
    if a > V.truncation:
        raise TruncationError("derivative power above truncation", required=a)
    res = resolution if resolution is not None else Resolution(V, i + 1)
    pairs = [derivative_cover_maps(c, a) for c in res.covers]
    dmid = pairs[i][0]
    Dd_i = derivative_of_morphism(res.diffs[i], a,
                                  src_pair=pairs[i], tgt_pair=pairs[i - 1])
    Dd_next = derivative_of_morphism(res.diffs[i + 1], a,
                                     src_pair=pairs[i + 1], tgt_pair=pairs[i])
    z_bases = {}
    b_bases = {}
    for n in range(dmid.truncation + 1):
        z_bases[n] = kernel(Dd_i.at(n))
        b_bases[n] = image(Dd_next.at(n))
    return subquotient_module(dmid, z_bases, b_bases)


def _relative_kernel_dims(M, kbases, a):
    """Degree-wise dimension of the kernel of the induced map on the a-th
    derivative (degree-wise generation when a = 0) from the submodule with
    the given degree-wise bases into the ambient module M.

    Everything reduces to echelon ranks in M's coordinates: with U the sum
    of the relevant lower images (all order inclusions when a = 0, the a
    distinguished ones otherwise), the answer at degree n is
    dim(K meet U_M) - dim(U_K).
    """
    from .exactla import EchelonBasis
    field = M.field
    out = []
    for n in range(M.truncation + 1 - a):
        m = n + a
        dim = M.dim(m)
        B = kbases[m]
        if B.n == 0:
            out.append(0)
            continue
        ech_m = EchelonBasis(field, dim)
        ech_k = EchelonBasis(field, dim)
        if m > 0:
            Bprev = kbases[m - 1]
            for q in (range(m) if a == 0 else range(n, m)):
                ind = M.induced(_skip_inclusion(m, q))
                ech_m.insert_block(ind)
                if Bprev.n > 0:
                    ech_k.insert_block(ind @ Bprev)
        r_u = ech_m.rank
        ech_m.insert_block(B)
        out.append(B.n + r_u - ech_m.rank - ech_k.rank)
    return out


def homology_dims(V, i, a=0, resolution=None):
    """Degree-wise dimensions of the i-th derived functor (i >= 1) of the
    a-th derivative, or of degree-wise generation when a = 0.

    Works by dimension shifting along the cover chain: induced modules are
    acyclic for both functors, so the i-th derived functor of V is the
    kernel of the functor applied to the (i-1)-st syzygy inclusion.  Only
    the first i-1 covers of the resolution are needed, which makes this far
    cheaper than assembling the homology modules themselves.
    """
    if i < 1:
        raise ModuleError("need i >= 1; use h0 or the derivative directly")
    res = resolution if resolution is not None else Resolution(V, i - 1)
    if len(res.covers) < i:
        raise ModuleError("resolution too short: need %d covers" % i)
    M = res.covers[i - 1].as_module()
    return _relative_kernel_dims(M, res.kernel_bases(i - 1), a)


def fbg_dims(W, top):
    return [W.dim(n) for n in range(top + 1)]


def h1da_intersection(realized, a, top=None):
    """First derived derivative of a presented module by the intersection
    formula inside its cover: at each degree, (relation span meets the sum
    of the distinguished lower images) over (the transported relation span).

    Returns an FBG family; independent of any resolution, so it serves as a
    cross-check for the resolution-based computation.
    """
    cover = realized.cover
    field, G = realized.field, realized.group
    N = realized.truncation
    if a < 1 or a > N:
        raise TruncationError("derivative power outside truncation", required=a)
    if top is None:
        top = N - a
    support = {}
    Mmod = cover.as_module()
    for n in range(top + 1):
        K_top = realized.relation_span(n + a)
        K_prev = realized.relation_span(n + a - 1)
        m_imgs = []
        k_imgs = []
        for p in range(n, n + a):
            ind = cover.induced(_skip_inclusion(n + a, p))
            m_imgs.append(image(ind))
            if K_prev.n > 0:
                k_imgs.append(image(ind @ K_prev))
        dim_m = cover.dim(n + a)
        m_sum = sum_subspaces(dim_m, field, m_imgs)
        k_sum = sum_subspaces(dim_m, field, k_imgs)
        num = intersect_subspaces(K_top, m_sum) if K_top.n > 0 else \
            Matrix.zeros(field, dim_m, 0)
        if num.n == 0:
            continue
        CB = solve(num, k_sum) if k_sum.n > 0 else Matrix.zeros(field, num.n, 0)
        if CB is None:
            raise ModuleError("transported relations escape the intersection")
        Q, S = quotient_map(field, num.n, CB)
        if Q.m == 0:
            continue
        mats = []
        for g in wreath_generators(G, n):
            big = Mmod.action(n + a, wreath_embed(g, n + a))
            inner = solve(num, big @ num)
            mats.append(Q @ inner @ S)
        support[n] = (Q.m, mats)
    return FBGModule(field, G, support)
