"""Numerical invariants of truncated modules: degree data, torsion, depth,
derived regularity and width, regularity, shift-stabilization numbers,
filtration witnesses, and dimension polynomials.

Everything here reports a value together with a certification flag.  A value
is certified when the truncation is at least the theoretical bound computed
from the declared generation degree d and relation degree r; otherwise the
value is exact within the truncation window but might change if more degrees
were available.
"""

import math
import random
from fractions import Fraction

from .exactla import (Matrix, EchelonBasis, QQ, FieldSpec, image, kernel,
                      intersect_subspaces, sum_subspaces)
from .groups import trivial_group
from .figcat import enumerate_hom
from .figmodules import (NEG_INF, ModuleError, TruncationError, FBGModule,
                         GeneratorSummand, FreeCover, Presentation, Relation,
                         realize, hom_from_free, kernel_module,
                         quotient_module, image_subspaces, build_free)
from .functors import (shift, h0, homology_dims, Resolution, cover_module,
                       _skip_inclusion)

INF = math.inf


def _top_nonzero(dims):
    """Largest index with a nonzero entry, NEG_INF if none."""
    top = NEG_INF
    for n, v in enumerate(dims):
        if v:
            top = n
    return top


def _clamp(x):
    """Treat -inf (and the zero-module convention -1) as 0 in bound math."""
    return 0 if x == NEG_INF or x < 0 else int(x)


def base_window(d, r):
    """The degree r + min{r, d} that controls every certification bound,
    computed from the declared generation degree d and relation degree r
    (either may be -inf or -1 for trivial data; both clamp to 0)."""
    dd, rr = _clamp(d), _clamp(r)
    return rr + min(rr, dd)


def certified_requirements(d, r):
    """Truncation needed to certify each invariant, keyed by name.

    hd_i needs base + i - 1 (the degree bound on H_i is reg + i with
    reg <= base - 1); regularity scans i up to base; the dimension
    polynomial needs base + d + 1 so the fit points sit strictly inside the
    window; shift-stabilization composes a shift of up to base degrees with
    a first-homology window.
    """
    n0 = base_window(d, r)
    dd = _clamp(d)
    return {
        "degrees": n0,
        "torsion": n0,
        "depth": n0,
        "derived_regularity": n0,
        "sharp_filtered": max(n0, dd + 1),
        "regularity": max(2 * n0 - 1, 1),
        "nagpal_number": 2 * n0,
        "hilbert": n0 + dd + 1,
    }


# ---------------------------------------------------------------------------
# Degree data


def degrees(V, i_max=0, resolution=None):
    """Degree of V, its generation degree, and hd_i for 1 <= i <= i_max.

    The degree is an exact integer when V vanishes at the truncation, the
    pair ("ge", N) when V_N != 0 (the true degree may exceed N), or NEG_INF
    for the zero module.  The generation degree follows the convention that
    the zero module is generated in degree -1.
    """
    N = V.truncation
    if V.dim(N) > 0:
        deg = ("ge", N)
    else:
        deg = V.degree()
    gen = h0(V).deg()
    if gen == NEG_INF:
        gen = -1
    hd = {}
    if i_max >= 1:
        res = resolution if resolution is not None else Resolution(V, i_max - 1)
        for i in range(1, i_max + 1):
            hd[i] = _top_nonzero(homology_dims(V, i, 0, res))
    return deg, gen, hd


def torsion(V):
    """(is_torsion_free, torsion dims per degree).

    The torsion space at degree n is the kernel of the composite transition
    into the truncation degree; torsion-freeness is equivalent to every
    one-step transition being injective.
    """
    N = V.truncation
    free = True
    dims = []
    for n in range(N):
        X = V.transition(n)
        if kernel(X).n > 0:
            free = False
        comp = X
        for k in range(n + 1, N):
            comp = V.transition(k) @ comp
        dims.append(kernel(comp).n)
    dims.append(0)
    return free, dims


# ---------------------------------------------------------------------------
# Depth and derived regularity


def depth(V, resolution=None):
    """The first a >= 0 whose (a+1)-st derivative has nonvanishing first
    derived functor, or inf when the first homology already vanishes (then
    the module is acyclic for every derivative power)."""
    res = resolution if resolution is not None else Resolution(V, 0)
    if _top_nonzero(homology_dims(V, 1, 0, res)) == NEG_INF:
        return INF
    _, gen, _ = degrees(V)
    cap = min(max(gen, 0), V.truncation - 1)
    for a in range(cap + 1):
        if _top_nonzero(homology_dims(V, 1, a + 1, res)) != NEG_INF:
            return a
    raise ModuleError("no derivative power detects finite depth within the "
                      "generation-degree bound; structure data is inconsistent")


def derived_regularity(V, resolution=None):
    """(dreg, dwidth): the suprema of deg H_1^{D^a} and of deg H_1^{D^a} + a.

    Both suprema are attained for a <= max{hd_1, generation degree}; beyond
    that every derivative power is exact on V.  Returns (-inf, -inf) when V
    is acyclic for all powers.
    """
    res = resolution if resolution is not None else Resolution(V, 0)
    hd1 = _top_nonzero(homology_dims(V, 1, 0, res))
    if hd1 == NEG_INF:
        return NEG_INF, NEG_INF
    _, gen, _ = degrees(V)
    amax = min(max(hd1, gen, 1), V.truncation)
    dreg = NEG_INF
    dwidth = NEG_INF
    for a in range(1, amax + 1):
        top = _top_nonzero(homology_dims(V, 1, a, res))
        if top != NEG_INF:
            dreg = max(dreg, top)
            dwidth = max(dwidth, top + a)
    return dreg, dwidth


# ---------------------------------------------------------------------------
# Filtration by induced modules


def sharp_filtration(V):
    """Build the cofiltration witnessing that V is filtered by induced
    modules: repeatedly surject the induced module on the lowest nonzero
    degree onto V and pass to the quotient.

    Returns the list of cofactors [(degree, dim), ...] on success, or None
    when some step fails to be injective (which certifies the failure: a
    filtered module never loses a vector here).
    """
    field = V.field
    X = V
    cofactors = []
    while True:
        low = None
        for n in range(X.truncation + 1):
            if X.dim(n) > 0:
                low = n
                break
        if low is None:
            return cofactors
        dim = X.dim(low)
        cover = FreeCover(field, X.group,
                          [GeneratorSummand(low, dim, X.gen_action(low))],
                          X.truncation)
        phi = hom_from_free(cover, X, [Matrix.identity(field, dim)])
        for n in range(X.truncation + 1):
            if kernel(phi.at(n)).n > 0:
                return None
        cofactors.append((low, dim))
        X, _ = quotient_module(X, image_subspaces(phi))


def sharp_filtered(V, resolution=None):
    """(flag, witness): flag tests vanishing of the first homology; the
    witness is the constructed cofiltration when the flag holds (its
    cofactors are exactly the nonzero terms of h0(V)), or None."""
    res = resolution if resolution is not None else Resolution(V, 0)
    flag = _top_nonzero(homology_dims(V, 1, 0, res)) == NEG_INF
    witness = sharp_filtration(V) if flag else None
    return flag, witness


def nagpal_number(V, resolution=None):
    """The least b >= 0 for which the b-th shift of V is filtered by induced
    modules (b = 0 meaning V itself already is)."""
    flag, _ = sharp_filtered(V, resolution)
    if flag:
        return 0
    for b in range(1, V.truncation + 1):
        SV = shift(V, b)
        if SV.truncation < 1:
            break
        if _top_nonzero(homology_dims(SV, 1)) == NEG_INF:
            return b
    raise TruncationError(
        "no shift within the truncation has vanishing first homology",
        required=2 * V.truncation)


# ---------------------------------------------------------------------------
# Regularity and dimension polynomials


def regularity(V, i_max, resolution=None):
    """(reg, hd) with reg = max over 1 <= i <= i_max of hd_i - i and hd the
    per-index degrees of the derived functors of degree-wise generation."""
    res = resolution if resolution is not None else Resolution(V, i_max - 1)
    hd = {}
    reg = NEG_INF
    for i in range(1, i_max + 1):
        hd[i] = _top_nonzero(homology_dims(V, i, 0, res))
        if hd[i] != NEG_INF:
            reg = max(reg, hd[i] - i)
    return reg, hd


def fit_polynomial(points):
    """Exact interpolation through [(x, y), ...]; ascending Fraction
    coefficients.  The y values are integers, the polynomial lives over Q."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        # Lagrange basis polynomial for xi, accumulated as coefficients
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] += c * (-xj)
                nxt[k + 1] += c
            basis = nxt
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_polynomial(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def hilbert(V, d, r):
    """Dimension data: per-degree values, the interpolated polynomial of
    degree <= d through the points at the start of the stable window, the
    window start itself, and the earliest degree from which the polynomial
    agrees with every computed value.

    Raises when the truncation cannot certify the fit; the required
    truncation rides on the error.
    """
    N = V.truncation
    values = V.dims()
    n0 = base_window(d, r)
    dd = _clamp(d)
    need = n0 + dd + 1
    if N < need:
        raise TruncationError(
            "truncation %d cannot certify a dimension polynomial" % N,
            required=need)
    pts = [(n, values[n]) for n in range(n0, n0 + dd + 1)]
    poly = fit_polynomial(pts)
    agrees_from = None
    for n in range(N, -1, -1):
        if eval_polynomial(poly, n) != values[n]:
            break
        agrees_from = n
    return {
        "values": values,
        "polynomial": poly,
        "stable_from": n0,
        "agrees_from": agrees_from,
    }


ALL_INVARIANTS = ("degrees", "torsion", "depth", "derived_regularity",
                  "sharp_filtered", "nagpal_number", "regularity", "hilbert")


def analyze(realized, requested=None, i_max=None):
    """The full per-module report: every requested invariant with its value
    and a certification flag (True when the truncation meets the theoretical
    requirement for that invariant), plus internal consistency checks.

    Values that need degrees beyond the truncation degrade gracefully: they
    are reported as computed within the window with certified=False, except
    the dimension polynomial, which raises when it cannot be fitted at all.
    """
    pres = realized.presentation
    V = realized.module
    N = realized.truncation
    d = pres.generation_degree
    r = pres.relation_degree
    req = certified_requirements(d, r)
    n0 = base_window(d, r)
    if i_max is None:
        i_max = max(n0, 1)
    names = list(requested) if requested else list(ALL_INVARIANTS)
    for name in names:
        if name not in ALL_INVARIANTS:
            raise ModuleError("unknown invariant %r" % name)
    need_res = any(n in names for n in
                   ("degrees", "depth", "derived_regularity",
                    "sharp_filtered", "nagpal_number", "regularity"))
    res = Resolution(V, i_max - 1) if need_res else None
    out = {}

    def cert(name):
        return N >= req[name]

    if "degrees" in names:
        deg, gen, hd = degrees(V, i_max, res)
        out["degree"] = {"value": deg, "certified": not isinstance(deg, tuple)}
        out["generation_degree"] = {"value": gen, "certified": cert("degrees")}
        out["hd"] = {i: {"value": hd[i],
                         "certified": N >= n0 - 1 + i}
                     for i in sorted(hd)}
    if "torsion" in names:
        free, tdims = torsion(V)
        out["torsion"] = {"torsion_free": free, "dims": tdims,
                          "certified": cert("torsion")}
    if "depth" in names:
        out["depth"] = {"value": depth(V, res), "certified": cert("depth")}
    if "derived_regularity" in names:
        dreg, dwidth = derived_regularity(V, res)
        out["dreg"] = {"value": dreg, "certified": cert("derived_regularity")}
        out["dwidth"] = {"value": dwidth,
                         "certified": cert("derived_regularity")}
    if "sharp_filtered" in names:
        flag, witness = sharp_filtered(V, res)
        out["sharp_filtered"] = {"value": flag, "witness": witness,
                                 "certified": cert("sharp_filtered")}
    if "nagpal_number" in names:
        out["nagpal_number"] = {"value": nagpal_number(V, res),
                                "certified": cert("nagpal_number")}
    if "regularity" in names:
        reg, hd = regularity(V, i_max, res)
        bound = (NEG_INF if r == NEG_INF
                 else int(r) + min(int(r), max(d, 0)) - 1)
        out["regularity"] = {"value": reg, "bound": bound,
                             "certified": N >= n0 - 1 + i_max}
    if "hilbert" in names:
        try:
            out["hilbert"] = dict(hilbert(V, d, r))
            out["hilbert"]["certified"] = True
        except TruncationError as exc:
            out["hilbert"] = {"values": V.dims(), "polynomial": None,
                              "certified": False,
                              "required_truncation": exc.required}

    consistency = {}
    if "dreg" in out and "dwidth" in out:
        a, b = out["dreg"]["value"], out["dwidth"]["value"]
        consistency["width_exceeds_dreg"] = (a == NEG_INF and b == NEG_INF) \
            or (a != NEG_INF and b != NEG_INF and a + 1 <= b)
    if "depth" in out and "torsion" in out:
        consistency["depth_zero_iff_torsion"] = \
            (out["depth"]["value"] == 0) == (not out["torsion"]["torsion_free"])
    if "depth" in out and "sharp_filtered" in out:
        consistency["depth_infinite_iff_filtered"] = \
            (out["depth"]["value"] == INF) == out["sharp_filtered"]["value"]
    if not all(consistency.values()):
        bad = [k for k, v in consistency.items() if not v]
        raise ModuleError("internal invariant violation: %s" % ", ".join(bad))

    return {
        "truncation": N,
        "field": repr(pres.field),
        "group": pres.group.name or "custom",
        "declared": {"generation_degree": d,
                     "relation_degree": r,
                     "certified_requirements": req},
        "invariants": out,
        "consistency": consistency,
    }


# ---------------------------------------------------------------------------
# The lattice identity for torsion-free submodule pairs


def span_identity_holds(M, kbases, n, a):
    """Whether K_n meet (sum of a lower images of M) equals the sum of the
    transported K_{n-1} images, for the submodule K of M spanned degree-wise
    by kbases.  The right side always sits inside the left, so equality is
    a rank comparison.
    """
    field = M.field
    dim = M.dim(n)
    K = kbases[n]
    inds = [M.induced(_skip_inclusion(n, p)) for p in range(a)]
    m_sum = sum_subspaces(dim, field, [image(ind) for ind in inds])
    if K.n == 0 or m_sum.n == 0:
        lhs = 0
    else:
        lhs = intersect_subspaces(K, m_sum).n
    ech = EchelonBasis(field, dim)
    Kprev = kbases[n - 1]
    if Kprev.n > 0:
        for ind in inds:
            ech.insert_block(ind @ Kprev)
    return ech.rank == lhs


# ---------------------------------------------------------------------------
# Random presentations


FIELDS = (QQ, FieldSpec(2), FieldSpec(3))


def random_presentation(seed, field=None, group=None, truncation=8,
                        max_gen_degree=2, max_rel_degree=3):
    """A seeded random presentation and its realization.

    One or two generators with degrees uniform in [0, max_gen_degree]; up to
    two relations, each a sum of one to three terms with small integer
    coefficients (the leading coefficient forced to be a unit) along
    uniformly chosen morphisms.  The field cycles through Q, F_2, F_3 with
    the seed unless given.
    """
    rng = random.Random(seed)
    field = field if field is not None else FIELDS[seed % len(FIELDS)]
    G = group if group is not None else trivial_group()
    ngen = rng.randrange(1, 3)
    degs = sorted(rng.randrange(0, max_gen_degree + 1) for _ in range(ngen))
    d = max(degs)
    gens = [GeneratorSummand(m, 0, None) for m in degs]
    gdims = Presentation(field, G, gens, []).generators
    gdims = [g.dim for g in gdims]
    rels = []
    for _ in range(rng.randrange(0, 3)):
        rdeg = rng.randrange(d, max_rel_degree + 1)
        terms = []
        for t in range(rng.randrange(1, 4)):
            gi = rng.randrange(ngen)
            if degs[gi] > rdeg:
                continue
            homs = enumerate_hom(degs[gi], rdeg, G)
            mor = homs[rng.randrange(len(homs))]
            coeffs = []
            for k in range(gdims[gi]):
                if t == 0 and k == 0:
                    c = rng.choice([-1, 1])
                else:
                    c = rng.choice([-1, 0, 1])
                coeffs.append(field.of(c))
            terms.append((gi, mor, coeffs))
        if terms:
            rels.append(Relation(rdeg, terms))
    pres = Presentation(field, G, gens, rels)
    return pres, realize(pres, truncation)


def syzygy(V):
    """The degree-wise kernel of a surjection onto V from an induced module,
    as a module in its own right (the first stage of a resolution)."""
    _, aug = cover_module(V)
    K, _ = kernel_module(aug)
    return K


# ---------------------------------------------------------------------------
# Theorem sweep


def _le(x, y):
    """x <= y with NEG_INF below everything."""
    if x == NEG_INF:
        return True
    if y == NEG_INF:
        return False
    return x <= y


def random_induced_submodule(seed, field=None, group=None, truncation=8,
                             gen_degree=None, sub_degree=None):
    """A submodule U of an induced module M(W), generated in a single degree
    m: the span of a few random degree-m vectors.  Returns (M, U bases, m).

    By default m is the degree of W itself, so U is generated in the lowest
    possible degree and both U and M(W)/U are filtered by induced modules.
    """
    rng = random.Random(seed ^ 0x5EED)
    field = field if field is not None else FIELDS[seed % len(FIELDS)]
    G = group if group is not None else trivial_group()
    w_deg = gen_degree if gen_degree is not None else rng.randrange(0, 3)
    m = sub_degree if sub_degree is not None else w_deg
    cover = FreeCover(field, G, [GeneratorSummand(w_deg, 0, None)], truncation)
    M = cover.as_module()
    from .exactla import invariant_span
    dim = M.dim(m)
    seeds = []
    for _ in range(rng.randrange(1, 3)):
        vec = [field.of(rng.choice([-1, 0, 0, 1])) for _ in range(dim)]
        if any(x != 0 for x in vec):
            seeds.append(vec)
    if not seeds and dim > 0:
        vec = [field.zero()] * dim
        vec[rng.randrange(dim)] = field.one()
        seeds.append(vec)
    span_m = invariant_span(field, dim, M.gen_action(m), seeds)
    bases = {}
    prev = None
    for n in range(truncation + 1):
        if n < m:
            bases[n] = Matrix.zeros(field, M.dim(n), 0)
        elif n == m:
            bases[n] = span_m
        else:
            ech = EchelonBasis(field, M.dim(n))
            for q in range(n):
                ech.insert_block(M.induced(_skip_inclusion(n, q)) @ prev)
            bases[n] = ech.basis_matrix()
        prev = bases[n]
    return M, bases, m


def verify_theorems(seed, count=10, field=None, group=None, truncation=8,
                    i_max=3):
    """Run the inequality and identity checks on seeded random presentations.

    Returns a list of per-instance reports; each check records pass/fail
    with the witnessing numbers.  Checks covered: the regularity bound
    reg <= r + min{r,d} - 1, the width sandwich dreg + 1 <= dwidth <=
    dreg + max{hd_1, d}, the degree bound on higher derived derivatives,
    the homological-degree chain, the finite-degree bound hd_i <= i + deg,
    shift stabilization (direct search vs dreg + 1), polynomial agreement
    on the stable window, the lattice identity for the relation span inside
    its cover, and the two-of-three property for filtered modules in the
    quotient sequence of a random induced submodule.
    """
    reports = []
    for k in range(count):
        s = seed + k
        pres, realized = random_presentation(s, field=field, group=group,
                                             truncation=truncation)
        V = realized.module
        d = pres.generation_degree
        r = pres.relation_degree
        checks = {}
        res = Resolution(V, max(i_max - 1, 0))
        reg, hd = regularity(V, i_max, res)
        dreg, dwidth = derived_regularity(V, res)
        deg, gen, _ = degrees(V)
        hd1 = hd.get(1, NEG_INF)

        bound = (NEG_INF if r == NEG_INF
                 else int(r) + min(int(r), max(d, 0)) - 1)
        checks["regularity_bound"] = {
            "pass": _le(reg, bound), "reg": reg, "bound": bound}

        if dreg != NEG_INF:
            upper = dreg + max(_clamp(hd1), _clamp(d), 0)
            checks["width_sandwich"] = {
                "pass": dreg + 1 <= dwidth and dwidth <= upper,
                "dreg": dreg, "dwidth": dwidth, "upper": upper}

        ok = True
        detail = []
        for a in range(1, 3):
            for i in range(1, 3):
                if i + a > truncation:
                    continue
                top = _top_nonzero(homology_dims(V, i, a, res))
                if dwidth == NEG_INF:
                    good = top == NEG_INF
                else:
                    good = _le(top, dwidth - 1 + i - a)
                ok = ok and good
                detail.append((i, a, top))
        checks["derived_degree_bound"] = {"pass": ok, "detail": detail}

        ok = True
        for i, hdi in hd.items():
            ceiling = max(_clamp(dwidth) - 1 if dwidth != NEG_INF else -1,
                          max(_clamp(hd1), _clamp(d)) - 1) + i
            if not _le(hdi, ceiling):
                ok = False
        checks["homological_chain"] = {"pass": ok, "hd": hd}

        if deg != NEG_INF and not isinstance(deg, tuple):
            ok = all(_le(hdi, i + deg) for i, hdi in hd.items())
            checks["finite_degree_bound"] = {"pass": ok, "deg": deg, "hd": hd}

        flag, witness = sharp_filtered(V, res)
        nv = nagpal_number(V, res)
        if flag:
            checks["shift_stabilization"] = {"pass": nv == 0, "nagpal": 0}
        else:
            checks["shift_stabilization"] = {
                "pass": nv == dreg + 1, "nagpal": nv, "dreg": dreg}
        if flag and witness is not None:
            W0 = h0(V)
            expected = sorted((n, W0.dim(n)) for n in W0.degrees())
            checks["filtration_cofactors"] = {
                "pass": sorted(witness) == expected, "witness": witness}

        hil = hilbert(V, d, r)
        checks["polynomial_agreement"] = {
            "pass": hil["agrees_from"] is not None
            and hil["agrees_from"] <= hil["stable_from"],
            "stable_from": hil["stable_from"],
            "agrees_from": hil["agrees_from"]}

        if r != NEG_INF:
            Mmod = realized.cover.as_module()
            kb = {n: realized.relation_span(n) for n in range(truncation + 1)}
            start = min(int(r), max(d, 0)) + int(r) + 1
            ok = True
            for n in range(max(start, 1), truncation + 1):
                for a in range(1, min(n, 3) + 1):
                    if not span_identity_holds(Mmod, kb, n, a):
                        ok = False
            checks["lattice_identity"] = {"pass": ok, "from": start}

        M, ub, m = random_induced_submodule(s, field=pres.field,
                                            group=pres.group,
                                            truncation=truncation)
        from .figmodules import submodule
        U, _ = submodule(M, ub)
        Q, _ = quotient_module(M, ub)
        u_ok = _top_nonzero(homology_dims(U, 1)) == NEG_INF
        q_ok = _top_nonzero(homology_dims(Q, 1)) == NEG_INF
        checks["induced_submodule_filtered"] = {
            "pass": u_ok and q_ok, "sub_degree": m,
            "sub_filtered": u_ok, "quotient_filtered": q_ok}

        reports.append({
            "seed": s,
            "field": repr(pres.field),
            "generators": [g.degree for g in pres.generators],
            "relations": [rel.degree for rel in pres.relations],
            "checks": checks,
            "pass": all(c["pass"] for c in checks.values()),
        })
    return reports
