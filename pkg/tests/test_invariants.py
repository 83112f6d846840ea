import math
from fractions import Fraction

import pytest

from figmod.exactla import QQ, FieldSpec, Matrix
from figmod.groups import trivial_group, cyclic_group
from figmod.figcat import FIGMorphism
from figmod.figmodules import (NEG_INF, GeneratorSummand, FreeCover, Relation,
                               Presentation, realize, free_presentation,
                               TruncationError)
from figmod.functors import Resolution
from figmod import invariants as inv

T = trivial_group()
Z2 = cyclic_group(2)
F2 = FieldSpec(2)


def t0_realized(field=QQ, N=8):
    gens = [GeneratorSummand(0, 0, None)]
    rel = Relation(1, [(0, FIGMorphism.standard_inclusion(0, 1), [1])])
    return realize(Presentation(field, T, gens, [rel]), N)


def free_module(field, G, degree, N=8):
    return FreeCover(field, G, [GeneratorSummand(degree, 0, None)], N) \
        .as_module()


def test_degrees_of_t0():
    V = t0_realized().module
    deg, gen, hd = inv.degrees(V, 3)
    assert deg == 0 and gen == 0
    assert hd == {1: 1, 2: 2, 3: 3}


def test_degrees_of_free():
    V = free_module(QQ, T, 1)
    deg, gen, hd = inv.degrees(V, 2)
    assert deg == ("ge", 8) and gen == 1
    assert hd == {1: NEG_INF, 2: NEG_INF}


def test_degrees_of_zero_module():
    R = realize(free_presentation(QQ, T, []), 4)
    deg, gen, hd = inv.degrees(R.module, 1)
    assert deg == NEG_INF and gen == -1
    assert hd[1] == NEG_INF


def test_torsion():
    free, dims = inv.torsion(t0_realized().module)
    assert not free and dims[0] == 1 and not any(dims[1:])
    free, dims = inv.torsion(free_module(F2, Z2, 1))
    assert free and not any(dims)


def test_depth_values():
    assert inv.depth(t0_realized().module) == 0
    assert inv.depth(free_module(QQ, T, 2)) == inv.INF
    K1 = inv.syzygy(t0_realized().module)
    assert K1.dims() == [0, 1, 1, 1, 1, 1, 1, 1, 1]
    assert inv.depth(K1) == 1
    K2 = inv.syzygy(K1)
    assert inv.depth(K2) == 2


def test_derived_regularity():
    assert inv.derived_regularity(free_module(QQ, Z2, 1)) == (NEG_INF, NEG_INF)
    assert inv.derived_regularity(t0_realized().module) == (0, 1)
    for field in (QQ, F2):
        V = t0_realized(field).module
        dreg, dwidth = inv.derived_regularity(V)
        assert dreg + 1 <= dwidth


def test_sharp_filtration_witness():
    R = realize(free_presentation(QQ, T, [0, 1]), 6)
    flag, witness = inv.sharp_filtered(R.module)
    assert flag and witness == [(0, 1), (1, 1)]
    flag, witness = inv.sharp_filtered(t0_realized().module)
    assert not flag and witness is None
    assert inv.sharp_filtration(t0_realized().module) is None


def test_nagpal_number():
    assert inv.nagpal_number(free_module(QQ, T, 1)) == 0
    assert inv.nagpal_number(t0_realized().module) == 1
    K1 = inv.syzygy(t0_realized().module)
    dreg, _ = inv.derived_regularity(K1)
    assert inv.nagpal_number(K1) == dreg + 1


def test_regularity():
    V = t0_realized().module
    reg, hd = inv.regularity(V, 3)
    assert reg == 0 and hd == {1: 1, 2: 2, 3: 3}
    reg, hd = inv.regularity(free_module(QQ, T, 0), 2)
    assert reg == NEG_INF


def test_fit_polynomial_exactness():
    pts = [(0, 1), (1, 2), (2, 5), (3, 10)]
    poly = inv.fit_polynomial(pts)
    assert poly == [Fraction(1), Fraction(0), Fraction(1)]
    for x, y in pts:
        assert inv.eval_polynomial(poly, x) == y


def test_hilbert_on_frees():
    V = free_module(QQ, T, 1)
    out = inv.hilbert(V, 1, NEG_INF)
    assert out["polynomial"] == [Fraction(0), Fraction(1)]
    assert out["stable_from"] == 0 and out["agrees_from"] == 0
    W = free_module(QQ, Z2, 2)
    out = inv.hilbert(W, 2, NEG_INF)
    for n in range(9):
        assert inv.eval_polynomial(out["polynomial"], n) == \
            math.comb(n, 2) * 8


def test_hilbert_truncation_error():
    V = free_module(QQ, T, 2, N=3)
    with pytest.raises(TruncationError) as exc:
        inv.hilbert(V, 2, 3)
    assert exc.value.required == 5 + 2 + 1


def test_base_window_and_requirements():
    assert inv.base_window(2, 3) == 5
    assert inv.base_window(NEG_INF, NEG_INF) == 0
    req = inv.certified_requirements(2, 3)
    assert req["hilbert"] == 8 and req["regularity"] == 9


def test_random_presentation_deterministic():
    p1, r1 = inv.random_presentation(12)
    p2, r2 = inv.random_presentation(12)
    assert r1.module.dims() == r2.module.dims()
    assert [g.degree for g in p1.generators] == \
        [g.degree for g in p2.generators]


def test_random_presentation_respects_overrides():
    pres, realized = inv.random_presentation(5, field=F2, group=Z2,
                                             truncation=5)
    assert pres.field == F2 and pres.group == Z2
    assert realized.truncation == 5
    assert realized.module.validate() == []


def test_analyze_report_consistency():
    report = inv.analyze(t0_realized())
    got = report["invariants"]
    assert got["depth"]["value"] == 0
    assert got["dreg"]["value"] == 0
    assert got["nagpal_number"]["value"] == 1
    assert got["regularity"]["value"] == 0
    assert all(report["consistency"].values())


def test_analyze_subset():
    report = inv.analyze(t0_realized(), ["torsion"])
    assert set(report["invariants"]) == {"torsion"}


def test_verify_theorems_small_sweep():
    reports = inv.verify_theorems(0, count=4)
    assert all(r["pass"] for r in reports)
    assert [r["seed"] for r in reports] == [0, 1, 2, 3]


def test_span_identity_on_relation_span():
    _, realized = inv.random_presentation(3)
    pres = realized.presentation
    M = realized.cover.as_module()
    kb = {n: realized.relation_span(n) for n in range(9)}
    r = int(pres.relation_degree)
    d = pres.generation_degree
    start = min(r, max(d, 0)) + r + 1
    for n in range(max(start, 1), 9):
        for a in range(1, min(n, 3) + 1):
            assert inv.span_identity_holds(M, kb, n, a)
