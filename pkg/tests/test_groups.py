import pytest

from figmod.groups import (FiniteGroup, GroupError, group_from_table,
                           trivial_group, cyclic_group, symmetric_group_3,
                           WreathGroupElement, wreath_compose, wreath_inverse,
                           wreath_embed, wreath_generators, wreath_factor,
                           wreath_order, coset_chain, enumerate_wreath)


def test_presets_are_groups():
    for G in (trivial_group(), cyclic_group(2), cyclic_group(3),
              symmetric_group_3()):
        assert G.mul[0] == tuple(range(G.order))
        for x in range(G.order):
            assert G.mul[x][G.inv[x]] == 0


def test_group_from_table_relocates_identity():
    # Z/2 written with the identity at index 1
    G = group_from_table([[1, 0], [0, 1]])
    assert G.mul[0] == (0, 1)
    assert G.order == 2


def test_bad_tables_rejected():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        group_from_table([[1, 1], [1, 1]])


def test_wreath_compose_convention():
    G = cyclic_group(3)
    import random
    rng = random.Random(7)
    elems = enumerate_wreath(G, 3)
    for _ in range(50):
        x, y, z = (rng.choice(elems) for _ in range(3))
        assert wreath_compose(G, wreath_compose(G, x, y), z) == \
            wreath_compose(G, x, wreath_compose(G, y, z))
        xi = wreath_inverse(G, x)
        assert wreath_compose(G, x, xi).is_identity()
        assert wreath_compose(G, xi, x).is_identity()


def test_embed_preserves_products():
    G = cyclic_group(2)
    elems = enumerate_wreath(G, 2)
    for x in elems:
        for y in elems:
            lhs = wreath_embed(wreath_compose(G, x, y), 4)
            rhs = wreath_compose(G, wreath_embed(x, 4), wreath_embed(y, 4))
            assert lhs == rhs


def test_wreath_factor_reproduces_element():
    G = cyclic_group(2)
    gens = wreath_generators(G, 3)
    for x in enumerate_wreath(G, 3):
        word = wreath_factor(G, x)
        acc = WreathGroupElement.identity(3)
        for idx in word:
            acc = wreath_compose(G, acc, gens[idx])
        assert acc == x


@pytest.mark.parametrize("order,n", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_coset_chain_enumerates_once(order, n):
    G = cyclic_group(order) if order > 1 else trivial_group()
    levels = coset_chain(G, n)
    import itertools
    seen = set()
    for choice in itertools.product(*levels) if levels else [()]:
        acc = WreathGroupElement.identity(n)
        for c in choice:
            acc = wreath_compose(G, acc, c)
        seen.add(acc)
    assert len(seen) == wreath_order(G, n)
    assert len(seen) == len(list(itertools.product(*levels))) if levels else 1
