import itertools
import random

import pytest

from blockspectrum.diagram import (
    GAMMA_BLOCK,
    GENUS_ONE_SHADOWS,
    TRIVIAL,
    ZERO_BLOCK,
    Diagram,
    DiagramError,
    blocks,
    boundary_components,
    classify_block_type,
    collapse_stacks,
    components,
    format_diagram,
    genus,
    induced,
    is_structure,
    parse_diagram,
    shadow,
)
from blockspectrum.oracle import scan


def D(n, *arcs):
    return Diagram(n, frozenset(arcs))


def all_diagrams(nmax):
    for n in range(nmax + 1):
        s = scan(n, 1)
        for k in range(len(s.min_stack)):
            yield s.diagram(k)


def perfect_matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in perfect_matchings(rest):
            yield [(a, points[i])] + m


def irreducible_shadows(m):
    """Matchings on 2m points, one component, no stacks."""
    for arcs in perfect_matchings(list(range(1, 2 * m + 1))):
        d = Diagram(2 * m, frozenset(arcs))
        if len(components(d)) != 1:
            continue
        if any((i + 1, j - 1) in d.arcs for i, j in d.arcs):
            continue
        yield d


def test_validation():
    with pytest.raises(DiagramError):
        D(3, (1, 2), (2, 3))
    with pytest.raises(DiagramError):
        D(2, (1, 3))
    with pytest.raises(DiagramError):
        Diagram(-1)


def test_components_examples():
    assert len(components(D(4, (1, 3), (2, 4)))) == 1
    assert len(components(D(4, (1, 4), (2, 3)))) == 2
    comps = components(D(8, (1, 3), (2, 4), (5, 7), (6, 8)))
    assert [len(c.arcs) for c in comps] == [2, 2]


def test_genus_examples():
    assert genus(D(2, (1, 2))) == 0
    assert genus(D(4, (1, 3), (2, 4))) == 1
    assert genus(Diagram(0)) == 0
    assert genus(D(6, (1, 4), (2, 5), (3, 6))) == 1
    assert genus(D(8, (1, 5), (2, 6), (3, 7), (4, 8))) == 2


def test_genus_one_four_arcs_has_three_boundaries():
    # chi = 1 - arcs + boundaries, so every genus-1 diagram with 4 arcs has 3
    d = D(9, (1, 4), (2, 6), (3, 8), (5, 9))
    assert genus(d) == 1
    assert boundary_components(d) == 3


def test_blocks_examples():
    assert [b.kind for b in blocks(D(3))] == [TRIVIAL] * 3
    bl = blocks(D(5, (1, 5), (2, 4)))
    assert [(b.interval, b.kind, b.shadow_type) for b in bl] == [((1, 5), ZERO_BLOCK, "T")]
    bl = blocks(D(6, (1, 3), (2, 4)))
    assert [(b.interval, b.kind) for b in bl] == [((1, 4), GAMMA_BLOCK), ((5, 5), TRIVIAL), ((6, 6), TRIVIAL)]


def test_shadow_examples():
    assert shadow(D(5, (1, 5), (2, 4))) == Diagram(0)
    # a 2-stack of H collapses to H
    d = D(8, (1, 6), (2, 5), (3, 8), (4, 7))
    assert shadow(d) == D(4, (1, 3), (2, 4))


def test_classify():
    d = D(6, (1, 4), (2, 5), (3, 6))
    (b,) = blocks(d)
    assert classify_block_type(b, d) == "L"
    d = D(6, (1, 3), (2, 5), (4, 6))
    assert classify_block_type(blocks(d)[0], d) == "K"
    d = D(3)
    with pytest.raises(DiagramError):
        classify_block_type(blocks(d)[0], d)


def test_genus_additive_and_shadow_preserving():
    for d in all_diagrams(9):
        comps = components(d)
        assert genus(d) == sum(c.genus for c in comps)
        for c in comps:
            sh = Diagram(2 * len(collapse_stacks(c.arcs)), collapse_stacks(c.arcs))
            assert genus(sh) == c.genus == genus(induced(c.arcs))


def test_block_tiling():
    for d in all_diagrams(9):
        cover = []
        for b in blocks(d):
            cover.extend(range(b.interval[0], b.interval[1] + 1))
            assert (b.kind == TRIVIAL) == (b.length == 1 and b.interval[0] not in d.partner())
        assert cover == list(range(1, d.n + 1))


def test_irreducible_shadow_census():
    by_genus = {}
    for m in range(1, 6):
        for d in irreducible_shadows(m):
            g = genus(d)
            by_genus.setdefault(g, {}).setdefault(m, []).append(d)
    assert {m: len(v) for m, v in by_genus[1].items()} == {2: 1, 3: 2, 4: 1}
    # coefficients of I_2 = z^4 (1+z)^4 (17 + 92 z + 96 z^2) at z^4, z^5
    assert {m: len(v) for m, v in by_genus[2].items()} == {4: 17, 5: 160}
    found = {d.arcs for ds in by_genus[1].values() for d in ds}
    assert found == set(GENUS_ONE_SHADOWS)


def test_shadow_idempotent_random():
    rng = random.Random(5)
    for _ in range(1000):
        n = rng.randint(0, 16)
        free = list(range(1, n + 1))
        rng.shuffle(free)
        arcs = set()
        while len(free) >= 2 and rng.random() < 0.8:
            i, j = sorted((free.pop(), free.pop()))
            arcs.add((i, j))
        d = Diagram(n, frozenset(arcs))
        s = shadow(d)
        assert shadow(s) == s
        assert genus(s) == genus(d)


def test_is_structure():
    h = D(4, (1, 3), (2, 4))
    assert is_structure(h, 1, 1, 2)
    assert not is_structure(h, 0, 1, 2)
    assert not is_structure(h, 1, 2, 2)
    assert not is_structure(D(2, (1, 2)), 0, 1, 2)
    assert is_structure(D(2, (1, 2)), 0, 1, 1)


def test_text_roundtrip():
    d = D(7, (1, 5), (2, 6), (3, 7))
    text = format_diagram(d)
    assert text.splitlines()[0] == "n=7"
    assert parse_diagram(text) == d
    with pytest.raises(DiagramError):
        parse_diagram("7\n1 2\n")
    with pytest.raises(DiagramError):
        parse_diagram("n=3\n1 x\n")
