"""Diagrams: partial matchings over a backbone ``1..n`` drawn in the upper half-plane.

Everything here is plain Python and works one diagram at a time.  The bulk
enumeration in :mod:`blockspectrum.oracle` uses the compiled kernels instead
and is tested against these functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

Arc = tuple[int, int]

# Irreducible genus-1 shadows, as arc sets on 2m vertices.  K and L are the two
# 3-arc shadows; swapping their names only needs this table to change.
GENUS_ONE_SHADOWS: dict[frozenset, str] = {
    frozenset({(1, 3), (2, 4)}): "H",
    frozenset({(1, 3), (2, 5), (4, 6)}): "K",
    frozenset({(1, 4), (2, 5), (3, 6)}): "L",
    frozenset({(1, 4), (2, 6), (3, 7), (5, 8)}): "M",
}

TRIVIAL, ZERO_BLOCK, GAMMA_BLOCK = "trivial", "zero-block", "gamma-block"


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    n: int
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        arcs = frozenset(tuple(a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if self.n < 0:
            raise DiagramError("n must be >= 0")
        seen = set()
        for i, j in arcs:
            if not 1 <= i < j <= self.n:
                raise DiagramError(f"arc ({i}, {j}) is not of the form 1 <= i < j <= {self.n}")
            if i in seen or j in seen:
                raise DiagramError(f"vertex of arc ({i}, {j}) is already paired")
            seen.update((i, j))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Arc]) -> "Diagram":
        return cls(n, frozenset(arcs))

    @property
    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.arcs:
            out[i] = j
            out[j] = i
        return out

    def __str__(self) -> str:
        return format_diagram(self)


@dataclass(frozen=True)
class Component:
    arcs: frozenset
    vertices: tuple
    genus: int

    @property
    def span(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class BlockRecord:
    interval: tuple[int, int]
    kind: str
    shadow_type: Optional[str] = None

    @property
    def length(self) -> int:
        return self.interval[1] - self.interval[0] + 1


def crossing(a: Arc, b: Arc) -> bool:
    return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]


def induced(arcs: Iterable[Arc]) -> Diagram:
    """The diagram on the endpoints of ``arcs`` only, relabelled ``1..2m``."""
    arcs = list(arcs)
    ends = sorted(v for a in arcs for v in a)
    pos = {v: k + 1 for k, v in enumerate(ends)}
    return Diagram(len(ends), frozenset((pos[i], pos[j]) for i, j in arcs))


def boundary_components(d: Diagram) -> int:
    """Boundary components of the fatgraph (backbone path plus arcs).

    Half-edges at vertex ``v``, counterclockwise: right backbone, arc, left
    backbone.  Boundaries are the cycles of ``sigma . alpha`` where ``alpha``
    swaps the two ends of an edge and ``sigma`` rotates around a vertex.
    """
    if d.n == 0:
        return 0
    if d.n == 1:
        return 1
    partner = d.partner()
    rotation = {}
    opposite = {}
    for v in range(1, d.n + 1):
        around = []
        if v < d.n:
            around.append(("R", v))
        if v in partner:
            around.append(("A", v))
        if v > 1:
            around.append(("L", v))
        for k, h in enumerate(around):
            rotation[h] = around[(k + 1) % len(around)]
    for v in range(1, d.n):
        opposite[("R", v)] = ("L", v + 1)
        opposite[("L", v + 1)] = ("R", v)
    for v, w in partner.items():
        opposite[("A", v)] = ("A", w)
    seen = set()
    cycles = 0
    for h in rotation:
        if h in seen:
            continue
        cycles += 1
        while h not in seen:
            seen.add(h)
            h = rotation[opposite[h]]
    return cycles


def genus(d: Diagram) -> int:
    """Topological genus ``g = 1 - chi/2`` with ``chi = v - e + r``."""
    if d.n == 0:
        return 0
    chi = d.n - (d.n - 1 + len(d.arcs)) + boundary_components(d)
    return 1 - chi // 2


def components(d: Diagram) -> list[Component]:
    """Crossing-association classes of the arcs, ordered by leftmost endpoint."""
    arcs = d.sorted_arcs
    parent = list(range(len(arcs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(len(arcs)):
        for b in range(a + 1, len(arcs)):
            if crossing(arcs[a], arcs[b]):
                parent[find(a)] = find(b)
    classes: dict[int, list[Arc]] = {}
    for k, arc in enumerate(arcs):
        classes.setdefault(find(k), []).append(arc)
    out = []
    for cls_arcs in classes.values():
        verts = tuple(sorted(v for a in cls_arcs for v in a))
        out.append(Component(frozenset(cls_arcs), verts, genus(induced(cls_arcs))))
    out.sort(key=lambda c: c.vertices[0])
    return out


def stack_lengths(d: Diagram) -> list[int]:
    """Length of every maximal stack ``(i, j), (i+1, j-1), ...``."""
    arcs = d.arcs
    out = []
    for i, j in d.sorted_arcs:
        if (i - 1, j + 1) in arcs:
            continue
        length = 0
        while (i + length, j - length) in arcs:
            length += 1
        out.append(length)
    return out


def collapse_stacks(arcs: Iterable[Arc]) -> frozenset:
    """Collapse stacks repeatedly on a diagram without isolated vertices; result relabelled."""
    d = induced(arcs)
    while True:
        inner = [(i + 1, j - 1) for i, j in d.arcs if (i + 1, j - 1) in d.arcs]
        if not inner:
            return d.arcs
        d = induced(d.arcs - {inner[0]})


def shadow(d: Diagram) -> Diagram:
    """Drop noncrossing arcs and isolated vertices, then collapse all stacks."""
    arcs = d.sorted_arcs
    kept = [a for a in arcs if any(crossing(a, b) for b in arcs)]
    if not kept:
        return Diagram(0)
    collapsed = collapse_stacks(kept)
    return Diagram(2 * len(collapsed), collapsed)


def is_structure(d: Diagram, gamma: int, r: int, lam: int) -> bool:
    """Arc length >= lam, every stack >= r, every component of genus <= gamma."""
    if any(j - i < lam for i, j in d.arcs):
        return False
    if any(s < r for s in stack_lengths(d)):
        return False
    return all(c.genus <= gamma for c in components(d))


def _shadow_type(comp: Component) -> str:
    if len(comp.arcs) == 1:
        return "T"
    if comp.genus >= 2:
        return "other"
    return GENUS_ONE_SHADOWS[collapse_stacks(comp.arcs)]


def blocks(d: Diagram) -> list[BlockRecord]:
    """Split the backbone at exterior vertices and maximal-component spans."""
    comp_of = {}
    for comp in components(d):
        for v in comp.vertices:
            comp_of[v] = comp
    out = []
    v = 1
    while v <= d.n:
        if v not in comp_of:
            out.append(BlockRecord((v, v), TRIVIAL))
            v += 1
            continue
        comp = comp_of[v]
        lo, hi = comp.span
        assert lo == v, "a block must open at the left end of a maximal component"
        kind = ZERO_BLOCK if len(comp.arcs) == 1 else GAMMA_BLOCK
        out.append(BlockRecord((lo, hi), kind, _shadow_type(comp)))
        v = hi + 1
    return out


def maximal_component(b: BlockRecord, d: Diagram) -> Component:
    for comp in components(d):
        if comp.span == b.interval:
            return comp
    raise DiagramError(f"no component spans {b.interval}")


def classify_block_type(b: BlockRecord, d: Diagram) -> str:
    """T, H, K, L, M, or ``"other"`` for a maximal component of genus >= 2."""
    if b.kind == TRIVIAL:
        raise DiagramError("a trivial block has no type")
    return _shadow_type(maximal_component(b, d))


def format_diagram(d: Diagram) -> str:
    lines = [f"n={d.n}"] + [f"{i} {j}" for i, j in d.sorted_arcs]
    return "\n".join(lines) + "\n"


def parse_diagram(text: str) -> Diagram:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise DiagramError("first line must be 'n=<int>'")
    try:
        n = int(lines[0][2:])
        arcs = []
        for ln in lines[1:]:
            i, j = ln.split()
            arcs.append((int(i), int(j)))
    except ValueError as exc:
        raise DiagramError(f"malformed diagram text: {exc}") from None
    return Diagram(n, frozenset(arcs))
