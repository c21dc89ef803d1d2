import json
import os
import subprocess
import sys

import numpy as np
import pytest

from blockspectrum._accel import python_impl
from blockspectrum._kernels import NO_ARCS, TYPE_NAMES, walk
from blockspectrum.diagram import TRIVIAL, blocks, components, stack_lengths
from blockspectrum.oracle import (
    EnumerationBoundError,
    enumerate_structures,
    iter_structures,
    oracle_counts,
    scan,
)
from blockspectrum.params import StructureParams, in_scope_params
from blockspectrum.system import solve_system

P = StructureParams

# computed by this oracle and by an independent brute force over matchings
GAMMA0_R1_L2 = [1, 1, 1, 2, 4, 8, 17, 37, 82, 185, 423]
GAMMA1_R1_L2 = [1, 1, 1, 2, 5, 13, 37, 112, 346, 1082, 3417]
MATCHINGS = [1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496]  # involutions


def test_frozen_counts():
    assert oracle_counts(P(0, 1, 2), 10) == GAMMA0_R1_L2
    assert oracle_counts(P(1, 1, 2), 10) == GAMMA1_R1_L2
    assert [len(scan(n, 1).min_stack) for n in range(11)] == MATCHINGS


def test_examples():
    assert enumerate_structures(0, P(2, 3, 1)).count == 1
    found = {d.arcs for d in iter_structures(4, P(1, 1, 2))}
    assert found == {
        frozenset(),
        frozenset({(1, 3)}),
        frozenset({(2, 4)}),
        frozenset({(1, 4)}),
        frozenset({(1, 3), (2, 4)}),
    }


def test_bound_refused():
    with pytest.raises(EnumerationBoundError):
        enumerate_structures(15, P(1, 1, 1))
    with pytest.raises(EnumerationBoundError):
        enumerate_structures(6, P(1, 1, 1), bound=5)


def _reference_rows(n):
    s = scan(n, 1)
    for k in range(len(s.min_stack)):
        d = s.diagram(k)
        st = stack_lengths(d)
        bl = blocks(d)
        yield s, k, (
            min(st) if st else NO_ARCS,
            max((c.genus for c in components(d)), default=0),
            [b.length for b in bl],
            [TRIVIAL if b.kind == TRIVIAL else b.shadow_type for b in bl],
        )


def test_kernel_matches_diagram_functions():
    for n in range(10):
        for s, k, ref in _reference_rows(n):
            lens = [int(x) for x in s.blen[k] if x]
            names = [TYPE_NAMES[t] for x, t in zip(s.blen[k], s.btype[k]) if x]
            got = (int(s.min_stack[k]), int(s.max_genus[k]), lens, names)
            assert got == ref, s.diagram(k)
            assert s.nblocks[k] == len(lens)


def _run_walk(fn, n, lam):
    w = max(n, 1)
    d2, d1 = np.zeros((1, w), np.int8), np.zeros(1, np.int64)
    count = fn(n, lam, False, d2, d1, d1, d2, d2, d1)
    arrays = (np.full((count, w), -1, np.int8), np.zeros(count, np.int64), np.zeros(count, np.int64),
              np.zeros((count, w), np.int8), np.zeros((count, w), np.int8), np.zeros(count, np.int64))
    fn(n, lam, True, *arrays)
    return arrays


@pytest.mark.parametrize("lam", [1, 3])
def test_python_walk_matches_compiled(lam):
    fast = _run_walk(walk, 8, lam)
    slow = _run_walk(python_impl(walk), 8, lam)
    for a, b in zip(fast, slow):
        assert np.array_equal(a, b)


def test_fallback_backend_in_subprocess():
    code = (
        "import json; from blockspectrum import oracle; from blockspectrum._accel import USE_NUMBA;"
        "s = oracle.scan(8, 2);"
        "print(json.dumps([USE_NUMBA, s.min_stack.tolist(), s.max_genus.tolist(), s.btype.tolist()]))"
    )
    env = dict(os.environ, BLOCKSPECTRUM_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    use_numba, ms, mg, bt = json.loads(out.stdout)
    s = scan(8, 2)
    assert use_numba is False
    assert (ms, mg, bt) == (s.min_stack.tolist(), s.max_genus.tolist(), s.btype.tolist())


def test_oracle_equals_series_all_in_scope():
    for p in in_scope_params():
        G = solve_system(p, 13).G
        assert oracle_counts(p, 12) == list(G.coeffs[:13]), p


def test_statistics_consistent():
    st = enumerate_structures(10, P(1, 1, 2), sequences=True)
    assert st.longest.sum() == st.count
    for k in range(1, 11):
        assert st.per_b[k].sum() == st.count
    assert sum(st.sequences.values()) == st.count
    total_blocks = sum(len(seq) for seq, c in st.sequences.items() for _ in range(c))
    assert st.type_counts.sum() == total_blocks


def test_merge_associative():
    p = P(1, 1, 2)
    a, b, c = (enumerate_structures(8, p, sequences=True) for _ in range(3))
    left, right = a.merge(b).merge(c), a.merge(b.merge(c))
    assert left.count == right.count == 3 * a.count
    assert np.array_equal(left.per_b, right.per_b)
    assert left.sequences == right.sequences
    with pytest.raises(ValueError):
        a.merge(enumerate_structures(7, p))
