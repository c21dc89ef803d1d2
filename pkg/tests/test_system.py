import pytest

from blockspectrum.oracle import enumerate_structures
from blockspectrum.params import ConsistencyError, StructureParams, in_scope_params
from blockspectrum.series import PowerSeries
from blockspectrum.system import (
    BLOCK_TYPES,
    SeriesBundle,
    bivariate_block_count_series,
    block_count,
    block_type_series,
    check_bundle,
    other_block_series,
    shadow_polynomial,
    shadow_sum,
    solve_system,
    truncated_structure_series,
)
from blockspectrum._kernels import TYPE_NAMES

P = StructureParams


def test_shadow_polynomials():
    assert shadow_polynomial(1) == [0, 0, 1, 2, 1]
    i2 = shadow_polynomial(2)
    assert i2[:4] == [0, 0, 0, 0] and i2[4:6] == [17, 160] and len(i2) == 11
    assert sum(shadow_polynomial(1)) == 4
    assert sum(i2) == 3280
    assert shadow_sum(2)[4] == 1 + 17
    with pytest.raises(ValueError):
        shadow_polynomial(3)


def test_solve_examples():
    assert list(solve_system(P(0, 1, 2), 9).G) == [1, 1, 1, 2, 4, 8, 17, 37, 82]
    assert solve_system(P(1, 1, 2), 5).G[4] == 5
    for p in in_scope_params():
        b = solve_system(p, 3)
        assert (b.G[0], b.G[1], b.F[1]) == (1, 1, 1)


def test_order_one():
    b = solve_system(P(1, 2, 2), 1)
    assert list(b.G) == [1]
    with pytest.raises(ValueError):
        solve_system(P(1, 2, 2), 0)


@pytest.mark.parametrize("order", [50, 200, 600])
@pytest.mark.parametrize("p", [P(0, 1, 2), P(1, 2, 2), P(2, 3, 4)])
def test_bundle_identities(p, order):
    check_bundle(solve_system(p, order))


def test_newton_matches_fixed_point():
    for p in (P(0, 2, 3), P(1, 1, 1), P(2, 2, 2)):
        assert solve_system(p, 40, "fixed-point").G == solve_system(p, 40).G
    with pytest.raises(ValueError):
        solve_system(P(1, 1, 1), 10, "bisection")


def test_corrupted_bundle_rejected():
    b = solve_system(P(1, 2, 2), 20)
    G = list(b.G)
    G[7] += 1
    bad = SeriesBundle(PowerSeries(G, 20), b.F, b.B0, b.Bgamma, b.params, 20)
    with pytest.raises(ConsistencyError):
        check_bundle(bad)


def test_integrality_all_in_scope():
    for p in in_scope_params():
        b = solve_system(p, 200)
        for s in (b.G, b.F, b.B0, b.Bgamma):
            assert s.is_integral() and s.is_nonnegative()
        for t in BLOCK_TYPES:
            s = block_type_series(p, t, 200)
            assert s.is_integral() and s.is_nonnegative()


def test_monotone_in_gamma_and_r():
    for lam in (1, 2):
        for r in (1, 2, 3):
            Gs = [solve_system(P(g, r, lam), 101).G for g in (0, 1, 2)]
            assert all(a[n] <= b[n] for a, b in zip(Gs, Gs[1:]) for n in range(101))
        for g in (0, 1, 2):
            Gs = [solve_system(P(g, r, lam), 101).G for r in (1, 2, 3, 4)]
            assert all(a[n] >= b[n] for a, b in zip(Gs, Gs[1:]) for n in range(101))


def test_block_type_series():
    for p in (P(1, 1, 2), P(1, 3, 2), P(2, 2, 1)):
        b = solve_system(p, 80)
        assert block_type_series(p, "T", 80) == b.B0
        typed = sum((block_type_series(p, t, 80) for t in ("H", "K", "L", "M")), PowerSeries.zero(80))
        if p.gamma == 1:
            assert typed == b.Bgamma
        else:
            assert typed + other_block_series(p, 80) == b.Bgamma
    assert block_type_series(P(1, 1, 2), "H", 5)[4] == 1
    assert block_type_series(P(0, 1, 2), "H", 10) == PowerSeries.zero(10)
    with pytest.raises(ValueError):
        block_type_series(P(1, 1, 2), "X", 5)


def test_typed_counts_match_oracle():
    for p in (P(1, 1, 1), P(2, 1, 2), P(2, 2, 1)):
        b = solve_system(p, 13)
        G2 = b.G * b.G
        series = {t: block_type_series(p, t, 13) for t in BLOCK_TYPES}
        series["other"] = other_block_series(p, 13)
        for n in range(13):
            st = enumerate_structures(n, p)
            for k in range(2, n + 1):
                for t, name in enumerate(TYPE_NAMES[1:], start=1):
                    assert st.type_counts[k, t] == series[name][k] * G2[n - k]


def test_truncated_structure_series():
    p = P(1, 2, 2)
    assert list(truncated_structure_series(p, 1, 10)) == [1] * 10
    assert truncated_structure_series(p, 9, 10) == solve_system(p, 10).G
    st = enumerate_structures(10, P(1, 1, 2))
    b = solve_system(P(1, 1, 2), 11)
    for m in range(1, 11):
        diff = truncated_structure_series(P(1, 1, 2), m, 11)[10] - truncated_structure_series(P(1, 1, 2), m - 1, 11)[10]
        assert diff == st.longest[m]
    assert sum(st.longest) == b.G[10]


def test_bivariate():
    p = P(1, 1, 2)
    S = bivariate_block_count_series(p, 1, None, 12, 11)
    G = solve_system(p, 12).G
    assert sum(S, PowerSeries.zero(12)) == G
    for n in range(1, 12):
        st = enumerate_structures(n, p)
        assert [s[n] for s in S[: n + 1]] == list(st.per_b[1][: n + 1])
    H = bivariate_block_count_series(p, 4, "H", 12, 3)
    for n in range(4, 12):
        st = enumerate_structures(n, p)
        assert [s[n] for s in H] == list(st.typed_per_b[TYPE_NAMES.index("H")][4][:4])
    assert block_count(p, 4, "H", 5) == 1
    with pytest.raises(ValueError):
        bivariate_block_count_series(p, 0, None, 5, 1)
