import pytest

from blockspectrum.params import InvalidParameters, StructureParams, in_scope_params


@pytest.mark.parametrize("args", [(3, 1, 1), (-1, 1, 1), (1, 0, 1), (1, 5, 1), (1, 1, 3), (1, 1, 0)])
def test_invalid(args):
    with pytest.raises(InvalidParameters):
        StructureParams(*args)


def test_lambda_bound_and_scope():
    assert StructureParams(1, 3, 4).lam == 4
    ps = in_scope_params()
    assert all(p.lam <= p.r + 1 for p in ps)
    # r = 1..4 give 2 + 3 + 4 + 4 admissible lambdas per gamma
    assert len(ps) == 3 * 13


def test_str_and_with():
    p = StructureParams(1, 2, 2)
    assert str(p) == "gamma=1, r=2, lambda=2"
    assert p.with_(gamma=2) == StructureParams(2, 2, 2)
