import random
from fractions import Fraction as F

import pytest

from dgquot import (
    DimensionError,
    MatrixPoint,
    SingularMatrixError,
    StructureError,
    diag_point,
    gl_action,
    is_classical_point,
    is_stable,
)
from dgquot.points import krylov_dimension_profile, matrices_satisfy


def rand_invertible(rng, n):
    while True:
        g = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        try:
            from dgquot.linalg import inverse

            inverse(tuple(tuple(row) for row in g))
            return g
        except SingularMatrixError:
            continue


def test_point_validation():
    with pytest.raises(DimensionError):
        MatrixPoint(([[1, 0], [0, 1]],), (F(1),))


def test_fermat_rank_one_point(charts):
    chart = charts[("fermat", 1)]
    good = MatrixPoint(([[-1]], [[0]], [[0]], [[0]]), (F(1),))
    ok, witness = is_classical_point(good, chart)
    assert ok and witness is None
    bad = MatrixPoint(([[2]], [[0]], [[0]], [[0]]), (F(1),))
    ok, witness = is_classical_point(bad, chart)
    assert not ok and not witness.is_zero()


def test_commuting_diagonals_are_classical(corpus, charts):
    src = corpus["sphere"]
    pt = diag_point([(F(1), F(0), F(0)), (F(3, 5), F(4, 5), F(0))], src.relations, src.var_gens)
    ok, _ = is_classical_point(pt, charts[("sphere", 2)])
    assert ok


def test_noncommuting_pair_fails_with_witness(charts):
    chart = charts[("k[x,y]", 2)]
    pt = MatrixPoint(([[0, 1], [0, 0]], [[0, 0], [1, 0]]), (F(1), F(0)))
    ok, witness = is_classical_point(pt, chart)
    assert not ok
    assert witness is not None


def test_dimension_mismatch_rejected(charts):
    chart = charts[("k[x,y]", 2)]
    pt = MatrixPoint(([[0]], [[0]]), (F(1),))
    with pytest.raises(DimensionError):
        is_classical_point(pt, chart)


def test_stability_examples():
    assert is_stable(MatrixPoint(([[7]],), (F(2),)))
    assert not is_stable(MatrixPoint(([[7]],), (F(0),)))
    zeros = ([[0, 0], [0, 0]], [[0, 0], [0, 0]])
    assert not is_stable(MatrixPoint(zeros, (F(1), F(0))))
    assert is_stable(MatrixPoint(([[1, 0], [0, 2]],), (F(1), F(1))))


def test_krylov_profile_monotone_and_quick():
    rng = random.Random(5)
    for n in (2, 3, 4):
        for _ in range(50):
            mats = tuple(
                tuple(tuple(F(rng.randint(-2, 2)) for _ in range(n)) for _ in range(n))
                for _ in range(2)
            )
            vec = tuple(F(rng.randint(-2, 2)) for _ in range(n))
            pt = MatrixPoint(mats, vec)
            dims = krylov_dimension_profile(pt)
            assert all(a <= b for a, b in zip(dims, dims[1:]))
            # stabilizes within n - 1 closure rounds after the seed vector
            if len(dims) > 1:
                final = dims[-1]
                cutoff = min(n - 1, len(dims) - 1)
                assert dims[cutoff] == final


def test_diag_point_construction(corpus):
    src = corpus["k[x,y,z]"]
    pt = diag_point([(0, 0, 0), (1, 2, 3)], src.relations, src.var_gens)
    assert pt.matrices[1][0][0] == 0 and pt.matrices[1][1][1] == 2
    assert pt.vector == (F(1), F(1))
    assert is_stable(pt)
    rep = diag_point([(1, 2, 3), (1, 2, 3)], src.relations, src.var_gens)
    assert not is_stable(rep)


def test_diag_point_rejects_bad_tuple(corpus):
    src = corpus["fermat"]
    with pytest.raises(StructureError):
        diag_point([(1, 0, 0, 0)], src.relations, src.var_gens)
    # valid tuples pass
    diag_point([(-1, 0, 0, 0), (1, -1, -1, 0)], src.relations, src.var_gens)


def test_gl_action_identity_and_errors(corpus):
    src = corpus["k[x,y,z]"]
    pt = diag_point([(0, 0, 0), (1, 2, 3)], src.relations, src.var_gens)
    same = gl_action([[1, 0], [0, 1]], pt)
    assert same == pt
    with pytest.raises(SingularMatrixError):
        gl_action([[1, 1], [1, 1]], pt)
    with pytest.raises(DimensionError):
        gl_action([[1]], pt)


def test_gl_action_preserves_classical_and_stable(corpus, charts):
    rng = random.Random(17)
    src = corpus["k[x,y,z]"]
    chart = charts[("k[x,y,z]", 2)]
    stable_pt = diag_point([(0, 0, 0), (1, 2, 3)], src.relations, src.var_gens)
    unstable_pt = diag_point([(1, 2, 3), (1, 2, 3)], src.relations, src.var_gens)
    for _ in range(100):
        g = rand_invertible(rng, 2)
        moved = gl_action(g, stable_pt)
        assert is_classical_point(moved, chart)[0]
        assert is_stable(moved)
        assert matrices_satisfy(src, moved.matrices)
        moved_u = gl_action(g, unstable_pt)
        assert is_classical_point(moved_u, chart)[0]
        assert not is_stable(moved_u)


def test_gl_action_preserves_nonclassical(charts):
    rng = random.Random(18)
    chart = charts[("k[x,y]", 2)]
    pt = MatrixPoint(([[0, 1], [0, 0]], [[0, 0], [1, 0]]), (F(1), F(0)))
    for _ in range(25):
        g = rand_invertible(rng, 2)
        assert not is_classical_point(gl_action(g, pt), chart)[0]
