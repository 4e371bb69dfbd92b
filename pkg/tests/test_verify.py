import numpy as np
import pytest

from tetrahedron.equations import EQUATION_NAMES
from tetrahedron.errors import InputError, PreconditionError
from tetrahedron.tensors import ComplexTensor, ModelBundle, leg_permutation, random_tensor
from tetrahedron.verify import (
    PairwiseR,
    RepFamily,
    YbeMatrix,
    collapse_check,
    lawrence_construct,
    residual_matrices,
    scaling_degree,
    shorthand_equations,
    verify_classic,
    verify_eight,
    verify_obstruction_tetra,
    verify_obstruction_yb,
    verify_unitarity,
    verify_ybe,
)
from tetrahedron.words import Kind


def flip(d):
    return leg_permutation(d, (1, 0)).astype(complex)


def test_identity_passes_everything():
    rep = verify_eight(ModelBundle.identity(2), 0.0)
    assert rep.passed and rep.max_residual == 0.0
    assert {r.check for r in rep.results} == {f"eight[{n}]" for n in EQUATION_NAMES}


def test_random_s_fails(rng):
    s = random_tensor(rng, 2, 3)
    assert not verify_eight(ModelBundle(2, s)).passed
    assert not verify_classic(s).passed


def test_report_as_dict():
    rep = verify_eight(ModelBundle.identity(2))
    d = rep["eight[1,6]"].as_dict()
    assert d["pass"] and d["residual"] == 0.0


@pytest.mark.parametrize("lam", [2.0, 0.5j, -1.5])
def test_residual_homogeneity(rng, lam):
    s = random_tensor(rng, 2, 3)
    base = residual_matrices(ModelBundle(2, s))
    scaled = residual_matrices(ModelBundle(2, s.scaled(lam)))
    for eq in shorthand_equations():
        deg = scaling_degree(eq, Kind.S) + sum(
            1 for x in eq.lhs if x.kind is Kind.STILDE and x.inverted
        )
        assert deg == 4
        assert np.allclose(scaled[eq.name], lam**deg * base[eq.name])


def test_ybe_transposition_and_random(rng):
    assert verify_ybe(YbeMatrix(3, flip(3)), 1e-12).passed
    r = rng.normal(size=(4, 4))
    assert not verify_ybe(YbeMatrix(2, r)).passed


def test_obstruction_yb_commuting_family():
    # R = identity asks M_j1 M_j2 = M_j2 M_j1; R = flip is satisfied by anything
    fam = RepFamily(2, 2, (np.diag([1.0, 2.0]), np.diag([3.0, -1.0])))
    fam2 = RepFamily(2, 2, (np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]])))
    assert verify_obstruction_yb(fam, YbeMatrix(2, np.eye(4))).passed
    assert not verify_obstruction_yb(fam2, YbeMatrix(2, np.eye(4))).passed
    assert verify_obstruction_yb(fam2, YbeMatrix(2, flip(2))).passed
    with pytest.raises(InputError):
        verify_obstruction_yb(fam, YbeMatrix(3, flip(3)))


@pytest.mark.parametrize("which", ["flip", "random", "identity"])
def test_obstruction_tetra_reduces_to_ybe_at_m1(rng, which):
    n = 2
    r = {"flip": flip(n), "identity": np.eye(n * n), "random": rng.normal(size=(4, 4))}[which]
    pr = PairwiseR.uniform(1, n, [r])
    s = ComplexTensor(1, 3, np.eye(1))
    tet = verify_obstruction_tetra(pr, s, 1e-10)
    ybe = verify_ybe(YbeMatrix(n, r), 1e-10)
    assert tet.passed == ybe.passed
    assert tet.max_residual == pytest.approx(ybe.max_residual, abs=1e-12)


def test_obstruction_tetra_mirror():
    pr = PairwiseR.uniform(1, 2, [flip(2)])
    one = ComplexTensor(1, 3, np.eye(1))
    rep = verify_obstruction_tetra(pr, one, stilde=one)
    assert [r.check for r in rep.results] == ["obstruction-tetra", "obstruction-tetra-mirror"]
    assert rep.passed


def test_unitarity_levels(rng):
    assert verify_unitarity("R", YbeMatrix(2, flip(2))).passed
    assert not verify_unitarity("R", YbeMatrix(2, 2 * np.eye(4))).passed
    qb = ModelBundle(2, ComplexTensor.identity(2, 3), q=ComplexTensor.transposition(2))
    assert verify_unitarity("Q", qb).passed
    rb = ModelBundle(2, ComplexTensor.identity(2, 3), q=random_tensor(rng, 2, 2))
    assert not verify_unitarity("Q", rb).passed
    s = random_tensor(rng, 2, 3)
    assert verify_unitarity("S", ModelBundle(2, s)).passed
    assert not verify_unitarity("S", ModelBundle(2, s, random_tensor(rng, 2, 3))).passed
    with pytest.raises(InputError):
        verify_unitarity("X", None)


def test_collapse_flag(rng):
    s = random_tensor(rng, 2, 3)
    good = collapse_check(s)
    assert good.passed and "system collapses" in good.flags
    bad = collapse_check(s, stilde=random_tensor(rng, 2, 3))
    assert not bad.passed and "system collapses" not in bad.flags


@pytest.mark.parametrize("diag", [[1, 2, 3, 5], [1, 1j, -1, 2]])
def test_lawrence_diagonal(diag):
    b = lawrence_construct(ComplexTensor(2, 2, np.diag(diag)))
    assert verify_eight(b, 1e-10).passed


def test_lawrence_transposition():
    b = lawrence_construct(ComplexTensor.transposition(2))
    assert verify_eight(b, 1e-10).max_residual == 0.0


def test_lawrence_identity_is_identity_bundle():
    b = lawrence_construct(ComplexTensor.identity(2, 2))
    assert np.allclose(b.s.data, np.eye(8))


def test_lawrence_rejects_non_solution(rng):
    with pytest.raises(PreconditionError):
        lawrence_construct(ComplexTensor(2, 2, rng.normal(size=(4, 4))))
    with pytest.raises(InputError):
        lawrence_construct(ComplexTensor.identity(2, 3))
