import numpy as np
import pytest
from scipy.linalg import expm

from brauerspan.groups import (
    DETERMINANT_TOL,
    ORTHOGONALITY_TOL,
    SYMPLECTIC_TOL,
    GroupElement,
    LieGenerator,
    component_reps,
    lie_basis,
    omega,
    sample,
    tensor_power_apply,
)

from conftest import kron_power


def _group_dims():
    for group in ("O", "SO"):
        for n in (1, 2, 3, 4):
            yield group, n
    for n in (2, 4):
        yield "Sp", n


@pytest.mark.parametrize("group,n", list(_group_dims()))
def test_sampled_elements_satisfy_invariants(group, n):
    rng = np.random.default_rng(7)
    for _ in range(100):
        g = sample(group, n, rng)
        mat = g.mat
        if group in ("O", "SO"):
            assert np.max(np.abs(mat.T @ mat - np.eye(n))) <= ORTHOGONALITY_TOL
            if group == "SO":
                assert abs(np.linalg.det(mat) - 1.0) <= DETERMINANT_TOL
        else:
            Om = omega(n)
            assert np.max(np.abs(mat.T @ Om @ mat - Om)) <= SYMPLECTIC_TOL


def test_sample_rejects_bad_params():
    with pytest.raises(ValueError):
        sample("Sp", 3, 0)
    with pytest.raises(ValueError):
        sample("O", 0, 0)
    with pytest.raises(ValueError):
        sample("U", 2, 0)


def test_group_element_validation():
    with pytest.raises(ValueError):
        GroupElement(group="O", n=2, mat=np.array([[1.0, 0.3], [0.0, 1.0]]))
    reflection = np.diag([-1.0, 1.0])
    GroupElement(group="O", n=2, mat=reflection)
    with pytest.raises(ValueError):
        GroupElement(group="SO", n=2, mat=reflection)


def test_lie_basis_counts_and_relations():
    assert len(lie_basis("SO", 2)) == 1
    assert len(lie_basis("O", 3)) == 3
    assert len(lie_basis("Sp", 2)) == 3
    assert len(lie_basis("Sp", 4)) == 10
    for group, n in _group_dims():
        for gen in lie_basis(group, n):
            X = gen.mat
            if group in ("O", "SO"):
                assert np.all(X + X.T == 0.0)
            else:
                Om = omega(n)
                assert np.all(X.T @ Om + Om @ X == 0.0)


def test_lie_generator_validation():
    with pytest.raises(ValueError):
        LieGenerator(group="O", n=2, mat=np.eye(2))


def test_exponentials_of_generators_land_in_group():
    for group, n in _group_dims():
        for gen in lie_basis(group, n):
            g = expm(0.3 * gen.mat)
            GroupElement(group=group, n=n, mat=g)  # raises if invariant fails


def test_component_reps():
    reps = component_reps("O", 2)
    assert len(reps) == 1
    assert np.array_equal(reps[0].mat, np.diag([-1.0, 1.0]))
    assert component_reps("SO", 5) == []
    assert component_reps("Sp", 4) == []


def test_tensor_power_identity_and_swap():
    x = np.arange(8.0)
    assert np.array_equal(tensor_power_apply(np.eye(2), 3, x), x)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert np.array_equal(tensor_power_apply(swap, 2, np.kron(e1, e2)), np.kron(e2, e1))


def test_tensor_power_matches_kronecker_oracle():
    rng = np.random.default_rng(3)
    for n in (2, 3):
        for k in (0, 1, 2, 3):
            g = rng.standard_normal((n, n))
            x = rng.standard_normal(n ** k)
            expected = kron_power(g, k) @ x
            assert np.max(np.abs(tensor_power_apply(g, k, x) - expected)) <= 1e-12


def test_tensor_power_functoriality():
    rng = np.random.default_rng(5)
    for group, n in _group_dims():
        g = sample(group, n, rng).mat
        h = sample(group, n, rng).mat
        for k in (1, 2, 3):
            x = rng.standard_normal(n ** k)
            via_two = tensor_power_apply(g, k, tensor_power_apply(h, k, x))
            direct = tensor_power_apply(g @ h, k, x)
            assert np.max(np.abs(via_two - direct)) <= 1e-10


def test_tensor_power_rejects_bad_length():
    with pytest.raises(ValueError):
        tensor_power_apply(np.eye(2), 2, np.zeros(3))
