import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from app.schemas.coherence import BasisSpec
from app.schemas.state import BlochTwoQubit, DensityMatrix
from app.services.cloning import clone, si_machine
from app.services.coherence import (
    closed_form_coherence,
    coherence_of,
    eigenbasis,
    l1_coherence,
    triangle_path_inequality,
)
from app.services.states import bloch_to_density
from app.utils.errors import BasisError, GeometryError
from app.utils.linalg import projector


def test_mcs_coherence(mcs_state):
    """Все 12 внедиагональных элементов MCS равны 1/4."""
    assert coherence_of(mcs_state) == pytest.approx(3.0)


def test_maximally_mixed_is_incoherent():
    assert l1_coherence(np.eye(4) / 4) == 0.0


def test_bell_basis_coherence_of_product_state():
    """|00⟩⟨00| некогерентно в вычислительном базисе и имеет когерентность 1 в базисе Белла."""
    rho = DensityMatrix(entries=projector(np.array([1, 0, 0, 0], dtype=complex)))
    assert l1_coherence(rho) == 0.0
    assert l1_coherence(rho, BasisSpec.bell()) == pytest.approx(1.0)


def test_eigenbasis_removes_coherence(random_states):
    """В собственном базисе когерентность нулевая."""
    rho = bloch_to_density(random_states(1)[0])
    assert l1_coherence(rho, eigenbasis(rho)) == pytest.approx(0.0, abs=1e-10)


def test_non_unitary_basis_rejected():
    with pytest.raises(BasisError):
        l1_coherence(np.eye(4) / 4, BasisSpec.from_unitary(2 * np.eye(4)))


def test_closed_form_matches_matrix(random_states):
    """Замкнутая форма (a1 + a2 + a3)/2 совпадает с матричной когерентностью."""
    for state in random_states(200):
        assert closed_form_coherence(state).total == pytest.approx(coherence_of(state), abs=1e-12)


def test_closed_form_asymmetric_correlations():
    """Несимметричная T: радикал a1 содержит (t12 + t21)² и (t11 − t22)²."""
    t = np.array([[0.3, 0.5, 0.0], [0.0, 0.1, 0.0], [0.0, 0.0, 0.0]])
    state = BlochTwoQubit.from_arrays((0, 0, 0), (0, 0, 0), t)
    breakdown = closed_form_coherence(state)
    assert breakdown.a1 == pytest.approx(np.hypot(0.5, 0.2) + np.hypot(0.5, 0.4))
    assert breakdown.total == pytest.approx(coherence_of(state), abs=1e-12)


@pytest.mark.parametrize("mode", ["local", "nonlocal"])
def test_output_terms_match_clone(random_states, mode):
    """b1..b3 дают когерентность ρ̃12."""
    machine = si_machine(mode)
    for state in random_states(50):
        breakdown = closed_form_coherence(state, machine)
        assert breakdown.output_total == pytest.approx(clone(state, machine).coherence.c12, abs=1e-12)


def test_mcs_breakdown(mcs_state):
    breakdown = closed_form_coherence(mcs_state)
    assert (breakdown.a1, breakdown.a2, breakdown.a3) == pytest.approx((2.0, 2.0, 2.0))
    assert breakdown.x_aggregate == pytest.approx(6.0)


coordinates = st.floats(min_value=-10, max_value=10, allow_nan=False)
weights = st.floats(min_value=0.01, max_value=1)


@given(
    a=st.tuples(coordinates, coordinates),
    b=st.tuples(coordinates, coordinates),
    c=st.tuples(coordinates, coordinates),
    w=st.tuples(weights, weights, weights),
)
def test_triangle_path_inequality(a, b, c, w):
    """Путь через вершину длиннее пути через внутреннюю точку."""
    a, b, c = (np.array(point) for point in (a, b, c))
    area = abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])) / 2
    assume(area >= 0.1)
    weight = np.array(w) / sum(w)
    d = weight[0] * a + weight[1] * b + weight[2] * c
    assert triangle_path_inequality(a, b, c, d)


def test_triangle_degenerate():
    with pytest.raises(GeometryError):
        triangle_path_inequality((0, 0), (1, 1), (2, 2), (1, 1))


def test_triangle_exterior_point():
    with pytest.raises(GeometryError):
        triangle_path_inequality((0, 0), (1, 0), (0, 1), (1, 1))


def test_coherence_invariant_under_relabelling(random_states):
    """Перестановка меток базиса не меняет l1-когерентность."""
    rho = bloch_to_density(random_states(1)[0])
    for order in ([1, 0, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]):
        permutation = BasisSpec.from_unitary(np.eye(4)[:, order])
        assert l1_coherence(rho, permutation) == pytest.approx(l1_coherence(rho), abs=1e-14)


def test_triangle_lemma_on_clone_terms(random_states):
    """A = (t13, t23), B = x⊥, C = −x⊥, D = μA: путь через A длиннее пути через D."""
    mu = si_machine("local").mu
    checked = 0
    for state in random_states(50):
        t, x = state.t_mat, state.x_vec
        a, b = np.array([t[0, 2], t[1, 2]]), x[:2]
        if abs(a[0] * b[1] - a[1] * b[0]) < 1e-6:
            continue
        assert triangle_path_inequality(a, b, -b, mu * a)
        checked += 1
    assert checked > 0
