import numpy as np
import pytest

from app.schemas.broadcast import Interval
from app.schemas.state import BetaCoords, MixParam
from app.services.broadcast import (
    beta2_ranges,
    bds_condition,
    bds_first_principles_coherence,
    bds_printed_coherence,
    crosscheck,
    grid_axis,
    mcs_condition,
    region,
    region_grid,
    region_summary,
    verdict,
    verify_no_gain,
)
from app.services.cloning import SI_LAMBDA
from app.services.states import SQRT2, bds_to_bloch, mcs_mis_mixture
from app.utils.errors import TetrahedronError


def beta(b1, b2, b3):
    return BetaCoords(beta1=b1, beta2=b2, beta3=b3)


def test_mcs_verdict_above_threshold():
    """p = 0.8, локальный SI: 16·0.8/9 ≈ 1.4222 > 1.4."""
    result = verdict(mcs_mis_mixture(MixParam(p=0.8)), "local", 1 / 6)
    assert result.coh_12 == pytest.approx(16 * 0.8 / 9)
    assert result.coh_13 == pytest.approx(1.4)
    assert result.nonoptimal
    assert not result.optimal
    assert not result.gained


def test_mcs_verdict_below_threshold():
    assert not verdict(mcs_mis_mixture(MixParam(p=0.5)), "local", 1 / 6).nonoptimal


@pytest.mark.parametrize("mode", ["local", "nonlocal"])
def test_no_optimal_broadcast(random_states, mode, rng):
    """Оптимальное вещание невозможно ни при каком λ > 0."""
    for state in random_states(100):
        lam = rng.uniform(0.001, 0.25)
        assert not verdict(state, mode, lam).optimal


@pytest.mark.parametrize("mode, threshold", [("local", 0.75), ("nonlocal", 1 / 3)])
def test_mcs_threshold(mode, threshold):
    lam = SI_LAMBDA[mode]
    assert mcs_condition(mode, threshold + 1e-6, lam)
    assert not mcs_condition(mode, threshold - 1e-6, lam)
    assert not mcs_condition(mode, threshold, lam)
    assert not mcs_condition(mode, 0.0, lam)


@pytest.mark.parametrize("mode", ["local", "nonlocal"])
def test_mcs_condition_matches_verdict(mode):
    """Аналитическое условие совпадает с предикатом на сетке (p, λ)."""
    for p in np.linspace(0, 1, 21):
        for lam in np.linspace(0.0, 0.25, 11):
            state = mcs_mis_mixture(MixParam(p=p))
            assert mcs_condition(mode, p, lam) == verdict(state, mode, lam).nonoptimal


def test_mcs_condition_monotone_in_p():
    values = [mcs_condition("local", p, 0.1) for p in np.linspace(0, 1, 101)]
    first = values.index(True)
    assert all(values[first:])


def test_mcs_condition_rejects_bad_p():
    with pytest.raises(ValueError):
        mcs_condition("local", 1.5, 0.1)


@pytest.mark.parametrize("mode, point, expected", [
    ("local", (0.2, 0.43, -0.2), False),
    ("local", (0.2, 0.431, -0.2), True),
    ("nonlocal", (0.2, -0.04, 0.2), True),
    ("nonlocal", (0.2, 0.0, 0.2), False),
    ("nonlocal", (0.2, 0.24, 0.2), True),
    ("local", (0.0, 0.0, 0.0), False),
    ("nonlocal", (0.0, 0.0, 0.0), False),
])
def test_bds_condition(mode, point, expected):
    assert bds_condition(mode, beta(*point)) is expected


def test_bds_condition_outside_tetrahedron():
    with pytest.raises(TetrahedronError):
        bds_condition("local", beta(0.5, 0.5, 0.5))


def test_local_region_counterexample():
    """Вещание возможно и при |β2| < 0.43: точка (0.1, 0.41, −0.27)."""
    assert bds_condition("local", beta(0.1, 0.41, -0.27))


def test_ranges_two_intervals():
    result = beta2_ranges("local", 0.3, 0.05)
    assert [interval.rounded() for interval in result.intervals] == [
        Interval(lower=-0.566, upper=-0.505, lower_open=False, upper_open=True),
        Interval(lower=0.555, upper=0.566, lower_open=True, upper_open=False),
    ]


def test_ranges_single_interval():
    result = beta2_ranges("nonlocal", -0.2, -0.1)
    assert [interval.rounded() for interval in result.intervals] == [
        Interval(lower=0.136, upper=0.212, lower_open=True, upper_open=False),
    ]


def test_ranges_empty():
    """Условие требует |β2| > 0.530, а сечение тетраэдра ограничено 0.354."""
    assert beta2_ranges("local", 0.0, 0.0).empty


def test_ranges_empty_slice():
    assert beta2_ranges("local", 0.4, 0.3).empty


def test_ranges_whole_slice():
    """При r < 0 подходит всё сечение."""
    result = beta2_ranges("nonlocal", 0.0, 0.1, lam=0.0)
    bound = 0.5 / SQRT2
    assert result.intervals == [Interval(lower=-bound, upper=bound, lower_open=False, upper_open=False)]


@pytest.mark.parametrize("mode, b1, b3", [("local", 0.3, 0.05), ("nonlocal", 0.1, -0.2), ("nonlocal", 0.2, 0.2)])
def test_ranges_agree_with_condition(mode, b1, b3):
    """Точки внутри интервалов удовлетворяют условию, вне - нет."""
    result = beta2_ranges(mode, b1, b3)
    bound = (0.5 + b1) / SQRT2
    for b2 in np.linspace(-bound, bound, 201):
        inside = any(interval.contains(b2) for interval in result.intervals)
        assert inside == bds_condition(mode, beta(b1, b2, b3))


def test_printed_coherence_si():
    """Локальный SI: 4|2β2 − β3|/(9√2)."""
    point = beta(0.2, 0.43, -0.2)
    assert bds_printed_coherence("local", point) == pytest.approx(4 * 1.06 / (9 * SQRT2))


def test_first_principles_coherence():
    """Расчёт: μ²·max(√2|β2 − β3|, 2|β1|)."""
    point = beta(0.2, 0.43, -0.2)
    expected = (2 / 3) ** 2 * max(SQRT2 * 0.63, 0.4)
    assert bds_first_principles_coherence("local", point) == pytest.approx(expected)


def test_crosscheck_disagrees_off_axis():
    """При β1 ≠ 0 печатная формула расходится с расчётом."""
    record = crosscheck("local", beta(0.2, 0.0, 0.0))
    assert record.printed == 0.0
    assert record.first_principles > 0
    assert record.disagree


def test_crosscheck_agrees_on_axis():
    record = crosscheck("local", beta(0.0, 0.2, 0.0))
    assert not record.disagree


def test_grid_axis():
    axis = grid_axis(0.1)
    assert axis.size == 15
    assert axis[0] == pytest.approx(-1 / SQRT2)
    with pytest.raises(ValueError):
        grid_axis(0)
    with pytest.raises(ValueError):
        grid_axis(0.2)


def test_region_nonlocal_larger():
    """Доля вещания в тетраэдре для нелокального клонера больше, чем для локального."""
    local = region_summary("local", 0.02)
    nonlocal_ = region_summary("nonlocal", 0.02)
    assert local.in_tetrahedron == nonlocal_.in_tetrahedron
    assert 0 < local.broadcastable_fraction < nonlocal_.broadcastable_fraction


def test_region_local_points_near_edges():
    """Локальные вещательные точки: β1 > 0 и |β2| > (1 + β1)/(2√2)."""
    records = [record for record in region_grid("local", 0.02) if record.broadcastable]
    assert records
    for record in records:
        assert record.beta1 > 0
        assert abs(record.beta2) > (1 + record.beta1) / (2 * SQRT2) - 1e-9


@pytest.mark.parametrize("mode", ["local", "nonlocal"])
def test_region_records_consistent(mode):
    records = list(region_grid(mode, 0.05))
    keys = [(r.beta1, r.beta2, r.beta3) for r in records]
    assert keys == sorted(keys)
    hues = [r.hue for r in records if r.broadcastable]
    assert min(hues) == 0.0 and max(hues) == pytest.approx(1.0)
    for record in records:
        if record.broadcastable:
            assert bds_condition(mode, beta(record.beta1, record.beta2, record.beta3))
        else:
            assert record.hue is None
        if not record.in_tetrahedron:
            assert record.nonlocal_coherence == 0.0


def test_no_gain_nonlocal(rng):
    """Нелокально C(ρ̃12) = μ·C(ρ12) на каждом образце."""
    report = verify_no_gain(1000, "nonlocal", rng)
    assert report.violations == 0
    assert report.coherent_samples + report.excluded_incoherent == 1000
    assert report.max_mu_deviation <= 1e-12
    assert report.max_ratio < 1


def test_no_gain_local(rng):
    report = verify_no_gain(1000, "local", rng)
    assert report.violations == 0
    assert report.max_ratio < 1


def test_no_gain_requires_samples():
    with pytest.raises(ValueError):
        verify_no_gain(0, "local")


def test_bds_clone_both_verdicts():
    """(0.2, 0.43, −0.2): печатное условие ложно, расчётный вердикт истинен."""
    point = beta(0.2, 0.43, -0.2)
    assert not bds_condition("local", point)
    assert verdict(bds_to_bloch(point), "local", 1 / 6).nonoptimal


@pytest.mark.parametrize("mode", ["local", "nonlocal"])
def test_region_single_pass_matches_parts(mode):
    """Сводка и записи одного расчёта совпадают с отдельными region_summary и region_grid."""
    summary, records = region(mode, 0.05)
    records = list(records)
    assert summary == region_summary(mode, 0.05)
    assert len(records) == summary.points
    assert sum(record.in_tetrahedron for record in records) == summary.in_tetrahedron
    assert sum(record.broadcastable for record in records) == summary.broadcastable
    assert [record.hue for record in records] == [record.hue for record in region_grid(mode, 0.05)]
