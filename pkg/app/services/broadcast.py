import logging
import math
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from typing import Iterator, List, Optional, Tuple

import numpy as np

from app.schemas.broadcast import (
    Beta2Range,
    BroadcastVerdict,
    CrosscheckRecord,
    Interval,
    NoGainReport,
    RegionRecord,
    RegionSummary,
)
from app.schemas.cloning import MachineParam, Mode
from app.schemas.state import BetaCoords, BlochTwoQubit
from app.services.cloning import SI_LAMBDA, clone, machine_param
from app.services.coherence import coherence_of
from app.services.states import SQRT2, bds_to_bloch, bell_weights, in_tetrahedron, random_bloch_state
from app.settings import COHERENT_THRESHOLD, TOL_ZERO, WORKERS
from app.utils.errors import TetrahedronError

logger = logging.getLogger(__name__)

MAX_RESOLUTION = 0.1


def _machine(mode: Mode, lam: Optional[float]) -> MachineParam:
    return machine_param(mode, SI_LAMBDA[mode] if lam is None else lam)


def verdict(s: BlochTwoQubit, mode: Mode, lam: float) -> BroadcastVerdict:
    """Когерентности четырёх выходов и оба предиката вещания со строгими неравенствами."""
    outputs = clone(s, machine_param(mode, lam))
    c = outputs.coherence
    coh_in = coherence_of(s)
    optimal = c.c13 <= TOL_ZERO and c.c24 <= TOL_ZERO and c.c12 > TOL_ZERO and c.c34 > TOL_ZERO
    nonoptimal = all(nl > loc + TOL_ZERO for nl in (c.c12, c.c34) for loc in (c.c13, c.c24))
    return BroadcastVerdict(
        coh_in=coh_in,
        coh_12=c.c12,
        coh_34=c.c34,
        coh_13=c.c13,
        coh_24=c.c24,
        optimal=optimal,
        nonoptimal=nonoptimal,
        gained=c.c12 > coh_in + TOL_ZERO,
    )


def mcs_condition(mode: Mode, p: float, lam: float) -> bool:
    """Смесь MCS/MIS: p(1−2λ)² > 2λ локально, p(1−4λ) > 2λ нелокально."""
    if not 0 <= p <= 1:
        raise ValueError(f"p = {p} вне отрезка [0, 1]")
    m = machine_param(mode, lam)
    shrink = m.mu ** 2 if mode == "local" else m.mu
    return p * shrink - 2 * lam > TOL_ZERO


def _printed(mode: Mode, beta2, beta3, lam: float):
    """Печатная когерентность нелокального выхода для BDS; работает и с массивами numpy."""
    if mode == "local":
        return np.abs((2 * beta2 - beta3) * (1 - 2 * lam) ** 2) / SQRT2
    return (np.abs((2 * beta2 - beta3) * (-1 + 4 * lam)) + np.abs(beta3 - 4 * beta3 * lam)) / SQRT2


def _tetra_margin(beta1, beta2, beta3):
    """Минимальная вероятность Белла; неотрицательна внутри тетраэдра."""
    return reduce(np.minimum, bell_weights(beta1, beta2, beta3))


def bds_printed_coherence(mode: Mode, b: BetaCoords, lam: Optional[float] = None) -> float:
    m = _machine(mode, lam)
    return float(_printed(mode, b.beta2, b.beta3, m.lambda_))


def bds_local_output_coherence(lam: float) -> float:
    return 2 * lam


def bds_condition(mode: Mode, b: BetaCoords, lam: Optional[float] = None) -> bool:
    """C_nl > C_loc по печатным выражениям для BDS; по умолчанию машина состояние-независимая."""
    if not in_tetrahedron(b):
        raise TetrahedronError(f"Точка β = {b.as_tuple()} лежит вне тетраэдра")
    m = _machine(mode, lam)
    return bool(_printed(mode, b.beta2, b.beta3, m.lambda_) - bds_local_output_coherence(m.lambda_) > TOL_ZERO)


def bds_first_principles_coherence(mode: Mode, b: BetaCoords, lam: Optional[float] = None) -> float:
    """C(ρ̃12) через замкнутые отображения и матричную l1-когерентность."""
    return clone(bds_to_bloch(b), _machine(mode, lam)).coherence.c12


def crosscheck(mode: Mode, b: BetaCoords, lam: Optional[float] = None) -> CrosscheckRecord:
    m = _machine(mode, lam)
    printed = bds_printed_coherence(mode, b, m.lambda_)
    first = bds_first_principles_coherence(mode, b, m.lambda_)
    disagree = abs(printed - first) > TOL_ZERO
    if disagree:
        logger.debug("Расхождение при β=%s: печатная %.6g, расчётная %.6g", b.as_tuple(), printed, first)
    return CrosscheckRecord(
        mode=mode,
        lambda_=m.lambda_,
        beta1=b.beta1,
        beta2=b.beta2,
        beta3=b.beta3,
        printed=printed,
        first_principles=first,
        disagree=disagree,
    )


def beta2_ranges(mode: Mode, beta1: float, beta3: float, lam: Optional[float] = None) -> Beta2Range:
    """Решает |2β2 − β3| > r относительно β2 и пересекает с сечением тетраэдра [−b, b]."""
    m = _machine(mode, lam)
    result = Beta2Range(mode=mode, lambda_=m.lambda_, beta1=beta1, beta3=beta3)
    bound = (0.5 + beta1) / SQRT2
    if bound < 0 or abs(beta3) > (0.5 - beta1) / SQRT2 + TOL_ZERO:
        return result
    mu = m.mu
    if mu <= 0:
        return result
    if mode == "local":
        r = 2 * SQRT2 * m.lambda_ / mu ** 2
    else:
        r = 2 * SQRT2 * m.lambda_ / mu - abs(beta3)
    if r < 0:
        result.intervals.append(Interval(lower=-bound, upper=bound, lower_open=False, upper_open=False))
        return result
    low_root, high_root = (beta3 - r) / 2, (beta3 + r) / 2
    if low_root > -bound:
        result.intervals.append(Interval(lower=-bound, upper=min(low_root, bound), lower_open=False, upper_open=low_root <= bound))
    if high_root < bound:
        result.intervals.append(Interval(lower=max(high_root, -bound), upper=bound, lower_open=high_root >= -bound, upper_open=False))
    return result


def grid_axis(resolution: float) -> np.ndarray:
    """Ось −1/√2 + k·res, k = 0..⌊√2/res⌋."""
    if not 0 < resolution <= MAX_RESOLUTION:
        raise ValueError(f"Шаг сетки {resolution} вне диапазона (0, {MAX_RESOLUTION}]")
    steps = math.floor(SQRT2 / resolution + TOL_ZERO)
    return -1 / SQRT2 + resolution * np.arange(steps + 1)


def _slice(mode: Mode, lam: float, beta1: float, axis: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    beta2, beta3 = np.meshgrid(axis, axis, indexing="ij")
    inside = _tetra_margin(beta1, beta2, beta3) >= -TOL_ZERO
    coherence = np.where(inside, _printed(mode, beta2, beta3, lam), 0.0)
    broadcastable = inside & (coherence - bds_local_output_coherence(lam) > TOL_ZERO)
    return inside.ravel(), broadcastable.ravel(), coherence.ravel()


def _slices(mode: Mode, lam: float, axis: np.ndarray) -> List[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
    with ThreadPoolExecutor(max_workers=WORKERS) as executor:
        return list(executor.map(lambda beta1: _slice(mode, lam, beta1, axis), axis))


def _hue_bounds(slices) -> Tuple[Optional[float], Optional[float]]:
    values = [coherence[broadcastable] for _, broadcastable, coherence in slices if broadcastable.any()]
    if not values:
        return None, None
    joined = np.concatenate(values)
    return float(joined.min()), float(joined.max())


def _grid(mode: Mode, resolution: float, lam: Optional[float]) -> Tuple[MachineParam, np.ndarray, list]:
    m = _machine(mode, lam)
    axis = grid_axis(resolution)
    return m, axis, _slices(mode, m.lambda_, axis)


def _records(axis: np.ndarray, slices) -> Iterator[RegionRecord]:
    low, high = _hue_bounds(slices)
    span = (high - low) if low is not None else 0.0
    beta2, beta3 = (grid.ravel() for grid in np.meshgrid(axis, axis, indexing="ij"))
    for beta1, (inside, broadcastable, coherence) in zip(axis, slices):
        for k in range(beta2.size):
            hue = None
            if broadcastable[k]:
                hue = float((coherence[k] - low) / span) if span > 0 else 0.0
            yield RegionRecord.model_construct(
                beta1=float(beta1),
                beta2=float(beta2[k]),
                beta3=float(beta3[k]),
                in_tetrahedron=bool(inside[k]),
                broadcastable=bool(broadcastable[k]),
                nonlocal_coherence=float(coherence[k]),
                hue=hue,
            )


def _summary(mode: Mode, m: MachineParam, resolution: float, axis: np.ndarray, slices) -> RegionSummary:
    inside = sum(int(s[0].sum()) for s in slices)
    broadcastable = sum(int(s[1].sum()) for s in slices)
    low, high = _hue_bounds(slices)
    summary = RegionSummary(
        mode=mode,
        lambda_=m.lambda_,
        resolution=resolution,
        points=axis.size ** 3,
        in_tetrahedron=inside,
        broadcastable=broadcastable,
        broadcastable_fraction=broadcastable / inside if inside else 0.0,
        coherence_min=low,
        coherence_max=high,
    )
    logger.info(
        "Сетка %s res=%.4g: %d точек в тетраэдре, доля вещания %.4f",
        mode, resolution, inside, summary.broadcastable_fraction,
    )
    return summary


def region_grid(mode: Mode, resolution: float, lam: Optional[float] = None) -> Iterator[RegionRecord]:
    """Сетка по тетраэдру в лексикографическом порядке (β1, β2, β3); hue нормирован по вещательным точкам."""
    _, axis, slices = _grid(mode, resolution, lam)
    return _records(axis, slices)


def region_summary(mode: Mode, resolution: float, lam: Optional[float] = None) -> RegionSummary:
    m, axis, slices = _grid(mode, resolution, lam)
    return _summary(mode, m, resolution, axis, slices)


def region(mode: Mode, resolution: float, lam: Optional[float] = None) -> Tuple[RegionSummary, Iterator[RegionRecord]]:
    """Сводка и записи сетки по одному расчёту срезов."""
    m, axis, slices = _grid(mode, resolution, lam)
    return _summary(mode, m, resolution, axis, slices), _records(axis, slices)


def crosscheck_scan(mode: Mode, resolution: float, lam: Optional[float] = None) -> Tuple[int, int, float]:
    """Сравнивает печатную и расчётную когерентность на сетке; возвращает (точек, расхождений, max |Δ|)."""
    m = _machine(mode, lam)
    axis = grid_axis(resolution)
    total = disagreements = 0
    worst = 0.0
    for beta1 in axis:
        for beta2 in axis:
            for beta3 in axis:
                if _tetra_margin(beta1, beta2, beta3) < -TOL_ZERO:
                    continue
                b = BetaCoords.model_construct(beta1=float(beta1), beta2=float(beta2), beta3=float(beta3))
                record = crosscheck(mode, b, m.lambda_)
                total += 1
                disagreements += record.disagree
                worst = max(worst, abs(record.printed - record.first_principles))
    if disagreements:
        logger.warning("Печатная формула расходится с расчётом в %d из %d точек", disagreements, total)
    return total, disagreements, worst


def sample_lambda(rng: np.random.Generator, mode: Mode) -> float:
    if mode == "local":
        while True:
            lam = rng.uniform(0, 0.5)
            if lam > 0:
                return float(lam)
    # (0, 1/4]
    return float(0.25 - rng.uniform(0, 0.25))


def verify_no_gain(
    n: int,
    mode: Mode,
    rng: Optional[np.random.Generator] = None,
    lam: Optional[float] = None,
) -> NoGainReport:
    """Проверяет на n случайных состояниях, что когерентность ρ̃12 не растёт при клонировании."""
    if n < 1:
        raise ValueError("Число выборок должно быть не меньше 1")
    rng = rng if rng is not None else np.random.default_rng()
    cases = [(random_bloch_state(rng), lam if lam is not None else sample_lambda(rng, mode)) for _ in range(n)]

    def evaluate(case):
        s, value = case
        m = machine_param(mode, value)
        return m.mu, coherence_of(s), clone(s, m).coherence.c12

    with ThreadPoolExecutor(max_workers=WORKERS) as executor:
        results = list(executor.map(evaluate, cases))

    coherent = excluded = violations = 0
    max_ratio = max_dev = None
    for mu, c_in, c_out in results:
        deviation = abs(c_out - mu * c_in)
        max_dev = deviation if max_dev is None else max(max_dev, deviation)
        if c_in <= COHERENT_THRESHOLD:
            excluded += 1
            continue
        coherent += 1
        ratio = c_out / c_in
        max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)
        if mode == "local":
            violated = mu < 1 and c_out >= c_in
        else:
            violated = deviation > TOL_ZERO
        if violated or ratio > 1 + TOL_ZERO:
            violations += 1
            logger.warning("Рост когерентности: C_in=%.6g, C_out=%.6g, μ=%.6g", c_in, c_out, mu)
    return NoGainReport(
        mode=mode,
        samples=n,
        coherent_samples=coherent,
        excluded_incoherent=excluded,
        max_ratio=max_ratio,
        max_mu_deviation=max_dev,
        violations=violations,
    )
