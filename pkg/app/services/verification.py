import logging
from typing import Iterable, List, Optional

import numpy as np

from app.schemas.cloning import Mode
from app.schemas.state import MixParam
from app.schemas.verification import CheckResult, VerificationReport
from app.services.broadcast import sample_lambda, verdict, verify_no_gain
from app.services.cloning import MODE_DIMENSION, SI_LAMBDA, clone, machine_param, positivity_survey, si_machine
from app.services.coherence import closed_form_coherence, coherence_of, triangle_path_inequality
from app.services.oracle import compare_with_closed_form, copy_diagonal_shrinking, first_copy_shrinking, oracle_lambda_bound
from app.services.states import mcs_mis_mixture, random_bloch_state
from app.settings import TOL_ORACLE, TOL_ZERO
from app.utils.errors import GeometryError
from app.utils.sampling import random_interior_point

logger = logging.getLogger(__name__)

THRESHOLDS = {"local": 3 / 4, "nonlocal": 1 / 3}
THRESHOLD_TOLERANCE = 1e-9
ORACLE_SAMPLES = 100


def _states(rng: np.random.Generator, n: int):
    return [random_bloch_state(rng) for _ in range(n)]


def check_oracle(mode: Mode, states, lam: Optional[float] = None) -> CheckResult:
    """Сверка оракула с замкнутыми формулами; за пределом существования изометрии проверка пропускается."""
    lam = SI_LAMBDA[mode] if lam is None else lam
    name = f"oracle-{mode}"
    bound = oracle_lambda_bound(MODE_DIMENSION[mode])
    if lam > bound:
        note = f"λ = {lam} > {bound:.6g}: изометрия не существует, сверка с оракулом пропущена"
        logger.warning(note)
        return CheckResult(name=name, passed=True, skipped=True, note=note)
    worst = max(compare_with_closed_form(s, mode, lam).max_deviation for s in states)
    if abs(lam - SI_LAMBDA[mode]) > TOL_ZERO:
        M = MODE_DIMENSION[mode]
        note = (
            f"λ = {lam} не совпадает с состояние-независимой точкой: сжатие оракула "
            f"{first_copy_shrinking(M, lam):.6g} против 1 − Mλ = {copy_diagonal_shrinking(M, lam):.6g}, "
            f"расхождение фиксируется как находка"
        )
        logger.warning("%s (max %.3g)", note, worst)
        return CheckResult(name=name, passed=True, samples=len(states), max_deviation=worst, note=note)
    return CheckResult(name=name, passed=worst <= TOL_ORACLE, samples=len(states), max_deviation=worst)


def check_no_optimal(mode: Mode, states, rng: np.random.Generator, lam: Optional[float] = None) -> CheckResult:
    """C(ρ̃13), C(ρ̃24) ≥ 2λ и отсутствие оптимального вещания при λ > 0."""
    failures = 0
    worst = 0.0
    for s in states:
        value = lam if lam is not None else sample_lambda(rng, mode)
        outputs = clone(s, machine_param(mode, value))
        shortfall = 2 * value - min(outputs.coherence.c13, outputs.coherence.c24)
        worst = max(worst, shortfall)
        if shortfall > TOL_ZERO or (value > 0 and verdict(s, mode, value).optimal):
            failures += 1
    return CheckResult(name=f"no-optimal-{mode}", passed=failures == 0, samples=len(states), max_deviation=max(worst, 0.0))


def check_decomposition(states) -> CheckResult:
    """Замкнутая форма (a1 + a2 + a3)/2 против матричной l1-когерентности, для входа и для ρ̃12."""
    worst = 0.0
    for s in states:
        worst = max(worst, abs(closed_form_coherence(s).total - coherence_of(s)))
        for mode in ("local", "nonlocal"):
            m = si_machine(mode)
            breakdown = closed_form_coherence(s, m)
            worst = max(worst, abs(breakdown.output_total - clone(s, m).coherence.c12))
    return CheckResult(name="decomposition", passed=worst <= TOL_ZERO, samples=len(states), max_deviation=worst)


def _random_triangle(rng: np.random.Generator):
    while True:
        a, b, c = rng.uniform(-1, 1, size=(3, 2))
        if abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])) > 1e-6:
            return a, b, c


def check_triangle_lemma(rng: np.random.Generator, n: int) -> CheckResult:
    failures = 0
    for _ in range(n):
        a, b, c = _random_triangle(rng)
        d = random_interior_point(rng, a, b, c, margin=1e-9)
        try:
            holds = triangle_path_inequality(a, b, c, d)
        except GeometryError:
            continue
        failures += not holds
    return CheckResult(name="triangle-lemma", passed=failures == 0, samples=n)


def check_threshold(mode: Mode, iterations: int = 60) -> CheckResult:
    """Бисекция предиката вещания для смеси MCS/MIS при состояние-независимой машине."""
    lam = SI_LAMBDA[mode]
    low, high = 0.0, 1.0
    for _ in range(iterations):
        middle = (low + high) / 2
        if verdict(mcs_mis_mixture(MixParam(p=middle)), mode, lam).nonoptimal:
            high = middle
        else:
            low = middle
    deviation = abs(high - THRESHOLDS[mode])
    return CheckResult(name=f"threshold-{mode}", passed=deviation <= THRESHOLD_TOLERANCE, max_deviation=deviation)


def run_verification(
    samples: int,
    seed: Optional[int] = None,
    modes: Optional[Iterable[Mode]] = None,
    lam: Optional[float] = None,
) -> VerificationReport:
    """Запускает все проверочные батареи с воспроизводимым зерном."""
    if samples < 1:
        raise ValueError("Число выборок должно быть не меньше 1")
    modes: List[Mode] = list(modes or ("local", "nonlocal"))
    streams = [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(3 + 2 * len(modes))]
    states = _states(streams[0], samples)
    report = VerificationReport(seed=seed, samples=samples)
    report.checks.append(check_decomposition(states))
    report.checks.append(check_triangle_lemma(streams[1], 10 * samples))
    oracle_states = states[:ORACLE_SAMPLES]
    for k, mode in enumerate(modes):
        report.checks.append(check_oracle(mode, oracle_states, lam))
        report.checks.append(check_no_optimal(mode, states, streams[2 + 2 * k], lam))
        report.checks.append(check_threshold(mode))
        report.no_gain.append(verify_no_gain(samples, mode, streams[3 + 2 * k], lam))
        report.positivity.append(positivity_survey(states, machine_param(mode, SI_LAMBDA[mode] if lam is None else lam)))
    for check in report.checks:
        logger.info("%s: %s", check.name, "пропущена" if check.skipped else ("ok" if check.passed else "НАРУШЕНИЕ"))
    return report
