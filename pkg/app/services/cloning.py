import logging
from typing import Iterable, Tuple

import numpy as np

from app.schemas.cloning import CloneOutputs, MachineParam, Mode, OutputCoherences, PositivityFinding, PositivitySurvey
from app.schemas.state import BlochTwoQubit
from app.services.coherence import coherence_of
from app.services.states import bloch_to_density, validate_state
from app.utils.errors import MachineRangeError

logger = logging.getLogger(__name__)

# Диапазоны λ из замкнутой модели: [0, 1/2] локально, [0, 1/4] нелокально
LAMBDA_BOUNDS = {"local": 0.5, "nonlocal": 0.25}

# Параметр состояния-независимой машины
SI_LAMBDA = {"local": 1 / 6, "nonlocal": 1 / 10}

# Размерность копируемой системы для каждого режима
MODE_DIMENSION = {"local": 2, "nonlocal": 4}


def check_machine(m: MachineParam, mode: Mode) -> None:
    if m.mode != mode:
        raise MachineRangeError(f"Ожидалась машина режима {mode}, получена {m.mode}")
    bound = LAMBDA_BOUNDS[mode]
    if not 0 <= m.lambda_ <= bound:
        raise MachineRangeError(f"λ = {m.lambda_} вне диапазона [0, {bound}] для режима {mode}")


def machine_param(mode: Mode, lam: float) -> MachineParam:
    """Создаёт параметр машины с проверкой диапазона λ."""
    if mode not in LAMBDA_BOUNDS:
        raise MachineRangeError(f"Неизвестный режим клонирования: {mode}")
    m = MachineParam(mode=mode, lambda_=lam)
    check_machine(m, mode)
    return m


def si_machine(mode: Mode) -> MachineParam:
    """Состояние-независимая машина: λ = 1/6 (local), λ = 1/10 (nonlocal)."""
    return machine_param(mode, SI_LAMBDA[mode])


def si_coefficients(M: int) -> Tuple[float, float]:
    """Коэффициенты c, d оптимального клонера: c² = 2/(M+1), d² = 1/(2(M+1))."""
    return float(np.sqrt(2 / (M + 1))), float(np.sqrt(1 / (2 * (M + 1))))


def local_correlation(m: MachineParam) -> np.ndarray:
    """T_l = diag(2λ, 2λ, 1−4λ) или T_nl = diag(2λ, 2λ, 1−8λ)."""
    lam = m.lambda_
    k = 4 if m.mode == "local" else 8
    return np.diag([2 * lam, 2 * lam, 1 - k * lam])


def _outputs(s: BlochTwoQubit, m: MachineParam, t_nonlocal: np.ndarray) -> CloneOutputs:
    mu = m.mu
    x, y = mu * s.x_vec, mu * s.y_vec
    t_local = local_correlation(m)
    rho12 = BlochTwoQubit.from_arrays(x, y, t_nonlocal)
    rho13 = BlochTwoQubit.from_arrays(x, x, t_local)
    rho24 = BlochTwoQubit.from_arrays(y, y, t_local)
    c12 = coherence_of(rho12)
    coherence = OutputCoherences(c12=c12, c34=c12, c13=coherence_of(rho13), c24=coherence_of(rho24))
    return CloneOutputs(rho12=rho12, rho34=rho12, rho13=rho13, rho24=rho24, machine=m, coherence=coherence)


def clone_local(s: BlochTwoQubit, m: MachineParam) -> CloneOutputs:
    """Локальный клонер: ρ̃12 = ρ̃34 = {μx, μy, μ²T}, ρ̃13 = {μx, μx, T_l}, ρ̃24 = {μy, μy, T_l}."""
    check_machine(m, "local")
    return _outputs(s, m, m.mu ** 2 * s.t_mat)


def clone_nonlocal(s: BlochTwoQubit, m: MachineParam) -> CloneOutputs:
    """Нелокальный клонер: ρ̃12 = ρ̃34 = {μx, μy, μT}, ρ̃13 = {μx, μx, T_nl}, ρ̃24 = {μy, μy, T_nl}."""
    check_machine(m, "nonlocal")
    return _outputs(s, m, m.mu * s.t_mat)


def clone(s: BlochTwoQubit, m: MachineParam) -> CloneOutputs:
    return clone_local(s, m) if m.mode == "local" else clone_nonlocal(s, m)


def local_output_coherence(mode: Mode, v, lam: float) -> float:
    """C(ρ̃13) = 2‖v⊥‖ + 2λ(1 − k‖v⊥‖), k = 2 (local) или 4 (nonlocal), v⊥ = (v1, v2)."""
    k = 2 if mode == "local" else 4
    norm = float(np.hypot(v[0], v[1]))
    return 2 * norm + 2 * lam * (1 - k * norm)


def positivity_survey(states: Iterable[BlochTwoQubit], m: MachineParam) -> PositivitySurvey:
    """Замеряет минимальные собственные значения выходов и считает нарушения положительности."""
    samples = violations = 0
    worst = np.inf
    findings = []
    for s in states:
        samples += 1
        outputs = clone(s, m)
        for pair in ("rho12", "rho13", "rho24"):
            report = validate_state(bloch_to_density(getattr(outputs, pair)))
            worst = min(worst, report.min_eigenvalue)
            if not report.valid:
                violations += 1
                findings.append(PositivityFinding(pair=pair, min_eigenvalue=report.min_eigenvalue))
    if violations:
        logger.warning("Нарушения положительности: %d при %s λ=%.6g", violations, m.mode, m.lambda_)
    return PositivitySurvey(
        machine=m,
        samples=samples,
        violations=violations,
        worst_min_eigenvalue=float(worst) if samples else 0.0,
        findings=findings[:20],
    )
