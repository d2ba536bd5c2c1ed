"""Resonant-pulse layer for a weakly coupled two-spin register.

Physics conventions, chosen once and used everywhere:

* The static Hamiltonian is diagonal in the product basis, built from
  per-spin splittings ``Omega_i = omega0 + omega_i`` plus a ``omegac``
  zz coupling.  In the frame co-rotating with the ``omega0`` precession
  the same operator appears with ``Omega_i`` replaced by ``omega_i``
  (the coupling term is frame invariant).
* A pulse is a circularly polarized drive co-rotating with the spin
  precession; on each driven spin it reads
  ``-(hbar wp / 2) [cos(wr t + phase) X - sin(wr t + phase) Y]``.
  With this helicity a resonant rectangular pulse is an exact transverse
  rotation (there is no counter-rotating term), which is what makes the
  closed-form checks below tight rather than approximate.
* ``evolve_pulse`` integrates the time-dependent Schroedinger equation
  in the rotating frame and returns the state in the interaction
  picture of the static Hamiltonian, i.e. what the pulse did over and
  above free evolution.  A resonant ideal pulse is then exactly
  ``exp(i theta (cos(phase) X - sin(phase) Y))`` with
  ``theta = wp tau / 2``; a compiled conditional-flip pulse approaches
  the ideal permutation with an ``i`` phase on the flipped pair, and its
  spectator phases are absorbed by the frame.
* Selectivity uses the rectangular-pulse bandwidth model
  ``dw = kappa / tau`` with ``kappa = pi`` by default (half width of the
  main spectral lobe).  A transverse rotation on one spin must cover
  that spin's doublet without touching the other spin's lines
  (``omegac < dw < omega1 - omega2 - omegac``, condition 1); a
  conditional flip must resolve a single line inside a doublet
  (``dw < 2 omegac``, condition 2).

The integrator is an exponential midpoint rule: the Hamiltonian is
frozen at each step midpoint and exponentiated, so every step is
unitary.  For a circular drive the step unitaries are diagonal-phase
conjugates of one fixed exponential, which lets the N-step product be
evaluated as a matrix power in O(log N) multiplies; refinement still
halves the step until two successive levels agree.
"""

import math
from dataclasses import dataclass

import numpy as np

from spinqc import linalg
from spinqc.gates import I2, SIGMA_X
from spinqc.register import QuantumState, StateLabel, apply_unitary, format_number

FRAMES = ("lab", "rotating")
DRIVE_SCOPES = ("single-spin-ideal", "both-spins")

# Refinement control for evolve_pulse: halve the step until two levels
# agree to CONVERGENCE_TOL in max norm, starting from LADDER_START steps.
CONVERGENCE_TOL = 1e-8
LADDER_START = 16
LADDER_MAX_STEPS = 2**34

# Default bandwidth placement: rotations sit at the geometric mean of
# their feasibility window; conditional flips keep a 1/16 safety factor
# below the 2*omegac limit, which holds the off-resonant population
# leakage (wp / 2 omegac)^2 near 0.4%.
CNOT_BANDWIDTH_FRACTION = 1.0 / 16.0


class FeasibilityError(ValueError):
    """No pulse satisfies the selectivity bounds for the request."""


class IntegrationError(RuntimeError):
    """The step refinement hit its floor without converging."""


class ConfigError(ValueError):
    """Malformed system-parameter file."""


@dataclass(frozen=True)
class SpinSystem:
    """Angular frequencies (rad/s) of the two-spin model.

    ``omega0`` is the common Larmor scale, ``omega1 > omega2`` the
    per-spin offsets, ``omegac`` the zz coupling, and ``kappa`` the
    bandwidth constant of the rectangular-pulse model.
    """

    omega0: float
    omega1: float
    omega2: float
    omegac: float
    kappa: float = math.pi

    def __post_init__(self):
        values = (self.omega0, self.omega1, self.omega2, self.omegac, self.kappa)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("system parameters must be finite")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")
        if not self.omega1 > self.omega2 > 0:
            raise ValueError("need omega1 > omega2 > 0")
        if self.omegac <= 0:
            raise ValueError("omegac must be positive")
        if self.omegac > self.omega0 / 100.0:
            raise ValueError("weak coupling requires omegac <= omega0 / 100")
        if self.omega1 - self.omega2 < 4.0 * self.omegac:
            raise ValueError(
                "condition 1 margin: need omega1 - omega2 >= 4 * omegac, got "
                f"separation {self.omega1 - self.omega2!r} vs 4*omegac = {4.0 * self.omegac!r}"
            )
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")

    @property
    def Omega1(self) -> float:
        return self.omega0 + self.omega1

    @property
    def Omega2(self) -> float:
        return self.omega0 + self.omega2

    def spin_offset(self, spin: int) -> float:
        if spin == 1:
            return self.omega1
        if spin == 2:
            return self.omega2
        raise ValueError(f"spin must be 1 or 2, got {spin}")

    def larmor(self, spin: int) -> float:
        return self.omega0 + self.spin_offset(spin)


def demo_system() -> SpinSystem:
    """Desk-scale demo parameters (invented values, not a physical system)."""
    return SpinSystem(
        omega0=2 * math.pi * 500.0,
        omega1=2 * math.pi * 25.0,
        omega2=2 * math.pi * 5.0,
        omegac=2 * math.pi * 1.0,
    )


@dataclass(frozen=True)
class TransitionLine:
    """One single-spin spectral line: which pair it connects and at what frequency."""

    frequency: float
    from_label: StateLabel
    to_label: StateLabel
    flipped_spin: int
    spectator: str  # '+' or '-': state of the non-flipping spin


@dataclass(frozen=True)
class Pulse:
    """One rectangular resonant drive."""

    carrier: float
    omega_p: float
    tau: float
    phase: float = 0.0
    purpose: str = ""

    def __post_init__(self):
        values = (self.carrier, self.omega_p, self.tau, self.phase)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("pulse parameters must be finite")
        if self.tau <= 0:
            raise ValueError("pulse duration must be positive")
        if self.omega_p <= 0:
            raise ValueError("pulse amplitude must be positive")


def bandwidth_of(pulse: Pulse, sys: SpinSystem) -> float:
    """Half-width kappa / tau of a pulse under the system's bandwidth model."""
    return sys.kappa / pulse.tau


# Diagonal of sigma_z per spin, spin 1 on bit 0.
_Z1 = np.array([1.0, -1.0, 1.0, -1.0])
_Z2 = np.array([1.0, 1.0, -1.0, -1.0])


def _h0_diagonal(sys: SpinSystem, frame: str) -> np.ndarray:
    if frame not in FRAMES:
        raise ValueError(f"frame must be one of {FRAMES}, got {frame!r}")
    a1, a2 = (sys.Omega1, sys.Omega2) if frame == "lab" else (sys.omega1, sys.omega2)
    return -(linalg.HBAR / 2.0) * (a1 * _Z1 + a2 * _Z2 + sys.omegac * _Z1 * _Z2)


def static_hamiltonian(sys: SpinSystem, frame: str = "lab") -> np.ndarray:
    """Diagonal 4x4 static Hamiltonian; ``frame="rotating"`` drops omega0."""
    return np.diag(_h0_diagonal(sys, frame)).astype(complex)


_LINE_PAIRS = (
    # (from index, to index, flipped spin, spectator sign)
    (0, 1, 1, "+"),
    (2, 3, 1, "-"),
    (0, 2, 2, "+"),
    (1, 3, 2, "-"),
)


def transition_spectrum(sys: SpinSystem) -> list[TransitionLine]:
    """The four single-spin lines, sorted by frequency.

    Transitions flipping both spins at once are left out; they are not
    driven by a transverse field at first order.
    """
    energies = _h0_diagonal(sys, "lab")
    lines = [
        TransitionLine(
            frequency=float((energies[hi] - energies[lo]) / linalg.HBAR),
            from_label=StateLabel(2, lo),
            to_label=StateLabel(2, hi),
            flipped_spin=spin,
            spectator=spectator,
        )
        for lo, hi, spin, spectator in _LINE_PAIRS
    ]
    return sorted(lines, key=lambda line: line.frequency)


def find_line(sys: SpinSystem, flipped_spin: int, spectator: str) -> TransitionLine:
    """The unique line that flips one spin while the other sits in ``spectator``."""
    for line in transition_spectrum(sys):
        if line.flipped_spin == flipped_spin and line.spectator == spectator:
            return line
    raise ValueError(f"no line flips spin {flipped_spin} with spectator {spectator!r}")


def compile_rotation(
    sys: SpinSystem,
    spin: int,
    axis_phase: float,
    theta: float,
    omega_p: float | None = None,
    bandwidth: float | None = None,
    purpose: str = "",
) -> Pulse:
    """Pulse for a transverse rotation of one spin by half-angle ``theta``.

    The carrier sits on the spin's doublet center and the duration obeys
    ``tau = 2 theta / omega_p``.  The bandwidth must cover the doublet
    while excluding the other spin's lines (condition 1); callers may
    pin either ``omega_p`` or ``bandwidth``, otherwise the bandwidth is
    placed at the geometric mean of the feasibility window.
    """
    theta = float(theta)
    if not (math.isfinite(theta) and 0.0 < theta <= 2.0 * math.pi):
        raise ValueError(f"theta must lie in (0, 2*pi], got {theta!r}")
    if omega_p is not None and bandwidth is not None:
        raise ValueError("pin at most one of omega_p and bandwidth")
    lower = sys.omegac
    upper = sys.omega1 - sys.omega2 - sys.omegac
    if upper <= lower:
        raise FeasibilityError(
            "condition 1: rotation window is empty, need omega1 - omega2 > 2 * omegac"
        )
    if omega_p is not None:
        tau = 2.0 * theta / float(omega_p)
        dw = sys.kappa / tau
    else:
        dw = math.sqrt(lower * upper) if bandwidth is None else float(bandwidth)
        tau = sys.kappa / dw
    if dw <= lower:
        raise FeasibilityError(
            f"condition 1: bandwidth {dw!r} must exceed omegac = {lower!r} "
            "to cover both lines of the target doublet"
        )
    if dw >= upper:
        raise FeasibilityError(
            f"condition 1: bandwidth {dw!r} must stay below omega1 - omega2 - omegac "
            f"= {upper!r} to spare the other spin's lines"
        )
    return Pulse(
        carrier=sys.larmor(spin),
        omega_p=2.0 * theta / tau,
        tau=tau,
        phase=float(axis_phase),
        purpose=purpose,
    )


def compile_cnot(
    sys: SpinSystem,
    target: int,
    control: int,
    condition: str,
    tau: float | None = None,
    purpose: str = "",
) -> Pulse:
    """Half-turn pulse on the single line selected by the control condition.

    The carrier is the transition that flips ``target`` while
    ``control`` sits in ``condition``; ``omega_p tau / 2 = pi / 2``.
    Selectivity demands a bandwidth below the doublet splitting
    (condition 2).
    """
    if {target, control} != {1, 2}:
        raise ValueError("pulse-level conditional flips act on spins {1, 2}")
    if condition not in ("plus", "minus"):
        raise ValueError(f"condition must be 'plus' or 'minus', got {condition!r}")
    limit = 2.0 * sys.omegac
    if tau is None:
        tau = sys.kappa / (limit * CNOT_BANDWIDTH_FRACTION)
    tau = float(tau)
    dw = sys.kappa / tau
    if dw >= limit:
        raise FeasibilityError(
            f"condition 2: bandwidth {dw!r} must stay below 2 * omegac = {limit!r} "
            "to address a single line of the doublet"
        )
    line = find_line(sys, target, "-" if condition == "minus" else "+")
    return Pulse(
        carrier=line.frequency,
        omega_p=math.pi / tau,
        tau=tau,
        phase=0.0,
        purpose=purpose,
    )


def _single_spin_diag(sys: SpinSystem, frame: str) -> np.ndarray:
    # the one-spin register is spin 1 of the system by convention
    omega = sys.Omega1 if frame == "lab" else sys.omega1
    return -(linalg.HBAR / 2.0) * omega * np.array([1.0, -1.0])


def evolve_free(sys: SpinSystem, state: QuantumState, t: float, frame: str) -> QuantumState:
    """Evolve under the static Hamiltonian alone for time ``t`` >= 0.

    In the rotating frame a single spin picks up exactly the diagonal
    phases of a z rotation by ``omega1 t / 2``; the two-spin register
    additionally carries the coupling phases.
    """
    if frame not in FRAMES:
        raise ValueError(f"frame must be one of {FRAMES}, got {frame!r}")
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise ValueError(f"evolution time must be non-negative, got {t!r}")
    if state.n == 1:
        diag = _single_spin_diag(sys, frame)
    elif state.n == 2:
        diag = _h0_diagonal(sys, frame)
    else:
        raise ValueError("the pulse layer handles one- and two-spin registers only")
    phases = np.exp(-1j * diag * (t / linalg.HBAR))
    return QuantumState(state.n, phases * state.amplitudes)


def rotating_frame_map(sys: SpinSystem, n: int, t: float) -> np.ndarray:
    """Diagonal unitary taking a lab-frame state into the rotating frame at time ``t``."""
    if n == 1:
        z_total = np.array([1.0, -1.0])
    elif n == 2:
        z_total = _Z1 + _Z2
    else:
        raise ValueError("the pulse layer handles one- and two-spin registers only")
    return np.diag(np.exp(-0.5j * sys.omega0 * t * z_total)).astype(complex)


def _drive_setup(sys: SpinSystem, pulse: Pulse, scope: str):
    """Rotating-frame pieces: static diagonal, drive-phase generator, static drive."""
    if scope == "single-spin-ideal":
        # treat the driven spin as isolated: the textbook one-spin model
        spin = 1 if abs(sys.Omega1 - pulse.carrier) <= abs(sys.Omega2 - pulse.carrier) else 2
        h0 = -(linalg.HBAR / 2.0) * sys.spin_offset(spin) * np.array([1.0, -1.0])
        z_total = np.array([1.0, -1.0])
        drive0 = -(linalg.HBAR * pulse.omega_p / 2.0) * SIGMA_X
    elif scope == "both-spins":
        h0 = _h0_diagonal(sys, "rotating")
        z_total = _Z1 + _Z2
        x1 = linalg.kron(SIGMA_X, I2)
        x2 = linalg.kron(I2, SIGMA_X)
        drive0 = -(linalg.HBAR * pulse.omega_p / 2.0) * (x1 + x2)
    else:
        raise ValueError(f"drive scope must be one of {DRIVE_SCOPES}, got {scope!r}")
    return h0, z_total, drive0


def _midpoint_product(h0, z_total, drive0, detuning, phase, tau, steps) -> np.ndarray:
    """Exponential-midpoint propagator over ``steps`` equal steps.

    The drive at phase angle a is D(a)† drive0 D(a) with the diagonal
    D(a) = exp(-i a z_total / 2), and D commutes with the static part,
    so every step unitary is D(a_j)† E D(a_j) for one fixed
    E = exp(-i dt (H0 + drive0)).  Midpoint phases advance by the same
    increment each step, which telescopes the product into a matrix
    power: U = D(a_N)† (E D(delta))^(N-1) E D(a_1).
    """
    dt = tau / steps
    energy = np.diag(h0).astype(complex) + drive0
    e_step = linalg.expm_hermitian(energy, dt)

    def d_phases(angle):
        return np.exp(-0.5j * angle * z_total)

    first = phase + 0.5 * detuning * dt
    last = phase + (steps - 0.5) * detuning * dt
    m = e_step * d_phases(detuning * dt)[None, :]
    core = np.linalg.matrix_power(m, steps - 1)
    u = core @ (e_step * d_phases(first)[None, :])
    return d_phases(last).conj()[:, None] * u


def pulse_propagator(sys: SpinSystem, pulse: Pulse, scope: str) -> np.ndarray:
    """Converged propagator of one pulse, in the interaction picture.

    Integrates in the rotating frame with the drive at its detuned
    carrier, then strips the static-Hamiltonian phases, so the returned
    unitary is the pulse's action relative to free evolution.  The step
    count doubles until two refinements agree to ``CONVERGENCE_TOL``.
    """
    h0, z_total, drive0 = _drive_setup(sys, pulse, scope)
    detuning = pulse.carrier - sys.omega0
    interaction = np.exp(1j * h0 * (pulse.tau / linalg.HBAR))

    previous = None
    steps = LADDER_START
    while steps <= LADDER_MAX_STEPS:
        u_rot = _midpoint_product(h0, z_total, drive0, detuning, pulse.phase, pulse.tau, steps)
        current = interaction[:, None] * u_rot
        if previous is not None and linalg.max_abs(current - previous) < CONVERGENCE_TOL:
            return current
        previous = current
        steps *= 2
    raise IntegrationError(
        f"midpoint refinement did not converge within {LADDER_MAX_STEPS} steps "
        "(step-size underflow; check the pulse parameters)"
    )


def evolve_pulse(sys: SpinSystem, state: QuantumState, pulse: Pulse, scope: str) -> QuantumState:
    """Apply one pulse to a state; see :func:`pulse_propagator` for framing."""
    if scope == "single-spin-ideal" and state.n != 1:
        raise ValueError("single-spin-ideal scope drives a one-spin register")
    if scope == "both-spins" and state.n != 2:
        raise ValueError("both-spins scope drives the two-spin register")
    return apply_unitary(state, pulse_propagator(sys, pulse, scope))


def gate_fidelity(u_sim: np.ndarray, u_ideal: np.ndarray) -> float:
    """Global-phase-insensitive overlap |Tr(u_ideal† u_sim)| / d of two unitaries."""
    u_sim = np.asarray(u_sim, dtype=complex)
    u_ideal = np.asarray(u_ideal, dtype=complex)
    if u_sim.shape != u_ideal.shape:
        raise ValueError(f"dimension mismatch: {u_sim.shape} vs {u_ideal.shape}")
    for u in (u_sim, u_ideal):
        if not linalg.is_unitary(u, tol=1e-6):
            raise ValueError("gate fidelity is defined for unitaries")
    d = u_sim.shape[0]
    return float(abs(np.trace(u_ideal.conj().T @ u_sim)) / d)


CONFIG_KEYS = ("omega0", "omega1", "omega2", "omegac")


def parse_system_config(text: str) -> SpinSystem:
    """Parse ``key=value`` lines (keys omega0..omegac, optional kappa)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in CONFIG_KEYS + ("kappa",):
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(value.strip())
        except ValueError:
            raise ConfigError(f"line {lineno}: {value.strip()!r} is not a number") from None
    missing = [k for k in CONFIG_KEYS if k not in values]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")
    return SpinSystem(**values)


def load_system_config(path) -> SpinSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system_config(fh.read())


def format_schedule(pulses) -> str:
    """One line per pulse in the interchange format."""
    lines = [
        f"carrier={format_number(p.carrier)} omega_p={format_number(p.omega_p)} "
        f"tau={format_number(p.tau)} phase={format_number(p.phase)} "
        f"purpose={p.purpose or 'pulse'}"
        for p in pulses
    ]
    return "\n".join(lines)

