"""Plane-wave scattering off a potential step in 1+1 dimensions.

A particle of energy E and mass m0 (natural units, hbar = c = 1) hits a
step of height V0 from the left.  The coupling decides how the step
enters the Dirac equation:

  vector        V added to the energy        (coupling matrix I)
  scalar        V added to the mass          (coupling matrix sigma_z)
  pseudoscalar  off-diagonal sigma_y channel (no closed form here; the
                dynamics module treats it numerically)

The closed-form solution is expressed through two kinematic factors,
the lower/upper spinor-component ratios on each side of the step:

    a = sqrt(E^2 - m0^2) / (E + m0)
    b = sqrt((E-V0)^2 - m0^2) / (E - V0 + m0)        (vector)
    b = sqrt(E^2 - (m0+V0)^2) / (E + m0 + V0)        (scalar)

with the principal square root throughout: a negative radicand gives
+i*sqrt(|.|) (the decaying evanescent branch).  Matching the spinor at
the step yields the amplitudes

    R = (a - b) / (a + b),   T = 2a / (a + b),   1 + R = T,

and the measurable flux ratios (coefficients)

    r = |R|^2,   t = Re(b)/a * |T|^2,

which satisfy r + t = 1 whenever the transmitted wave carries flux.

Sign conventions are deliberate.  For V0 > E + m0 (vector coupling) the
radicand is positive but the denominator is negative, so b < 0: the
transmitted wave propagates with inverted kinematics, its group velocity
pointing away from the step.  This is the Klein zone, where r > 1 and
t < 0.  Flipping the root sign would erase the effect.  Under scalar
coupling the substitution m0 -> m0 + V0 can never make b negative, so
the Klein zone does not exist there.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable

import numpy as np

from .algebra import PAULI_Y, PAULI_Z


class Coupling(str, Enum):
    """Lorentz channel of the step potential."""

    VECTOR = "vector"
    SCALAR = "scalar"
    PSEUDOSCALAR = "pseudoscalar"

    @property
    def matrix(self) -> np.ndarray:
        """2x2 coupling matrix multiplying V(x) in the Hamiltonian."""
        return _COUPLING_MATRICES[self]


_IDENTITY2 = np.eye(2, dtype=complex)
_IDENTITY2.setflags(write=False)
_COUPLING_MATRICES = {
    Coupling.VECTOR: _IDENTITY2,
    Coupling.SCALAR: PAULI_Z,
    Coupling.PSEUDOSCALAR: PAULI_Y,
}


class Regime(str, Enum):
    TRANSMISSION = "transmission"
    EVANESCENT = "evanescent"
    KLEIN_ZONE = "klein_zone"


class SingularConfigurationError(ValueError):
    """Raised at isolated degenerate parameter points (0/0 kinematics)."""


@dataclass(frozen=True)
class ScatteringQuery:
    """One plane-wave scattering problem.

    The incident wave must propagate, so E > m0 > 0 is required.  V0 may
    have either sign.
    """

    E: float
    V0: float
    m0: float = 1.0
    coupling: Coupling = Coupling.VECTOR

    def __post_init__(self):
        object.__setattr__(self, "coupling", Coupling(self.coupling))
        if not self.m0 > 0:
            raise ValueError(f"m0 must be positive, got {self.m0}")
        if not self.E > self.m0:
            raise ValueError(
                f"incident wave below threshold: need E > m0, got E={self.E}, m0={self.m0}"
            )


@dataclass(frozen=True)
class ScatteringResult:
    """Kinematic factors, amplitudes, coefficients and regime for one query."""

    a: float
    b: complex
    R: complex
    T: complex
    r: float
    t: float
    regime: Regime


def incident_factor(E: float, m0: float) -> float:
    """Incident-side kinematic factor a = sqrt(E^2 - m0^2)/(E + m0).

    Equals sqrt((E - m0)/(E + m0)); lies in [0, 1).  Requires E >= m0 > 0
    (E = m0 is the threshold, a = 0).
    """
    if not m0 > 0:
        raise ValueError(f"m0 must be positive, got {m0}")
    if E < m0:
        raise ValueError(f"incident wave below threshold: E={E} < m0={m0}")
    return math.sqrt(E * E - m0 * m0) / (E + m0)


def _step_factor(omega: float, mass: float) -> complex:
    """Principal-root kinematic factor sqrt(omega^2 - mass^2)/(omega + mass).

    Both branches (vector and scalar) reduce to this with the appropriate
    (omega, mass) pair, which makes the scalar substitution m0 -> m0 + V0
    literally the same code path.
    """
    radicand = omega * omega - mass * mass
    denominator = omega + mass
    if denominator == 0.0:
        # omega == -mass exactly, so the radicand is exactly zero too:
        # a 0/0 point where the closed form is undefined.
        raise SingularConfigurationError(
            f"degenerate kinematics: omega + mass = 0 at omega={omega}, mass={mass} "
            "(transmitted factor is a 0/0 limit here)"
        )
    if radicand >= 0.0:
        return complex(math.sqrt(radicand) / denominator, 0.0)
    return complex(0.0, math.sqrt(-radicand) / denominator)


def transmitted_factor(E: float, V0: float, m0: float, coupling: Coupling) -> complex:
    """Transmitted-side kinematic factor b.

    Vector:  b = sqrt((E-V0)^2 - m0^2) / (E - V0 + m0)
    Scalar:  b = sqrt(E^2 - (m0+V0)^2) / (E + m0 + V0)

    Principal square root: negative radicand -> +i*sqrt(|.|), the decaying
    evanescent branch.  In the vector Klein zone (V0 > E + m0) the radicand
    is positive and the denominator negative, so b < 0.
    """
    if not m0 > 0:
        raise ValueError(f"m0 must be positive, got {m0}")
    if not E > m0:
        raise ValueError(f"incident wave below threshold: E={E}, m0={m0}")
    coupling = Coupling(coupling)
    if coupling is Coupling.VECTOR:
        return _step_factor(E - V0, m0)
    if coupling is Coupling.SCALAR:
        return _step_factor(E, m0 + V0)
    raise ValueError(
        "pseudoscalar coupling has no closed-form step solution; "
        "use the dynamics module"
    )


def coefficients(a: float, b: complex, R: complex, T: complex) -> tuple[float, float]:
    """Flux-ratio coefficients (r, t) from amplitudes.

    r = |R|^2 and t = Re(b)/a * |T|^2, the reflected and transmitted
    probability currents normalized to the incident one (the spinor
    convention behind a and b is (1, a)-type, giving current 2k/(E+m0)
    per unit density: the density factors cancel in the ratios and only
    Re(b)/a survives in t).  For real b the identity
    (a-b)^2 + 4ab = (a+b)^2 makes r + t = 1 exact; for purely imaginary b
    (evanescent) t = 0 and r = 1.
    """
    if not a > 0:
        raise ValueError(f"incident factor must be positive, got a={a}")
    r = R.real * R.real + R.imag * R.imag
    t = (b.real / a) * (T.real * T.real + T.imag * T.imag)
    return r, t


def classify_regime(q: ScatteringQuery) -> Regime:
    """Transmission / evanescent / Klein-zone classification.

    Vector: Transmission iff E - V0 > m0; KleinZone iff V0 > E + m0;
    Evanescent otherwise (boundaries included).  Scalar: Transmission iff
    E > |m0 + V0|, Evanescent otherwise; no Klein zone exists.  The test
    uses the same radicand/denominator arithmetic as transmitted_factor,
    so the label always agrees with the branch b actually took.
    """
    if q.coupling is Coupling.VECTOR:
        omega, mass = q.E - q.V0, q.m0
    elif q.coupling is Coupling.SCALAR:
        omega, mass = q.E, q.m0 + q.V0
    else:
        raise ValueError("pseudoscalar coupling has no closed-form regime")
    radicand = omega * omega - mass * mass
    if radicand > 0.0:
        return Regime.TRANSMISSION if omega + mass > 0.0 else Regime.KLEIN_ZONE
    return Regime.EVANESCENT


def amplitudes(q: ScatteringQuery) -> ScatteringResult:
    """Solve one query: factors, amplitudes R and T, coefficients, regime.

    R = (a - b)/(a + b), T = 2a/(a + b); the continuity identity 1 + R = T
    holds by construction.  Raises SingularConfigurationError at the
    isolated degenerate points where a + b = 0 or b is a 0/0 limit.
    """
    if q.coupling is Coupling.PSEUDOSCALAR:
        raise ValueError(
            "pseudoscalar coupling has no closed-form step solution; "
            "use the dynamics module"
        )
    a = incident_factor(q.E, q.m0)
    b = transmitted_factor(q.E, q.V0, q.m0, q.coupling)
    if a + b == 0:
        raise SingularConfigurationError(
            f"a + b = 0 at E={q.E}, V0={q.V0}, m0={q.m0}: amplitudes diverge"
        )
    R = (a - b) / (a + b)
    T = 2 * a / (a + b)
    r, t = coefficients(a, b, R, T)
    return ScatteringResult(a=a, b=b, R=R, T=T, r=r, t=t, regime=classify_regime(q))


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a parameter sweep.

    Exactly one of result/error is set: invalid or degenerate points are
    carried as error rows instead of being dropped, so row order always
    matches grid order.
    """

    E: float
    V0: float
    m0: float
    coupling: Coupling
    result: ScatteringResult | None = None
    error: str | None = None


SWEEP_AXES = ("E", "V0", "m0")


def sweep(
    base: ScatteringQuery, axis: str, start: float, stop: float, steps: int
) -> list[SweepRow]:
    """Evaluate amplitudes() along a uniform inclusive grid of one axis."""
    if axis not in SWEEP_AXES:
        raise ValueError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    if not start < stop:
        raise ValueError(f"need start < stop, got {start} .. {stop}")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    if base.coupling is Coupling.PSEUDOSCALAR:
        raise ValueError("pseudoscalar coupling cannot be swept in closed form")
    rows = []
    for value in np.linspace(start, stop, steps):
        params = {"E": base.E, "V0": base.V0, "m0": base.m0}
        params[axis] = float(value)
        try:
            q = ScatteringQuery(coupling=base.coupling, **params)
            rows.append(SweepRow(**params, coupling=base.coupling, result=amplitudes(q)))
        except ValueError as exc:  # includes SingularConfigurationError
            rows.append(SweepRow(**params, coupling=base.coupling, error=str(exc)))
    return rows


CSV_HEADER = "E,V0,m0,coupling,a,re_b,im_b,re_R,im_R,re_T,im_T,r,t,regime"


def _fmt(x: float) -> str:
    # 17 significant digits: exact round trip for IEEE doubles.
    return format(x, ".17g")


def result_to_csv_row(row: SweepRow) -> str:
    head = f"{_fmt(row.E)},{_fmt(row.V0)},{_fmt(row.m0)},{row.coupling.value}"
    res = row.result
    if res is None:
        return head + "," * 9 + ",error"
    fields = (res.a, res.b.real, res.b.imag, res.R.real, res.R.imag,
              res.T.real, res.T.imag, res.r, res.t)
    return head + "," + ",".join(_fmt(v) for v in fields) + "," + res.regime.value


def sweep_to_csv(rows: Iterable[SweepRow], stream: IO[str]) -> None:
    """Write sweep rows in the documented CSV schema.

    Error rows keep their grid coordinates, leave the numeric fields
    empty, and carry "error" in the regime column.
    """
    stream.write(CSV_HEADER + "\n")
    for row in rows:
        stream.write(result_to_csv_row(row) + "\n")


def query_result_row(q: ScatteringQuery, res: ScatteringResult) -> SweepRow:
    """Package a single solved query in sweep-row form (for CSV output)."""
    return SweepRow(E=q.E, V0=q.V0, m0=q.m0, coupling=q.coupling, result=res)
