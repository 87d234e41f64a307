"""Integration of Ricci, +-XCF and RG-2 flows on Milnor metrics.

Every flow tensor is diagonal in a Milnor frame, so the flow reduces to
three ODEs for ``(A, B, C)``:

    Ricci:  dg/dt = -2 Rc
    XCF+-:  dg/dt = +-2 H
    RG-2:   dg/dt = -2 Rc - (alpha/2) Rm^2

Soliton trajectories are compared against the self-similar solution
``g_ii(t) = c(t) exp(d_i s(t)) g_ii(0)`` with ``dc/dt = kappa c^q``,
``c(0) = 1`` and ``ds/dt = c^(q-1)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .algebra import DiagOperator, MilnorMetric
from .curvature import cross_curvature, rg2_tensor, ricci
from .errors import DomainError, SingularTimeError
from .soliton import SolitonCertificate, TensorTag, Verdict

__all__ = [
    "FlowTag",
    "FlowKind",
    "Method",
    "IntegratorControls",
    "Termination",
    "Trajectory",
    "SelfSimilarModel",
    "flow_rhs",
    "integrate",
    "scaling_profile",
    "profile_time",
    "self_similar_predict",
    "model_from_certificate",
    "verify_self_similarity",
]


class FlowTag(enum.Enum):
    RICCI = "ricci"
    XCF_PLUS = "xcf+"
    XCF_MINUS = "xcf-"
    RG2 = "rg2"


@dataclass(frozen=True)
class FlowKind:
    tag: FlowTag
    alpha: float = 0.0

    @classmethod
    def parse(cls, name: str, alpha: float | None = None) -> "FlowKind":
        key = name.strip().lower()
        tags = {"ricci": FlowTag.RICCI, "xcf+": FlowTag.XCF_PLUS, "xcf-": FlowTag.XCF_MINUS,
                "rg2": FlowTag.RG2}
        if key not in tags:
            raise DomainError(f"unknown flow {name!r}")
        if tags[key] is FlowTag.RG2:
            if alpha is None:
                raise DomainError("the rg2 flow needs a coupling alpha")
            return cls(FlowTag.RG2, float(alpha))
        return cls(tags[key])

    @property
    def degree(self) -> float | None:
        """Scaling degree q of the flow tensor; None when it is not homogeneous."""
        if self.tag is FlowTag.RICCI:
            return 0.0
        if self.tag is FlowTag.RG2:
            return 0.0 if self.alpha == 0.0 else None
        return -1.0


class Method(enum.Enum):
    RK4 = "rk4"
    RK45 = "rk45"


@dataclass(frozen=True)
class IntegratorControls:
    method: Method = Method.RK45
    step: float = 1e-3
    rtol: float = 1e-10
    atol: float = 1e-12
    t_end: float = 1.0
    blowup_ceiling: float = 1e8
    collapse_floor: float = 1e-8

    def __post_init__(self):
        if isinstance(self.method, str):
            object.__setattr__(self, "method", Method(self.method.lower()))
        if not (self.step > 0 and self.rtol > 0 and self.atol > 0):
            raise DomainError("step and tolerances must be positive")
        if not self.t_end > 0:
            raise DomainError(f"t_end must be positive, got {self.t_end}")
        if not 0 < self.collapse_floor < self.blowup_ceiling:
            raise DomainError("need 0 < collapse_floor < blowup_ceiling")


class Termination(enum.Enum):
    REACHED_T_END = "reached_t_end"
    COMPONENT_COLLAPSE = "component_collapse"
    COMPONENT_BLOWUP = "component_blowup"
    STEP_FAILURE = "step_failure"


@dataclass(frozen=True)
class Trajectory:
    """Samples ``(t, A, B, C)`` as rows of an ``(n, 4)`` array."""

    samples: np.ndarray
    termination: Termination

    @property
    def t(self) -> np.ndarray:
        return self.samples[:, 0]

    @property
    def components(self) -> np.ndarray:
        return self.samples[:, 1:]


def flow_rhs(kind: FlowKind, metric: MilnorMetric) -> tuple[float, float, float]:
    if kind.tag is FlowTag.RICCI:
        return tuple(-2.0 * r for r in ricci(metric).entries)
    if kind.tag is FlowTag.RG2:
        return rg2_tensor(metric, kind.alpha).entries
    h = cross_curvature(metric).entries
    sign = 2.0 if kind.tag is FlowTag.XCF_PLUS else -2.0
    return tuple(sign * x for x in h)


def _rhs_array(kind, group):
    def f(t, y):
        if not (np.all(np.isfinite(y)) and np.all(y > 0)):
            return np.full(3, np.nan)
        return np.array(flow_rhs(kind, MilnorMetric(group, tuple(y))))

    return f


def _check_bounds(y, controls) -> Termination | None:
    if np.min(y) <= controls.collapse_floor:
        return Termination.COMPONENT_COLLAPSE
    if np.max(y) >= controls.blowup_ceiling:
        return Termination.COMPONENT_BLOWUP
    return None


def integrate(
    kind: FlowKind,
    g0: MilnorMetric,
    controls: IntegratorControls | None = None,
    sample_dt: float | None = None,
) -> Trajectory:
    """Integrate the reduced flow from ``g0`` up to ``controls.t_end``.

    Adaptive runs record every accepted step, or the points of a uniform
    ``sample_dt`` grid when one is given.  Early termination (collapse below
    the floor, growth past the ceiling, step-size failure) is reported in
    :attr:`Trajectory.termination` rather than raised.
    """
    controls = controls or IntegratorControls()
    y0 = np.array(g0.components, dtype=float)
    if not controls.collapse_floor < y0.min() <= y0.max() < controls.blowup_ceiling:
        raise DomainError("initial components must lie strictly between collapse_floor and blowup_ceiling")
    if sample_dt is not None and not sample_dt > 0:
        raise DomainError(f"sample interval must be positive, got {sample_dt}")
    f = _rhs_array(kind, g0.group)
    if controls.method is Method.RK4:
        return _integrate_rk4(f, y0, controls, sample_dt)
    return _integrate_rk45(f, y0, controls, sample_dt)


def _sample_times(t_end, sample_dt):
    n = int(math.floor(t_end / sample_dt + 1e-9))
    ts = [i * sample_dt for i in range(n + 1)]
    if t_end - ts[-1] > 1e-12 * t_end:
        ts.append(t_end)
    return np.array(ts)


def _integrate_rk45(f, y0, controls, sample_dt):
    def collapse(t, y):
        return np.min(y) - controls.collapse_floor

    def blowup(t, y):
        return controls.blowup_ceiling - np.max(y)

    collapse.terminal = blowup.terminal = True
    collapse.direction = blowup.direction = -1

    t_eval = None if sample_dt is None else _sample_times(controls.t_end, sample_dt)
    sol = solve_ivp(
        f, (0.0, controls.t_end), y0, method="RK45", t_eval=t_eval, events=(collapse, blowup),
        rtol=controls.rtol, atol=controls.atol, first_step=controls.step,
    )
    samples = np.column_stack([sol.t, sol.y.T])
    if sol.status == 1:
        # append the event state so the reason is visible in the samples
        if len(sol.t_events[0]):
            reason, te, ye = Termination.COMPONENT_COLLAPSE, sol.t_events[0][0], sol.y_events[0][0]
        else:
            reason, te, ye = Termination.COMPONENT_BLOWUP, sol.t_events[1][0], sol.y_events[1][0]
        if te > samples[-1, 0]:
            samples = np.vstack([samples, np.concatenate([[te], ye])])
        return Trajectory(samples, reason)
    if sol.status != 0:
        good = np.all(np.isfinite(samples[:, 1:]), axis=1) & np.all(samples[:, 1:] > 0, axis=1)
        return Trajectory(samples[good], Termination.STEP_FAILURE)
    return Trajectory(samples, Termination.REACHED_T_END)


def _rk4_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _integrate_rk4(f, y0, controls, sample_dt):
    h = controls.step
    n = max(1, int(round(controls.t_end / h)))
    h = controls.t_end / n
    every = 1 if sample_dt is None else max(1, int(round(sample_dt / h)))
    rows = [np.concatenate([[0.0], y0])]
    y = y0
    for i in range(1, n + 1):
        y = _rk4_step(f, (i - 1) * h, y, h)
        t = i * h
        if not (np.all(np.isfinite(y)) and np.all(y > 0)):
            return Trajectory(np.array(rows), Termination.STEP_FAILURE)
        reason = _check_bounds(y, controls)
        if reason is not None or i % every == 0 or i == n:
            rows.append(np.concatenate([[t], y]))
        if reason is not None:
            return Trajectory(np.array(rows), reason)
    return Trajectory(np.array(rows), Termination.REACHED_T_END)


def scaling_profile(kappa: float, q: float, t: float) -> float:
    """Solution of ``dc/dt = kappa c^q``, ``c(0) = 1``."""
    if kappa == 0.0:
        return 1.0
    if q == 1.0:
        return math.exp(kappa * t)
    base = 1.0 + (1.0 - q) * kappa * t
    if base <= 0.0:
        t_star = -1.0 / ((1.0 - q) * kappa)
        raise SingularTimeError(f"scaling profile is singular at t* = {t_star!r}", t_star)
    return base ** (1.0 / (1.0 - q))


def profile_time(kappa: float, q: float, t: float) -> float:
    """``s(t) = integral_0^t c(u)^(q-1) du``.

    Closed form for every q: ``c^(q-1) = 1 / (1 + (1-q) kappa u)``, so
    ``s = log(1 + (1-q) kappa t) / ((1-q) kappa)``.
    """
    if kappa == 0.0 or q == 1.0:
        return t
    x = (1.0 - q) * kappa * t
    if 1.0 + x <= 0.0:
        t_star = -1.0 / ((1.0 - q) * kappa)
        raise SingularTimeError(f"scaling profile is singular at t* = {t_star!r}", t_star)
    # t * log1p(x) / x stays accurate when x underflows
    return t if x == 0.0 else t * (math.log1p(x) / x)


@dataclass(frozen=True)
class SelfSimilarModel:
    kappa: float
    q: float
    derivation: DiagOperator
    base: MilnorMetric


def self_similar_predict(model: SelfSimilarModel, t: float) -> MilnorMetric:
    c = scaling_profile(model.kappa, model.q, t)
    s = profile_time(model.kappa, model.q, t)
    comps = tuple(
        c * math.exp(d * s) * g for d, g in zip(model.derivation.entries, model.base.components)
    )
    return MilnorMetric(model.base.group, comps)


_MATCHING = {
    FlowTag.XCF_PLUS: TensorTag.XCF_PLUS_H,
    FlowTag.XCF_MINUS: TensorTag.XCF_MINUS_H,
    FlowTag.RG2: TensorTag.RG2_STEADY,
    FlowTag.RICCI: TensorTag.RICCI,
}


def model_from_certificate(
    kind: FlowKind, certificate: SolitonCertificate, g0: MilnorMetric
) -> SelfSimilarModel:
    """Self-similar model for a certified soliton under the flow ``kind``.

    XCF is classified with ``+-H`` but flows by ``+-2H``, so kappa and D are
    doubled here; the other kinds use the flow tensor itself.
    """
    if certificate.verdict is Verdict.NONE:
        raise DomainError("certificate does not certify a soliton")
    if _MATCHING[kind.tag] is not certificate.kind.tag:
        raise DomainError(f"certificate for {certificate.kind.label} does not match flow {kind.tag.value}")
    if kind.tag is FlowTag.RG2 and certificate.kind.alpha != kind.alpha:
        raise DomainError("certificate and flow use different couplings")
    factor = 2.0 if kind.tag in (FlowTag.XCF_PLUS, FlowTag.XCF_MINUS) else 1.0
    kappa = factor * certificate.kappa
    q = kind.degree
    if q is None:
        if kappa != 0.0:
            raise DomainError("only steady solitons of a non-homogeneous flow are self-similar")
        q = 0.0
    return SelfSimilarModel(kappa, q, certificate.derivation.scaled(factor), g0)


def verify_self_similarity(
    kind: FlowKind,
    certificate: SolitonCertificate,
    g0: MilnorMetric,
    horizon: float,
    controls: IntegratorControls | None = None,
) -> float:
    """Max relative component deviation between the integrated flow and the self-similar model.

    Returns ``inf`` when the integration stops before ``horizon`` or the
    model is singular inside it.
    """
    model = model_from_certificate(kind, certificate, g0)
    base = controls or IntegratorControls()
    controls = IntegratorControls(
        method=base.method, step=base.step, rtol=base.rtol, atol=base.atol, t_end=horizon,
        blowup_ceiling=base.blowup_ceiling, collapse_floor=base.collapse_floor,
    )
    traj = integrate(kind, g0, controls)
    if traj.termination is not Termination.REACHED_T_END:
        return math.inf
    worst = 0.0
    for t, *comps in traj.samples:
        try:
            pred = self_similar_predict(model, t).components
        except SingularTimeError:
            return math.inf
        for x, p in zip(comps, pred):
            worst = max(worst, abs(x - p) / abs(p))
    return worst
