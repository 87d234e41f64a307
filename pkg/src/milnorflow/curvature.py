"""Curvature of left-invariant metrics in a Milnor frame.

Everything here is diagonal in the Milnor frame and follows from the three
principal sectional curvatures ``K_l = K(e_m ^ e_n)``.  Two formulas differ
from a literal transcription of the standard tables on purpose:

* the third rescaled structure constant is ``sqrt(C/(AB)) * l3`` (the
  symmetric form; ``sqrt(A/(BC))`` does not reproduce the E(1,1) curvatures);
* the third entry of Rm^2 is ``2C(K1^2 + K2^2)``, consistent with the RG-2
  identity ``RG = -2 Rc - (alpha/2) Rm^2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import GroupKind, MilnorMetric, structure_of
from .errors import DomainError, SingularEinsteinError, VarianceError

__all__ = [
    "Variance",
    "DiagTensor",
    "CurvatureReport",
    "EINSTEIN_SINGULAR_RTOL",
    "tilde_constants",
    "connection_coefficients",
    "sectional_curvatures",
    "ricci",
    "scalar_curvature",
    "ricci_signature",
    "rm_squared",
    "cross_curvature",
    "cross_curvature_via_einstein",
    "rg2_tensor",
    "raise_index",
    "scale_metric",
    "curvature_report",
    "dimensionless_curvature",
]

EINSTEIN_SINGULAR_RTOL = 1e-12

# Ricci signatures allowed by Milnor's classification, sorted descending
ADMISSIBLE_RICCI_SIGNATURES = {
    GroupKind.SL2TILDE: {("+", "-", "-"), ("0", "0", "-")},
    GroupKind.SU2: {("+", "+", "+"), ("+", "0", "0"), ("+", "-", "-")},
}


class Variance(enum.Enum):
    COVARIANT = "covariant02"
    OPERATOR = "operator11"


@dataclass(frozen=True)
class DiagTensor:
    entries: tuple[float, float, float]
    variance: Variance = Variance.COVARIANT

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(float(x) for x in self.entries))

    def component(self, i: int) -> float:
        return self.entries[i - 1]


@dataclass(frozen=True)
class CurvatureReport:
    metric: MilnorMetric
    tildes: tuple[float, float, float]
    mus: tuple[float, float, float]
    sectional: tuple[float, float, float]
    ricci: DiagTensor
    scalar: float
    rm2: DiagTensor
    cross: DiagTensor
    alpha: float | None = None
    rg2: DiagTensor | None = None


def tilde_constants(metric: MilnorMetric):
    """Rescaled structure constants and connection coefficients ``(lt, mt)``."""
    A, B, C = metric.components
    l1, l2, l3 = structure_of(metric.group).lambdas
    lt = (
        math.sqrt(A / (B * C)) * l1,
        math.sqrt(B / (C * A)) * l2,
        math.sqrt(C / (A * B)) * l3,
    )
    half = 0.5 * (lt[0] + lt[1] + lt[2])
    mt = (half - lt[0], half - lt[1], half - lt[2])
    return lt, mt


def connection_coefficients(metric: MilnorMetric) -> tuple[float, float, float]:
    """The mu-tilde coefficients, e.g. ``nabla_{e1} e2 = mu1 e3`` in the orthonormal frame."""
    return tilde_constants(metric)[1]


def sectional_curvatures(metric: MilnorMetric) -> tuple[float, float, float]:
    lt, mt = tilde_constants(metric)
    return (
        lt[0] * mt[0] - mt[1] * mt[2],
        lt[1] * mt[1] - mt[2] * mt[0],
        lt[2] * mt[2] - mt[0] * mt[1],
    )


def ricci(metric: MilnorMetric) -> DiagTensor:
    K1, K2, K3 = sectional_curvatures(metric)
    A, B, C = metric.components
    return DiagTensor((A * (K2 + K3), B * (K1 + K3), C * (K1 + K2)))


def scalar_curvature(metric: MilnorMetric) -> float:
    K1, K2, K3 = sectional_curvatures(metric)
    return 2.0 * (K1 + K2 + K3)


def ricci_signature(metric: MilnorMetric, tol: float = 1e-12) -> tuple[str, str, str]:
    """Signs of the Ricci diagonal, sorted descending.

    An entry counts as zero when ``|R_ll / g_ll| <= tol * max_l |R_ll / g_ll|``.
    """
    r = raise_index(ricci(metric), metric).entries
    scale = max(abs(x) for x in r)

    def sign(x):
        if abs(x) <= tol * scale:
            return 0
        return 1 if x > 0 else -1

    signs = sorted((sign(x) for x in r), reverse=True)
    return tuple({1: "+", 0: "0", -1: "-"}[s] for s in signs)


def rm_squared(metric: MilnorMetric) -> DiagTensor:
    K1, K2, K3 = sectional_curvatures(metric)
    A, B, C = metric.components
    return DiagTensor((
        2.0 * A * (K2 * K2 + K3 * K3),
        2.0 * B * (K3 * K3 + K1 * K1),
        2.0 * C * (K1 * K1 + K2 * K2),
    ))


def cross_curvature(metric: MilnorMetric) -> DiagTensor:
    K1, K2, K3 = sectional_curvatures(metric)
    A, B, C = metric.components
    return DiagTensor((A * K2 * K3, B * K3 * K1, C * K1 * K2))


def cross_curvature_via_einstein(metric: MilnorMetric) -> DiagTensor:
    """Cross curvature from ``H_ij = (det P / det g^-1) V_ij`` with ``V = P^-1``.

    ``P = g^-1 Rc g^-1 - (R/2) g^-1`` is the raised Einstein tensor.  Raises
    :class:`SingularEinsteinError` when some ``K_l`` vanishes; the product
    formula in :func:`cross_curvature` covers that case.
    """
    K = sectional_curvatures(metric)
    kmax = max(abs(x) for x in K)
    if min(abs(x) for x in K) < EINSTEIN_SINGULAR_RTOL * max(kmax, 1.0):
        raise SingularEinsteinError(f"Einstein tensor is singular: K = {K}")
    g = np.diag(metric.components)
    g_inv = np.linalg.inv(g)
    rc = np.diag(ricci(metric).entries)
    P = g_inv @ rc @ g_inv - 0.5 * scalar_curvature(metric) * g_inv
    V = np.linalg.inv(P)
    H = (np.linalg.det(P) / np.linalg.det(g_inv)) * V
    return DiagTensor(tuple(np.diag(H)))


def rg2_tensor(metric: MilnorMetric, alpha: float) -> DiagTensor:
    """``RG = -2 Rc - (alpha/2) Rm^2``; any real coupling is admitted."""
    rc = ricci(metric).entries
    rm = rm_squared(metric).entries
    return DiagTensor(tuple(-2.0 * r - (alpha / 2.0) * m for r, m in zip(rc, rm)))


def raise_index(T: DiagTensor, metric: MilnorMetric) -> DiagTensor:
    if T.variance is not Variance.COVARIANT:
        raise VarianceError("tensor already has a raised index")
    return DiagTensor(
        tuple(t / g for t, g in zip(T.entries, metric.components)), Variance.OPERATOR
    )


def scale_metric(metric: MilnorMetric, c: float) -> MilnorMetric:
    if not c > 0:
        raise DomainError(f"scale factor must be positive, got {c}")
    return MilnorMetric(metric.group, tuple(c * x for x in metric.components))


def dimensionless_curvature(metric: MilnorMetric) -> float:
    """``max_l |K_l|`` in units of the metric's volume scale ``(ABC)^(1/3)``."""
    A, B, C = metric.components
    return max(abs(k) for k in sectional_curvatures(metric)) * (A * B * C) ** (1.0 / 3.0)


def curvature_report(metric: MilnorMetric, alpha: float | None = None) -> CurvatureReport:
    lt, mt = tilde_constants(metric)
    return CurvatureReport(
        metric=metric,
        tildes=lt,
        mus=mt,
        sectional=sectional_curvatures(metric),
        ricci=ricci(metric),
        scalar=scalar_curvature(metric),
        rm2=rm_squared(metric),
        cross=cross_curvature(metric),
        alpha=alpha,
        rg2=None if alpha is None else rg2_tensor(metric, alpha),
    )
