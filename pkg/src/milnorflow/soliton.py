"""Algebraic solitons for XCF and RG-2 on the unimodular three-dimensional groups.

A left-invariant metric g is an algebraic T-soliton with constant kappa when
``D = T^[g] - kappa Id`` is a derivation, where ``T^`` is T with an index
raised.  Every operator here is diagonal in the Milnor frame, so each
nonzero bracket ``[e_i, e_j] = c e_k`` imposes ``d_i + d_j = d_k``, i.e.
``kappa = t_i + t_j - t_k``.

XCF is classified with ``T = +H`` or ``T = -H`` (not ``2H``); the flow module
integrates ``+-2H`` and rescales kappa and D by 2 when comparing.

Verdicts use residuals relative to the size of the flow operator, so they
are invariant under scaling of the metric.  See :func:`classify`.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .algebra import (
    DiagOperator,
    GroupKind,
    MilnorMetric,
    derivation_residual,
    nonzero_brackets,
    normalize_metric,
)
from .curvature import (
    cross_curvature,
    dimensionless_curvature,
    raise_index,
    ricci,
    rm_squared,
)
from .errors import DomainError

log = logging.getLogger(__name__)

__all__ = [
    "TensorTag",
    "FlowTensorKind",
    "Verdict",
    "SolitonClass",
    "SolitonCertificate",
    "SweepRow",
    "ComponentGrid",
    "SOLITON_RTOL",
    "LOCUS_RTOL",
    "lie_derivative_diag",
    "solve_soliton_constant",
    "flow_operator",
    "classify",
    "classify_xcf",
    "classify_rg2_steady",
    "classify_ricci",
    "closed_form_xcf",
    "closed_form_rg2_steady",
    "rg2_steady_alphas",
    "sweep_residuals",
]

# relative residual accepted as an exact derivation
SOLITON_RTOL = 1e-9
# relative tolerance for equalities on the theorem loci (e.g. "A = 1")
LOCUS_RTOL = 1e-9


class TensorTag(enum.Enum):
    XCF_PLUS_H = "xcf+"
    XCF_MINUS_H = "xcf-"
    RG2_STEADY = "rg2"
    RICCI = "ricci"


@dataclass(frozen=True)
class FlowTensorKind:
    tag: TensorTag
    alpha: float = 0.0

    @classmethod
    def xcf(cls, sign: str = "+") -> "FlowTensorKind":
        if sign not in ("+", "-"):
            raise DomainError(f"XCF sign must be '+' or '-', got {sign!r}")
        return cls(TensorTag.XCF_PLUS_H if sign == "+" else TensorTag.XCF_MINUS_H)

    @classmethod
    def rg2(cls, alpha: float) -> "FlowTensorKind":
        return cls(TensorTag.RG2_STEADY, float(alpha))

    @classmethod
    def ricci(cls) -> "FlowTensorKind":
        return cls(TensorTag.RICCI)

    @property
    def label(self) -> str:
        if self.tag is TensorTag.RG2_STEADY:
            return f"rg2(alpha={self.alpha!r})"
        return self.tag.value


class Verdict(enum.Enum):
    SOLITON = "soliton"
    FIXED_POINT = "fixed_point"
    NONE = "none"


class SolitonClass(enum.Enum):
    EXPANDING = "expanding"
    STEADY = "steady"
    SHRINKING = "shrinking"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class SolitonCertificate:
    """Outcome of an algebraic soliton test.

    ``residual`` is the raw derivation residual of ``derivation`` and
    ``tolerance`` the absolute bound it was held to, so the verdict can be
    re-checked with :func:`milnorflow.algebra.is_diagonal_derivation`.
    ``relative_residual`` is ``residual`` divided by the operator scale.
    """

    group: GroupKind
    kind: FlowTensorKind
    verdict: Verdict
    kappa: float
    derivation: DiagOperator
    residual: float
    tolerance: float
    relative_residual: float
    soliton_class: SolitonClass

    def to_dict(self) -> dict:
        return {
            "group": self.group.value,
            "kind": self.kind.tag.value,
            "alpha": self.kind.alpha if self.kind.tag is TensorTag.RG2_STEADY else None,
            "verdict": self.verdict.value,
            "class": self.soliton_class.value,
            "kappa": self.kappa,
            "derivation": list(self.derivation.entries),
            "residual": self.residual,
            "tolerance": self.tolerance,
            "relative_residual": self.relative_residual,
        }


def lie_derivative_diag(metric: MilnorMetric, D: DiagOperator) -> tuple[float, float, float]:
    """Component form ``(d1 A, d2 B, d3 C)`` of the Lie derivative of g along the field of D."""
    return tuple(d * g for d, g in zip(D.entries, metric.components))


def solve_soliton_constant(group: GroupKind, That) -> tuple[float, DiagOperator, float]:
    """Least-squares soliton constant for a diagonal operator.

    Each nonzero bracket ``[e_i, e_j] = c e_k`` wants ``kappa = t_i + t_j - t_k``;
    the least-squares kappa is the mean of these candidates.  On R^3 there is
    no constraint and the mean of the entries is returned.  The residual is
    the max-norm derivation residual of ``D = That - kappa Id``.
    """
    t = tuple(That.entries) if hasattr(That, "entries") else tuple(That)
    cands = [t[i - 1] + t[j - 1] - t[k - 1] for i, j, _, k in nonzero_brackets(group)]
    if cands:
        kappa = sum(cands) / len(cands)
    else:
        kappa = sum(t) / 3.0
    D = DiagOperator(tuple(x - kappa for x in t))
    return kappa, D, derivation_residual(group, D.entries)


def flow_operator(kind: FlowTensorKind, metric: MilnorMetric) -> tuple[DiagOperator, float]:
    """The raised flow tensor and its scale.

    The scale is the sum of the sup norms of the constituent operators, so a
    cancellation between Ricci and Rm^2 terms still has a meaningful yardstick.
    """

    def op(T):
        return raise_index(T, metric).entries

    def sup(x):
        return max(abs(v) for v in x)

    if kind.tag in (TensorTag.XCF_PLUS_H, TensorTag.XCF_MINUS_H):
        h = op(cross_curvature(metric))
        sign = 1.0 if kind.tag is TensorTag.XCF_PLUS_H else -1.0
        return DiagOperator(tuple(sign * x for x in h)), sup(h)
    rc = op(ricci(metric))
    if kind.tag is TensorTag.RICCI:
        return DiagOperator(tuple(-2.0 * r for r in rc)), 2.0 * sup(rc)
    rm = op(rm_squared(metric))
    a = kind.alpha
    entries = tuple(-2.0 * r - (a / 2.0) * m for r, m in zip(rc, rm))
    return DiagOperator(entries), 2.0 * sup(rc) + abs(a) / 2.0 * sup(rm)


def _class_of(kappa: float, tol: float) -> SolitonClass:
    if abs(kappa) <= tol:
        return SolitonClass.STEADY
    return SolitonClass.EXPANDING if kappa > 0 else SolitonClass.SHRINKING


def classify(kind: FlowTensorKind, metric: MilnorMetric, rtol: float = SOLITON_RTOL) -> SolitonCertificate:
    """Generic algebraic-soliton test for any flow tensor kind.

    * flat metrics (all ``K_l`` negligible against the metric's scale) are fixed points;
    * an operator negligible against its own constituent terms is a fixed point;
    * otherwise solve for kappa; for RG-2 kappa is first forced to zero, and a
      non-steady solution is reported with class ``not_applicable`` since RG
      is not homogeneous.
    """
    group = metric.group
    zero = DiagOperator((0.0, 0.0, 0.0))
    if dimensionless_curvature(metric) <= rtol:
        return SolitonCertificate(
            group, kind, Verdict.FIXED_POINT, 0.0, zero, 0.0, 0.0, 0.0, SolitonClass.STEADY
        )

    That, scale = flow_operator(kind, metric)
    tol = rtol * scale

    def rel(r):
        return r / scale if scale > 0 else 0.0

    if That.sup_norm() <= tol:
        # |d_i + d_j - d_k| <= 3 |T^|_inf bounds the residual of a negligible operator
        res = derivation_residual(group, That.entries)
        return SolitonCertificate(
            group, kind, Verdict.FIXED_POINT, 0.0, That, res, 3.0 * tol, rel(res),
            SolitonClass.STEADY,
        )

    if kind.tag is TensorTag.RG2_STEADY:
        res = derivation_residual(group, That.entries)
        if res <= tol:
            return SolitonCertificate(
                group, kind, Verdict.SOLITON, 0.0, That, res, tol, rel(res), SolitonClass.STEADY
            )
        kappa, D, free_res = solve_soliton_constant(group, That)
        if free_res <= tol:
            return SolitonCertificate(
                group, kind, Verdict.SOLITON, kappa, D, free_res, tol, rel(free_res),
                SolitonClass.NOT_APPLICABLE,
            )
        return SolitonCertificate(
            group, kind, Verdict.NONE, 0.0, That, res, tol, rel(res), SolitonClass.NOT_APPLICABLE
        )

    kappa, D, res = solve_soliton_constant(group, That)
    if res <= tol:
        return SolitonCertificate(
            group, kind, Verdict.SOLITON, kappa, D, res, tol, rel(res), _class_of(kappa, tol)
        )
    return SolitonCertificate(
        group, kind, Verdict.NONE, kappa, D, res, tol, rel(res), SolitonClass.NOT_APPLICABLE
    )


def _steady_like(cert: SolitonCertificate) -> Verdict:
    """Collapse a certificate to the steady-soliton question asked of RG-2."""
    if cert.verdict is Verdict.FIXED_POINT:
        return Verdict.FIXED_POINT
    if cert.verdict is Verdict.SOLITON and cert.soliton_class is SolitonClass.STEADY:
        return Verdict.SOLITON
    return Verdict.NONE


def classify_xcf(metric: MilnorMetric, sign: str = "+") -> SolitonCertificate:
    """Algebraic XCF soliton test with ``T = +H`` or ``-H``, cross-checked against the theorems."""
    cert = classify(FlowTensorKind.xcf(sign), metric)
    expected, _ = closed_form_xcf(metric, sign)
    if expected is not cert.verdict:
        log.warning(
            "xcf%s on %s: solver says %s, closed form says %s (near a locus boundary?)",
            sign, metric, cert.verdict.value, expected.value,
        )
    return cert


def classify_rg2_steady(metric: MilnorMetric, alpha: float) -> SolitonCertificate:
    """Steady algebraic RG-2 soliton test at coupling ``alpha``, cross-checked against the theorems."""
    cert = classify(FlowTensorKind.rg2(alpha), metric)
    expected = closed_form_rg2_steady(metric, alpha)
    if expected is not _steady_like(cert):
        log.warning(
            "rg2(alpha=%r) on %s: solver says %s, closed form says %s",
            alpha, metric, cert.verdict.value, expected.value,
        )
    return cert


def classify_ricci(metric: MilnorMetric) -> SolitonCertificate:
    return classify(FlowTensorKind.ricci(), metric)


def _close(x: float, y: float, rtol: float = LOCUS_RTOL) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def closed_form_xcf(metric: MilnorMetric, sign: str = "+") -> tuple[Verdict, float | None]:
    """Verdict and kappa for ``T = +-H`` read off the per-group theorems (normal forms)."""
    s = 1.0 if sign == "+" else -1.0
    group = metric.group
    normal, _ = normalize_metric(metric)
    A, B, C = normal.components
    if group is GroupKind.R3:
        return Verdict.FIXED_POINT, 0.0
    if group is GroupKind.HEISENBERG:
        return Verdict.SOLITON, -s * 7.0 / 16.0 * A * A
    if group is GroupKind.E2:
        return (Verdict.FIXED_POINT, 0.0) if _close(B, 1.0) else (Verdict.NONE, None)
    if group is GroupKind.E11:
        return (Verdict.SOLITON, s / (B * B)) if _close(A, 1.0) else (Verdict.NONE, None)
    if group is GroupKind.SL2TILDE:
        return Verdict.NONE, None
    if _close(A, B) and _close(B, C) and _close(A, C):
        return Verdict.SOLITON, s / (16.0 * A * A)
    return Verdict.NONE, None


def rg2_steady_alphas(metric: MilnorMetric) -> list[float] | None:
    """Every coupling at which the metric is a steady algebraic RG-2 soliton.

    Returns ``None`` for flat metrics, which are fixed points for every alpha.
    """
    group = metric.group
    normal, _ = normalize_metric(metric)
    A, B, C = normal.components
    if group is GroupKind.R3:
        return None
    if group is GroupKind.HEISENBERG:
        return [8.0 / (3.0 * A)]
    if group is GroupKind.E2:
        return None if _close(B, 1.0) else []
    if group is GroupKind.E11:
        if _close(A, 1.0):
            return [2.0 * B]
        if _close(A, 3.0) or _close(A, 1.0 / 3.0):
            return [0.75 * B]
        return []
    if group is GroupKind.SL2TILDE:
        return []
    # SU(2): constant curvature, or one principal curvature zero and the other two equal
    if _close(A, B) and _close(B, C) and _close(A, C):
        return [-8.0 * A]
    if _close(B, C) and _close(A, 4.0 / 3.0 * B):
        return [-4.5 * A]
    if _close(A, B) and _close(C, 4.0 / 3.0 * A):
        return [-6.0 * A]
    if _close(A, C) and _close(B, 4.0 / 3.0 * A):
        return [-6.0 * A]
    return []


def closed_form_rg2_steady(metric: MilnorMetric, alpha: float) -> Verdict:
    alphas = rg2_steady_alphas(metric)
    if alphas is None:
        return Verdict.FIXED_POINT
    for a in alphas:
        if _close(a, alpha):
            return Verdict.FIXED_POINT if metric.group is GroupKind.SU2 else Verdict.SOLITON
    return Verdict.NONE


@dataclass(frozen=True)
class SweepRow:
    A: float
    B: float
    C: float
    kappa: float
    residual: float


@dataclass(frozen=True)
class ComponentGrid:
    """Axis values for A, B and C; the sweep visits their Cartesian product."""

    A: tuple[float, ...]
    B: tuple[float, ...]
    C: tuple[float, ...]

    def __post_init__(self):
        for name in "ABC":
            vals = tuple(float(v) for v in getattr(self, name))
            if any(not v > 0 for v in vals):
                raise DomainError(f"grid values for {name} must be positive")
            object.__setattr__(self, name, vals)

    @staticmethod
    def axis(spec: str) -> tuple[float, ...]:
        """Parse ``"v"`` or ``"lo:hi:n"`` (n evenly spaced points, endpoints included)."""
        parts = spec.split(":")
        try:
            if len(parts) == 1:
                return (float(parts[0]),)
            if len(parts) == 3:
                lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
                if n < 1:
                    raise ValueError
                if n == 1:
                    return (lo,)
                return tuple(lo + (hi - lo) * i / (n - 1) for i in range(n))
        except ValueError:
            pass
        raise DomainError(f"malformed grid spec {spec!r}; expected 'v' or 'lo:hi:n'")

    def points(self):
        return product(self.A, self.B, self.C)


def sweep_residuals(
    group: GroupKind, kind: FlowTensorKind, grid: ComponentGrid | Sequence[tuple[float, float, float]]
) -> list[SweepRow]:
    """Best kappa and relative derivation residual at every grid point, in grid order.

    For RG-2 the constant is pinned to zero (steady solitons only).  Flat
    points report a zero residual.
    """
    points = grid.points() if isinstance(grid, ComponentGrid) else grid
    rows = []
    for A, B, C in points:
        metric = MilnorMetric(group, (A, B, C))
        That, scale = flow_operator(kind, metric)
        if scale == 0.0:
            rows.append(SweepRow(A, B, C, 0.0, 0.0))
            continue
        if kind.tag is TensorTag.RG2_STEADY:
            kappa, res = 0.0, derivation_residual(group, That.entries)
        else:
            kappa, _, res = solve_soliton_constant(group, That)
        rows.append(SweepRow(A, B, C, kappa, res / scale))
    return rows
