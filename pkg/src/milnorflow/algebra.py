"""The six unimodular three-dimensional Lie algebras in Milnor form.

A Milnor frame e1, e2, e3 diagonalizes a left-invariant metric
``g = A s1^2 + B s2^2 + C s3^2`` and the bracket

    [e2, e3] = l1 e1,   [e3, e1] = l2 e2,   [e1, e2] = l3 e3

with each l_i in {1, 0, -1} and l1 >= l2 >= l3.  Frame indices are 1-based
in every public function of this package.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "GroupKind",
    "StructureConstants",
    "DiagOperator",
    "MilnorMetric",
    "DERIVATION_TOL",
    "structure_of",
    "bracket",
    "nonzero_brackets",
    "derivation_residual",
    "is_diagonal_derivation",
    "is_nice_basis",
    "normalize_metric",
    "e11_canonical_form",
]

DERIVATION_TOL = 1e-9


class GroupKind(enum.Enum):
    R3 = "r3"
    HEISENBERG = "heisenberg"
    E2 = "e2"
    E11 = "e11"
    SL2TILDE = "sl2"
    SU2 = "su2"

    @classmethod
    def parse(cls, name: str) -> "GroupKind":
        key = name.strip().lower()
        try:
            return _ALIASES[key]
        except KeyError:
            raise DomainError(f"unknown group {name!r}") from None


_ALIASES = {
    "r3": GroupKind.R3,
    "heisenberg": GroupKind.HEISENBERG,
    "nil3": GroupKind.HEISENBERG,
    "e2": GroupKind.E2,
    "e11": GroupKind.E11,
    "sol": GroupKind.E11,
    "sl2": GroupKind.SL2TILDE,
    "sl2tilde": GroupKind.SL2TILDE,
    "su2": GroupKind.SU2,
}

_SIGNATURES = {
    GroupKind.R3: (0, 0, 0),
    GroupKind.HEISENBERG: (1, 0, 0),
    GroupKind.E2: (1, 1, 0),
    GroupKind.E11: (1, 0, -1),
    GroupKind.SL2TILDE: (1, 1, -1),
    GroupKind.SU2: (1, 1, 1),
}


@dataclass(frozen=True)
class StructureConstants:
    lambdas: tuple[int, int, int]

    def __post_init__(self):
        lam = tuple(self.lambdas)
        if len(lam) != 3 or any(x not in (-1, 0, 1) for x in lam):
            raise DomainError(f"structure constants must lie in {{1, 0, -1}}: {lam}")
        if not lam[0] >= lam[1] >= lam[2]:
            raise DomainError(f"structure constants must be non-increasing: {lam}")
        if sum(x > 0 for x in lam) < sum(x < 0 for x in lam):
            raise DomainError(f"more negative than positive structure constants: {lam}")
        object.__setattr__(self, "lambdas", lam)


@dataclass(frozen=True)
class DiagOperator:
    """A (1,1)-operator diagonal in the Milnor frame."""

    entries: tuple[float, float, float]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(float(x) for x in self.entries))
        if len(self.entries) != 3:
            raise DomainError("a diagonal operator has exactly three entries")

    def component(self, i: int) -> float:
        return self.entries[i - 1]

    def sup_norm(self) -> float:
        return max(abs(x) for x in self.entries)

    def __neg__(self) -> "DiagOperator":
        return DiagOperator(tuple(-x for x in self.entries))

    def scaled(self, factor: float) -> "DiagOperator":
        return DiagOperator(tuple(factor * x for x in self.entries))


@dataclass(frozen=True)
class MilnorMetric:
    """A left-invariant metric ``A s1^2 + B s2^2 + C s3^2`` on one of the six groups."""

    group: GroupKind
    components: tuple[float, float, float]

    def __post_init__(self):
        comps = tuple(float(x) for x in self.components)
        if len(comps) != 3:
            raise DomainError("a Milnor metric has exactly three components")
        if not all(math.isfinite(x) and x > 0 for x in comps):
            raise DomainError(f"metric components must be finite and positive, got {comps}")
        object.__setattr__(self, "components", comps)

    @property
    def A(self) -> float:
        return self.components[0]

    @property
    def B(self) -> float:
        return self.components[1]

    @property
    def C(self) -> float:
        return self.components[2]


def structure_of(group: GroupKind) -> StructureConstants:
    return StructureConstants(_SIGNATURES[group])


# (i, j, k) with [e_i, e_j] = lambda_k e_k, 1-based
_CYCLIC = ((2, 3, 1), (3, 1, 2), (1, 2, 3))


def bracket(group: GroupKind, i: int, j: int) -> tuple[int, int | None]:
    """Return ``(c, k)`` with ``[e_i, e_j] = c e_k``; ``(0, None)`` when the bracket vanishes."""
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise DomainError(f"frame indices must be 1, 2 or 3, got ({i}, {j})")
    lam = _SIGNATURES[group]
    for a, b, k in _CYCLIC:
        if (i, j) == (a, b) and lam[k - 1] != 0:
            return lam[k - 1], k
        if (i, j) == (b, a) and lam[k - 1] != 0:
            return -lam[k - 1], k
    return 0, None


def nonzero_brackets(group: GroupKind) -> list[tuple[int, int, int, int]]:
    """All ``(i, j, c, k)`` with i < j and ``[e_i, e_j] = c e_k`` nonzero."""
    out = []
    for i in (1, 2, 3):
        for j in range(i + 1, 4):
            c, k = bracket(group, i, j)
            if c != 0:
                out.append((i, j, c, k))
    return out


def derivation_residual(group: GroupKind, entries) -> float:
    """Max over nonzero brackets ``[e_i, e_j] = c e_k`` of ``|d_i + d_j - d_k|``."""
    d = tuple(entries)
    res = 0.0
    for i, j, _, k in nonzero_brackets(group):
        res = max(res, abs(d[i - 1] + d[j - 1] - d[k - 1]))
    return res


def is_diagonal_derivation(
    group: GroupKind, D: DiagOperator, tol: float | None = None
) -> tuple[bool, float]:
    """Test whether a diagonal operator is a derivation of the Lie algebra.

    With ``tol=None`` the default ``DERIVATION_TOL * max(1, |D|_inf)`` is used.
    """
    entries = D.entries if isinstance(D, DiagOperator) else tuple(D)
    if tol is None:
        tol = DERIVATION_TOL * max(1.0, max(abs(x) for x in entries))
    if tol < 0:
        raise DomainError(f"tolerance must be non-negative, got {tol}")
    res = derivation_residual(group, entries)
    return res <= tol, res


def is_nice_basis(group: GroupKind) -> bool:
    """Check both nice-basis conditions on the Milnor structure constants c_ij^k."""
    c = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            coef, k = bracket(group, i, j)
            for kk in (1, 2, 3):
                c[i, j, kk] = coef if kk == k else 0
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if sum(c[i, j, k] != 0 for k in (1, 2, 3)) > 1:
                return False
        for k in (1, 2, 3):
            if sum(c[i, j, k] != 0 for j in (1, 2, 3)) > 1:
                return False
    return True


def normalize_metric(metric: MilnorMetric) -> tuple[MilnorMetric, tuple[float, float, float]]:
    """Bring a metric to the per-group normal form by a frame rescaling.

    The new frame is ``f_i = s_i e_i`` with ``s_i > 0`` chosen so that the
    structure constants stay in {1, 0, -1}; the rescaling is a Lie algebra
    automorphism, so the result is isometric to the input.  Component ``i``
    becomes ``s_i**2 * g_i``.  Returns the normalized metric and ``(s1, s2, s3)``.

    Normal forms: Heisenberg B = C = 1, E(2) A = 1, E(1,1) C = 1,
    R^3 (1, 1, 1); SL~(2) and SU(2) admit no rescaling.
    """
    A, B, C = metric.components
    group = metric.group
    if group is GroupKind.R3:
        s = (1 / math.sqrt(A), 1 / math.sqrt(B), 1 / math.sqrt(C))
    elif group is GroupKind.HEISENBERG:
        # s1 = s2 s3 keeps [f2, f3] = f1
        s2, s3 = 1 / math.sqrt(B), 1 / math.sqrt(C)
        s = (s2 * s3, s2, s3)
    elif group is GroupKind.E2:
        # s1 = s2 s3 and s2 = s3 s1 force s3 = 1, s1 = s2
        s1 = 1 / math.sqrt(A)
        s = (s1, s1, 1.0)
    elif group is GroupKind.E11:
        # s1 = s2 s3 and s3 = s1 s2 force s2 = 1, s1 = s3
        s3 = 1 / math.sqrt(C)
        s = (s3, 1.0, s3)
    else:
        s = (1.0, 1.0, 1.0)

    comps = [si * si * gi for si, gi in zip(s, metric.components)]
    if group is GroupKind.R3:
        comps = [1.0, 1.0, 1.0]
    elif group is GroupKind.HEISENBERG:
        comps = [A / (B * C), 1.0, 1.0]
    elif group is GroupKind.E2:
        comps[0] = 1.0
    elif group is GroupKind.E11:
        comps[2] = 1.0
    return MilnorMetric(group, tuple(comps)), s


def e11_canonical_form(metric: MilnorMetric) -> MilnorMetric:
    """Isometric representative ``(A, B, 1)`` of an E(1,1) metric with ``A >= 1``.

    The map e1 -> a e3, e2 -> e2, e3 -> a e1 is an automorphism for every
    ``a > 0`` and carries ``(A, B, C)`` to ``(a^2 C, B, a^2 A)``.  Combined
    with the C = 1 normalization this sends ``(A, B, 1)`` to ``(1/A, B, 1)``.
    """
    if metric.group is not GroupKind.E11:
        raise DomainError(f"e11_canonical_form needs an E(1,1) metric, got {metric.group.value}")
    normal, _ = normalize_metric(metric)
    A, B, _ = normal.components
    if A >= 1.0:
        return normal
    return MilnorMetric(GroupKind.E11, (1.0 / A, B, 1.0))
