import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import component, metrics, triple
from milnorflow import (
    DiagTensor,
    DomainError,
    GroupKind,
    MilnorMetric,
    SingularEinsteinError,
    Variance,
    VarianceError,
    cross_curvature,
    cross_curvature_via_einstein,
    curvature_report,
    raise_index,
    rg2_tensor,
    ricci,
    ricci_signature,
    rm_squared,
    scalar_curvature,
    scale_metric,
    sectional_curvatures,
    tilde_constants,
)
from milnorflow.curvature import ADMISSIBLE_RICCI_SIGNATURES, dimensionless_curvature
from oracles import curvature_oracle

H = GroupKind.HEISENBERG


def test_heisenberg_unit_metric():
    g = MilnorMetric(H, (1, 1, 1))
    assert sectional_curvatures(g) == (-0.75, 0.25, 0.25)
    assert ricci(g).entries == (0.5, -0.5, -0.5)
    assert scalar_curvature(g) == -0.5
    assert cross_curvature(g).entries == (1 / 16, -3 / 16, -3 / 16)
    assert rm_squared(g).entries == (0.25, 1.25, 1.25)


def test_flat_reports():
    for g in (MilnorMetric(GroupKind.R3, (2, 3, 5)), MilnorMetric(GroupKind.E2, (1, 1, 3))):
        rep = curvature_report(g, alpha=1.5)
        assert rep.sectional == (0.0, 0.0, 0.0)
        assert rep.ricci.entries == rep.rm2.entries == rep.cross.entries == (0.0, 0.0, 0.0)
        assert rep.scalar == 0.0
        assert all(x == 0 for x in rep.rg2.entries)


def test_report_rg2_only_with_alpha():
    g = MilnorMetric(GroupKind.SU2, (1, 2, 3))
    assert curvature_report(g).rg2 is None
    rep = curvature_report(g, alpha=-1.0)
    assert rep.rg2 == rg2_tensor(g, -1.0)


@given(metrics())
def test_matches_koszul_oracle(g):
    o = curvature_oracle(g.group.value, g.components)
    K = np.array(sectional_curvatures(g))
    scale = max(1.0, np.abs(o["sectional"]).max())
    assert np.allclose(K, o["sectional"], rtol=0, atol=1e-10 * scale)
    assert np.allclose(np.diag(ricci(g).entries), o["ricci"], atol=1e-10 * scale * max(g.components))
    rm_scale = scale * scale * max(g.components)
    assert np.allclose(np.diag(rm_squared(g).entries), o["rm2"], atol=1e-10 * rm_scale)
    assert scalar_curvature(g) == pytest.approx(o["scalar"], abs=1e-10 * scale)


# per-group sectional curvatures in the normal forms, written out explicitly


@given(component)
def test_heisenberg_explicit(A):
    K = sectional_curvatures(MilnorMetric(H, (A, 1, 1)))
    assert K == pytest.approx((-0.75 * A, 0.25 * A, 0.25 * A), rel=1e-13)
    Hc = cross_curvature(MilnorMetric(H, (A, 1, 1))).entries
    assert Hc == pytest.approx((A**3 / 16, -3 * A**2 / 16, -3 * A**2 / 16), rel=1e-13)


@given(component, component)
def test_e2_explicit(B, C):
    K = sectional_curvatures(MilnorMetric(GroupKind.E2, (1, B, C)))
    expect = (
        (B + 3) * (B - 1) / (4 * B * C),
        (3 * B + 1) * (1 - B) / (4 * B * C),
        (B - 1) ** 2 / (4 * B * C),
    )
    assert K == pytest.approx(expect, rel=1e-12, abs=1e-14)


@given(component, component, st.floats(-10, 10))
def test_e2_rg2_explicit(B, C, a):
    g = MilnorMetric(GroupKind.E2, (1, B, C))
    expect = (
        -(B - 1) * (5 * a * B**3 - 3 * a * B**2 - 8 * B**2 * C - B * a - 8 * B * C - a) / (8 * B**2 * C**2),
        -(B - 1) * (a * B**3 + a * B**2 + 8 * B**2 * C + 3 * B * a + 8 * B * C - 5 * a) / (8 * B * C**2),
        -((B - 1) ** 2) * (5 * a * B**2 + 6 * a * B - 8 * B * C + 5 * a) / (8 * B**2 * C),
    )
    scale = 1.0 + max(abs(x) for x in expect)
    assert rg2_tensor(g, a).entries == pytest.approx(expect, abs=1e-11 * scale)


@given(component, component)
def test_e11_explicit(A, B):
    K = sectional_curvatures(MilnorMetric(GroupKind.E11, (A, B, 1)))
    expect = (
        -(A + 1) * (3 * A - 1) / (4 * A * B),
        (A + 1) ** 2 / (4 * A * B),
        (A + 1) * (A - 3) / (4 * A * B),
    )
    assert K == pytest.approx(expect, rel=1e-12, abs=1e-14)


@given(triple)
def test_su2_explicit(comps):
    A, B, C = comps
    K = sectional_curvatures(MilnorMetric(GroupKind.SU2, comps))
    d = 4 * A * B * C
    expect = (
        -(3 * A**2 - B**2 + 2 * B * C - C**2 - 2 * A * B - 2 * A * C) / d,
        (-3 * B**2 - 2 * A * C + A**2 + C**2 + 2 * A * B + 2 * B * C) / d,
        (A**2 + B**2 - 3 * C**2 - 2 * A * B + 2 * B * C + 2 * A * C) / d,
    )
    scale = max(1.0, max(abs(x) for x in expect))
    assert K == pytest.approx(expect, abs=1e-12 * scale)


@given(metrics(), st.floats(-10, 10))
def test_rg2_composition(g, a):
    K1, K2, K3 = sectional_curvatures(g)
    A, B, C = g.components
    expect = (
        -A * (2 * (K2 + K3) + a * (K2**2 + K3**2)),
        -B * (2 * (K3 + K1) + a * (K3**2 + K1**2)),
        -C * (2 * (K1 + K2) + a * (K1**2 + K2**2)),
    )
    scale = 1.0 + max(abs(x) for x in expect)
    assert rg2_tensor(g, a).entries == pytest.approx(expect, abs=1e-12 * scale)


@given(metrics(), st.floats(0.05, 20))
def test_homogeneity(g, c):
    gc = scale_metric(g, c)
    assert ricci(gc).entries == pytest.approx(ricci(g).entries, rel=1e-10, abs=1e-12)
    assert cross_curvature(gc).entries == pytest.approx(
        tuple(x / c for x in cross_curvature(g).entries), rel=1e-10, abs=1e-12
    )
    assert rm_squared(gc).entries == pytest.approx(
        tuple(x / c for x in rm_squared(g).entries), rel=1e-10, abs=1e-12
    )


@given(metrics([g for g in GroupKind if g is not GroupKind.R3]))
def test_einstein_route_agrees(g):
    K = sectional_curvatures(g)
    assume(min(abs(k) for k in K) > 1e-3 * max(abs(k) for k in K))
    direct = cross_curvature(g).entries
    via = cross_curvature_via_einstein(g).entries
    assert via == pytest.approx(direct, rel=1e-9)


def test_einstein_route_singular():
    with pytest.raises(SingularEinsteinError):
        cross_curvature_via_einstein(MilnorMetric(GroupKind.E2, (1, 1, 1)))
    with pytest.raises(SingularEinsteinError):
        cross_curvature_via_einstein(MilnorMetric(GroupKind.R3, (1, 2, 3)))
    # K3 = 0 on the SU(2) locus A = B, C = 4A/3
    with pytest.raises(SingularEinsteinError):
        cross_curvature_via_einstein(MilnorMetric(GroupKind.SU2, (3, 3, 4)))


@given(metrics([GroupKind.SL2TILDE, GroupKind.SU2]))
def test_ricci_signature_admissible(g):
    assert ricci_signature(g) in ADMISSIBLE_RICCI_SIGNATURES[g.group]


def test_ricci_signature_examples():
    assert ricci_signature(MilnorMetric(GroupKind.SU2, (1, 1, 1))) == ("+", "+", "+")
    assert ricci_signature(MilnorMetric(H, (1, 1, 1))) == ("+", "-", "-")
    # K3 = 0 with K1 = K2 > 0 still gives a positive Ricci operator
    assert ricci_signature(MilnorMetric(GroupKind.SU2, (3, 3, 4))) == ("+", "+", "+")
    # K = (1/3, 1/3, -1/3): two Ricci entries cancel
    assert ricci_signature(MilnorMetric(GroupKind.SU2, (1, 2, 3))) == ("+", "0", "0")
    assert ricci_signature(MilnorMetric(GroupKind.SU2, (1, 1, 10))) == ("+", "-", "-")


def test_raise_index():
    g = MilnorMetric(GroupKind.SU2, (1, 2, 4))
    op = raise_index(ricci(g), g)
    assert op.variance is Variance.OPERATOR
    assert op.entries == pytest.approx(tuple(r / x for r, x in zip(ricci(g).entries, g.components)))
    with pytest.raises(VarianceError):
        raise_index(op, g)


def test_raised_cross_curvature_is_product_of_curvatures():
    g = MilnorMetric(GroupKind.E11, (2, 3, 1))
    K1, K2, K3 = sectional_curvatures(g)
    assert raise_index(cross_curvature(g), g).entries == pytest.approx((K2 * K3, K3 * K1, K1 * K2))


def test_scale_metric_rejects_nonpositive():
    g = MilnorMetric(H, (1, 1, 1))
    for c in (0.0, -1.0, float("nan")):
        with pytest.raises(DomainError):
            scale_metric(g, c)


def test_diag_tensor_default_variance():
    assert DiagTensor((1, 2, 3)).variance is Variance.COVARIANT
    assert DiagTensor((1, 2, 3)).component(2) == 2.0


@given(metrics())
def test_mu_relation(g):
    lt, mt = tilde_constants(g)
    half = sum(lt) / 2
    assert mt == pytest.approx(tuple(half - x for x in lt), abs=1e-12)
    # mu_l + lambda_l = half-sum for every l
    assert all(math.isclose(m + l, half, abs_tol=1e-12) for m, l in zip(mt, lt))


@given(metrics(), st.floats(0.1, 10))
def test_dimensionless_curvature_scale_invariant(g, c):
    a, b = dimensionless_curvature(g), dimensionless_curvature(scale_metric(g, c))
    assert b == pytest.approx(a, rel=1e-9, abs=1e-12)
