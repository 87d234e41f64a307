"""Independent reference computations used by the tests.

The curvature oracle does not use the sectional-curvature shortcut of the
library: it builds the Levi-Civita connection of the orthonormal frame from
the Koszul formula and contracts the full Riemann tensor.
"""

from __future__ import annotations

import itertools

import numpy as np

SIGNATURES = {
    "r3": (0, 0, 0),
    "heisenberg": (1, 0, 0),
    "e2": (1, 1, 0),
    "e11": (1, 0, -1),
    "sl2": (1, 1, -1),
    "su2": (1, 1, 1),
}


def structure_tensor(lambdas) -> np.ndarray:
    """c[i, j, k] with [e_i, e_j] = sum_k c[i, j, k] e_k (0-based)."""
    c = np.zeros((3, 3, 3))
    for i, j, k in ((1, 2, 0), (2, 0, 1), (0, 1, 2)):
        c[i, j, k] = lambdas[k]
        c[j, i, k] = -lambdas[k]
    return c


def riemann_orthonormal(lambdas, comps) -> np.ndarray:
    """R[a, b, c, d] = <R(E_a, E_b) E_c, E_d> in the orthonormal frame E_i = e_i / sqrt(g_i)."""
    g = np.asarray(comps, dtype=float)
    c = structure_tensor(lambdas)
    s = np.sqrt(g)
    # orthonormal structure constants
    co = c * s[None, None, :] / (s[:, None, None] * s[None, :, None])
    # Koszul: <nabla_{E_i} E_j, E_k> = (c_ij^k - c_jk^i + c_ki^j) / 2
    gam = np.zeros((3, 3, 3))
    for i, j, k in itertools.product(range(3), repeat=3):
        gam[i, j, k] = 0.5 * (co[i, j, k] - co[j, k, i] + co[k, i, j])

    def nabla(x, y):
        # x, y coefficient vectors of left-invariant fields
        return np.einsum("i,j,ijk->k", x, y, gam)

    E = np.eye(3)
    R = np.zeros((3, 3, 3, 3))
    for a, b, cc in itertools.product(range(3), repeat=3):
        X, Y, Z = E[a], E[b], E[cc]
        br = np.einsum("i,j,ijk->k", X, Y, co)
        v = nabla(X, nabla(Y, Z)) - nabla(Y, nabla(X, Z)) - nabla(br, Z)
        R[a, b, cc, :] = v
    return R


def curvature_oracle(group: str, comps):
    """Sectional curvatures and coordinate-frame Ricci, Rm^2 and their off-diagonal parts."""
    lam = SIGNATURES[group]
    g = np.asarray(comps, dtype=float)
    R = riemann_orthonormal(lam, g)
    # K(E_m ^ E_n) = <R(E_m, E_n) E_n, E_m>
    K = []
    for m, n in ((1, 2), (0, 2), (0, 1)):
        K.append(R[m, n, n, m])
    ric_o = np.zeros((3, 3))
    for b, cc in itertools.product(range(3), repeat=2):
        ric_o[b, cc] = sum(R[a, b, cc, a] for a in range(3))
    rm2_o = np.einsum("apqr,bpqr->ab", R, R)
    scale = np.sqrt(np.outer(g, g))
    return {
        "sectional": np.array(K),
        "ricci": ric_o * scale,
        "rm2": rm2_o * scale,
        "scalar": np.trace(ric_o),
    }


def su2_rg2_steady_loci():
    """Steady RG-2 loci on SU(2) with A = 1, by brute force over curvature patterns.

    On SU(2) there are no nonzero diagonal derivations, so a steady soliton
    has ``RG = 0``: for each l, ``K_m + K_n = -(alpha/2)(K_m^2 + K_n^2)``.
    Each ``K_l`` is then 0 or ``-2/alpha``.  Every pattern with at least one
    nonzero entry is solved exactly for positive (B, C).  Returns a set of
    ``(B, C, alpha)`` with sympy rationals.
    """
    import sympy as sp

    A = sp.Integer(1)
    B, C = sp.symbols("B C", positive=True)
    d = 4 * A * B * C
    Ks = [
        -(3 * A**2 - B**2 + 2 * B * C - C**2 - 2 * A * B - 2 * A * C) / d,
        (-3 * B**2 - 2 * A * C + A**2 + C**2 + 2 * A * B + 2 * B * C) / d,
        (A**2 + B**2 - 3 * C**2 - 2 * A * B + 2 * B * C + 2 * A * C) / d,
    ]
    found = set()
    for pattern in itertools.product((0, 1), repeat=3):
        if not any(pattern):
            continue
        zero = [K for K, p in zip(Ks, pattern) if p == 0]
        nonzero = [K for K, p in zip(Ks, pattern) if p == 1]
        eqs = [sp.numer(sp.together(K)) for K in zero]
        eqs += [sp.numer(sp.together(nonzero[0] - K)) for K in nonzero[1:]]
        for sol in sp.solve(eqs, [B, C], dict=True):
            if len(sol) < 2:
                raise AssertionError(f"unexpected one-parameter family {sol} for {pattern}")
            b, c = sol[B], sol[C]
            if not (b.is_positive and c.is_positive):
                continue
            k = sp.simplify(nonzero[0].subs(sol))
            # every nonzero K must really be nonzero and every zero K zero
            if k == 0 or any(sp.simplify(K.subs(sol)) != 0 for K in zero):
                continue
            found.add((sp.nsimplify(b), sp.nsimplify(c), sp.nsimplify(-2 / k)))
    return found
