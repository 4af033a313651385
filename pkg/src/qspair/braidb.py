"""Type B braid group representations and the Kohno-Drinfeld comparison.

A quadruple (E, R, Psi, Phi) acting on V (x) W^{(x)n} defines a representation
of Gamma_n with the fixed parenthesization ((V (x) W) (x) W) (x) W:

    rho_1   -> E_{0,1}
    sigma_1 -> Psi^{-1}_{0,1,2} (Sigma R)_{1,2} Psi_{0,1,2}
    sigma_2 -> Psi^{-1}_{01,2,3} (Sigma R)_{2,3} Psi_{01,2,3}

The grouped-leg associators are recomputed with tensor-product
representations on the merged legs, so families are passed as callables on
representation triples.  n <= 3 keeps the dimensions at desk scale.

The Kohno-Drinfeld check builds the coideal-side representation from the
Balagovic-Kolb braid R_21 (1 (x) K) R (with the strict Psi = Phi = 1, since
U_h(g) is an honest bialgebra) and the KZ-side one from the plain ribbon
braid, the cyclotomic associator and R_KZ = exp(-h t^u), and compares traces
of words, which are invariants of the representation equivalence.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ComparisonError, ParameterError, ShapeError
from .kzmono import phi_kz, psi_kz, r_kz, ribbon_kz
from .sln import fundamental_rep, permute_legs, realize, tensor_rep
from .uqsl import (
    make_params,
    r_matrix,
    solve_kmatrix,
    universal_r_scalar,
)


@dataclass
class BraidRep:
    n: int
    dim: int
    rho1: np.ndarray
    sigma: list          # sigma_1 .. sigma_{n-1}
    grouping: str
    residuals: dict


def _flip(mat, d):
    return permute_legs(mat, (d, d), (1, 0))


def build_rep(E, R, psi_family, phi_family, n, dims):
    """Assemble the Gamma_n generator matrices.

    E acts on V (x) W, R on W (x) W.  psi_family("0,1,2") must return the
    associator on V (x) W (x) W and psi_family("01,2,3") the grouped one on
    (V (x) W) (x) W (x) W; families recompute with tensor-product
    representations on merged legs.  phi_family is accepted for interface
    completeness; the fixed parenthesization needs no Phi for n <= 3.
    """
    if n not in (1, 2, 3):
        raise ParameterError("n <= 3 strand budget (dimension grows fast)")
    dv, dw = dims
    if E.shape != (dv * dw, dv * dw):
        raise ShapeError(f"E must act on V (x) W = {dv * dw}, got {E.shape}")
    if R.shape != (dw * dw, dw * dw):
        raise ShapeError(f"R must act on W (x) W, got {R.shape}")
    total = dv * dw ** n
    if n == 1:
        rep = BraidRep(n=1, dim=total, rho1=E.copy(), sigma=[],
                       grouping="V.W", residuals={})
        rep.residuals = relation_residuals(rep)
        return rep
    sR = _sigma(dw) @ R
    eye_w = np.eye(dw)

    psi = psi_family("0,1,2")
    if psi.shape != (dv * dw * dw,) * 2:
        raise ShapeError("psi_family returned a wrong-sized associator")
    sigma1_small = np.linalg.solve(psi, np.kron(np.eye(dv), sR)) @ psi
    rho1 = np.kron(E, np.eye(dw ** (n - 1)))
    if n == 2:
        sigma = [sigma1_small]
    else:
        sigma1 = np.kron(sigma1_small, eye_w)
        psi_01 = psi_family("01,2,3")
        if psi_01.shape != (total,) * 2:
            raise ShapeError("grouped associator has a wrong size")
        sigma2 = np.linalg.solve(
            psi_01, np.kron(np.eye(dv * dw), sR)) @ psi_01
        sigma = [sigma1, sigma2]

    grouping = "(V.W).W" if n == 2 else "((V.W).W).W"
    rep = BraidRep(n=n, dim=total, rho1=rho1, sigma=sigma,
                   grouping=grouping, residuals={})
    rep.residuals = relation_residuals(rep)
    return rep


def _sigma(d):
    out = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            out[j * d + i, i * d + j] = 1.0
    return out


def relation_residuals(rep):
    """Residual norms of the Gamma_n relations, normalized by matrix scale."""
    out = {}

    def rel(name, A, B):
        scale = max(np.linalg.norm(A), np.linalg.norm(B), 1e-300)
        out[name] = float(np.linalg.norm(A - B) / scale)

    r, sig = rep.rho1, rep.sigma
    for i in range(len(sig)):
        for j in range(i + 2, len(sig)):
            rel(f"sigma_comm_{i + 1}_{j + 1}", sig[i] @ sig[j], sig[j] @ sig[i])
        if i + 1 < len(sig):
            rel(f"braid_{i + 1}_{i + 2}",
                sig[i] @ sig[i + 1] @ sig[i],
                sig[i + 1] @ sig[i] @ sig[i + 1])
        if i >= 1:
            rel(f"rho_sigma_comm_{i + 1}", r @ sig[i], sig[i] @ r)
    if sig:
        rel("type_b",
            r @ sig[0] @ r @ sig[0],
            sig[0] @ r @ sig[0] @ r)
    for i, s in enumerate(sig):
        if abs(np.linalg.det(s)) < 1e-12:
            raise ComparisonError(f"sigma_{i + 1} is not invertible")
    if abs(np.linalg.det(r)) < 1e-12:
        raise ComparisonError("rho_1 is not invertible")
    return out


def word_matrix(rep, word):
    """Evaluate a word given as tokens rho1 / sigma1 / sigma2 / ... ."""
    total = np.eye(rep.dim, dtype=complex)
    for tok in word:
        if tok in ("rho1", "r1", "rho"):
            total = total @ rep.rho1
        elif tok.startswith("sigma"):
            i = int(tok[len("sigma"):])
            if not 1 <= i <= len(rep.sigma):
                raise ParameterError(f"no generator {tok} at n={rep.n}")
            total = total @ rep.sigma[i - 1]
        else:
            raise ParameterError(f"unknown braid token {tok!r}")
    return total


# ---------------------------------------------------------------------------
# the two sides

def q_side_rep(N, p, t, h, n):
    """Coideal-side representation on V (x) W^n, V = W = fundamental.

    rho_1 is the Balagovic-Kolb braid in the fundamental representations,
    (pi (x) pi)(E) = q^{2/N} R_21 (1 (x) K) R, and sigma_i use the honest
    R-matrix q^{1/N} Sigma R; the bialgebra is strict so Psi = Phi = 1.
    """
    q = float(np.exp(h))
    kr = solve_kmatrix(N, p, t, q)
    R = r_matrix(N, q)
    scal = universal_r_scalar(N, q)
    R21 = permute_legs(R, (N, N), (1, 0))
    E = scal ** 2 * (R21 @ np.kron(np.eye(N), kr.K) @ R)

    def psi_one(grouping):
        d = N ** (len(grouping.split(",")) + (1 if "01" in grouping else 0))
        return np.eye(d, dtype=complex)

    rep = build_rep(E, scal * R, psi_one, psi_one, n, (N, N))
    return rep, kr


def kz_side_rep(N, p, s, mu, g, h, n, tol=1e-12):
    """KZ-side representation from (ribbon braid, Psi_{KZ,s;mu}, R_KZ, Phi_KZ)."""
    pr = realize(N, p)
    f = fundamental_rep(N)
    E = ribbon_kz(pr, (f, f), s, mu, h=h, central_g=g, variant="plain")
    R = r_kz(pr, (f, f), h)
    groupings = {
        "0,1,2": (f, f, f),
        "01,2,3": (tensor_rep(f, f), f, f),
    }

    def psi_fam(grouping):
        return psi_kz(pr, groupings[grouping], s, mu, h=h, tol=tol)

    def phi_fam(grouping):
        return phi_kz(pr, groupings[grouping], h, tol=tol)

    return build_rep(E, R, psi_fam, phi_fam, n, (N, N))


DEFAULT_WORDS = (
    ("rho1",),
    ("sigma1",),
    ("rho1", "sigma1"),
    ("rho1", "sigma1", "rho1", "sigma1"),
)


def kohno_drinfeld_compare(N, p, t=None, h=0.05, words=DEFAULT_WORDS, n=2,
                           tol=1e-12):
    """Trace comparison of braid words between the two quantizations.

    Fits (s, s+mu, g) from the solved K-matrix, builds both representations
    and returns the per-word traces with the maximal discrepancy.
    """
    if t is None:
        t = make_params(N, p)
    qrep, kr = q_side_rep(N, p, t, h, n)
    s = kr.inferred_s
    x = kr.inferred_s_plus_mu
    mu = complex(x) - s
    krep = kz_side_rep(N, p, s, mu, kr.fitted_g, h, n, tol=tol)

    rows = []
    worst = 0.0
    for word in words:
        tq = complex(np.trace(word_matrix(qrep, word)))
        tk = complex(np.trace(word_matrix(krep, word)))
        delta = abs(tq - tk)
        worst = max(worst, delta)
        rows.append({"word": list(word), "q_side": tq, "kz_side": tk,
                     "delta": delta})
    return {
        "words": rows,
        "max_delta": worst,
        "fit": {"s": s, "s_plus_mu": x, "g": kr.fitted_g},
        "q_residuals": qrep.residuals,
        "kz_residuals": krep.residuals,
        "det_rho1_q": complex(np.linalg.det(qrep.rho1)),
        "det_rho1_kz": complex(np.linalg.det(krep.rho1)),
    }
