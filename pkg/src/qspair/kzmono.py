"""Normalized monodromy of regular-singular ODEs and the KZ-type associators.

The generic engine integrates

    G'(w) = (A_{-1}/(w+1) + A_1/(w-1) + A_0/w) G(w)

by two-sided Frobenius series: H_0(w) = G_0(w) w^{-A_0} expanded at w = 0 and
H_1(u) = G_1(1-u) u^{-A_1} expanded at u = 0, both with radius 1, matched at
w = 1/2.  The normalized 0 -> 1 monodromy is

    Psi = G_1(1/2)^{-1} G_0(1/2)
        = (1/2)^{-A_1} H_1(1/2)^{-1} H_0(1/2) (1/2)^{A_0}.

Coefficients of each series solve Sylvester equations
(k - ad Lambda) H_k = RHS_k, done by diagonalizing Lambda once, with a dense
fallback when the eigenbasis is ill conditioned.

On top of the engine sit the cyclotomic associator Psi_{KZ,s;mu}, Drinfeld's
Phi_KZ, the R-matrix exp(-h t^u), the ribbon (sigma-)braids, the first-order
digamma oracle and the residual checks of the quasi-coaction and ribbon-braid
identities.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import digamma

from .errors import DomainError, ParameterError, ResonanceError, TruncationError
from .sln import (
    build_leg_tensor,
    group_image,
    permute_legs,
    place_on_legs,
    tensor_rep,
)

EULER_GAMMA = 0.5772156649015328606

RESONANCE_THRESHOLD = 1e-8
EIG_COND_LIMIT = 1e8


@dataclass
class KZProblem:
    A_minus1: np.ndarray
    A_0: np.ndarray
    A_1: np.ndarray
    tol: float = 1e-12
    max_order: int = 200

    def __post_init__(self):
        shapes = {m.shape for m in (self.A_minus1, self.A_0, self.A_1)}
        if len(shapes) != 1:
            raise ParameterError(f"coefficient matrices differ in shape: {shapes}")
        if self.tol <= 0:
            raise ParameterError("tol must be positive")


@dataclass
class AssociatorResult:
    psi: np.ndarray
    order_used: int
    tail_estimate: float


class _Sylvester:
    """Solver for (k - ad Lambda) X = R, k = 1, 2, ...

    Diagonalizes Lambda once; if the eigenbasis is ill conditioned, falls
    back to an LU solve of the Kronecker form per order k.
    """

    def __init__(self, Lambda):
        self.Lambda = Lambda
        self.n = Lambda.shape[0]
        vals, vecs = np.linalg.eig(Lambda)
        cond = np.linalg.cond(vecs)
        self.diag_ok = np.isfinite(cond) and cond < EIG_COND_LIMIT
        self.eigdiff = vals[:, None] - vals[None, :]
        if self.diag_ok:
            self.V = vecs
            self.Vinv = np.linalg.inv(vecs)

    def check_resonances(self, max_order):
        """Error out if some k in 1..max_order is within the resonance
        threshold of an eigenvalue difference of ad Lambda."""
        diffs = self.eigdiff.ravel()
        for d in diffs:
            k = int(round(d.real))
            if 1 <= k <= max_order and abs(k - d) < RESONANCE_THRESHOLD:
                raise ResonanceError(k, f"eigenvalue difference {d:.3e}")

    def solve(self, k, R):
        if self.diag_ok:
            Rt = self.Vinv @ R @ self.V
            Xt = Rt / (k - self.eigdiff)
            return self.V @ Xt @ self.Vinv
        n = self.n
        eye = np.eye(n)
        op = k * np.eye(n * n) - (np.kron(self.Lambda, eye) - np.kron(eye, self.Lambda.T))
        return np.linalg.solve(op, R.reshape(-1)).reshape(n, n)


def _series_sum_at_half(Lambda, b_coeff, tol, max_order):
    """Sum H(1/2) for H' = [Lambda/w, H] + B(w) H, H(0) = 1, B(w) = sum B_m w^m.

    Returns (value, order_used, tail_estimate).  The recursion is

        (k+1) H_{k+1} - ad(Lambda) H_{k+1} = sum_{m=0}^{k} B_m H_{k-m}.

    Contributions ||H_k|| 2^{-k} decay geometrically (singularities sit at
    distance 1); the tail bound extrapolates the last contribution with
    ratio 3/4.
    """
    n = Lambda.shape[0]
    syl = _Sylvester(Lambda)
    syl.check_resonances(max_order)
    H = [np.eye(n, dtype=complex)]
    total = np.eye(n, dtype=complex)
    w = 0.5
    scale = max(1.0, float(np.linalg.norm(Lambda)))
    below = 0
    for k in range(max_order):
        rhs = np.zeros((n, n), dtype=complex)
        for m in range(k + 1):
            rhs += b_coeff(m) @ H[k - m]
        Hk1 = syl.solve(k + 1, rhs)
        H.append(Hk1)
        contrib = Hk1 * w ** (k + 1)
        total += contrib
        c = float(np.linalg.norm(contrib))
        if c < tol / 10:
            below += 1
            if below >= 3:
                tail = 3.0 * c
                return total, k + 1, tail
        else:
            below = 0
    tail = 3.0 * float(np.linalg.norm(H[-1])) * w ** max_order
    raise TruncationError(tail, max_order)


def _matrix_power_half(A):
    """(1/2)^A = exp(A log(1/2)) with the principal branch."""
    return expm(np.log(0.5) * A)


def frobenius_monodromy(prob):
    """Normalized monodromy Psi = G_1(1/2)^{-1} G_0(1/2) of the problem."""
    Am1, A0, A1 = (np.asarray(prob.A_minus1, dtype=complex),
                   np.asarray(prob.A_0, dtype=complex),
                   np.asarray(prob.A_1, dtype=complex))

    # H_0: B(w) = A_{-1}/(w+1) + A_1/(w-1) => B_m = (-1)^m A_{-1} - A_1
    def b0(m):
        return ((-1) ** m) * Am1 - A1

    # H_1: with u = 1 - w, B(u) = -A_{-1}/(2-u) - A_0/(1-u)
    #      => B_m = -A_{-1} 2^{-(m+1)} - A_0
    def b1(m):
        return -Am1 * (0.5 ** (m + 1)) - A0

    H0_half, k0, tail0 = _series_sum_at_half(A0, b0, prob.tol, prob.max_order)
    H1_half, k1, tail1 = _series_sum_at_half(A1, b1, prob.tol, prob.max_order)

    G0 = H0_half @ _matrix_power_half(A0)
    G1 = H1_half @ _matrix_power_half(A1)
    psi = np.linalg.solve(G1, G0)
    return AssociatorResult(psi=psi, order_used=max(k0, k1),
                            tail_estimate=max(tail0, tail1))


# ---------------------------------------------------------------------------
# the cyclotomic KZ associator and friends

def _hbar(h):
    return h / (np.pi * 1j)


def psi_kz(pr, reps, s, mu=0.0, h=0.05, tol=1e-12, max_order=200, max_h=0.1):
    """Psi_{KZ,s;mu} on legs (0,1,2); leg 0 carries the coideal-side module.

    The coefficients only ever involve s + mu, so the two parameters are
    collapsed before integration.
    """
    if abs(h) > max_h:
        raise ParameterError(f"|h| = {abs(h)} exceeds max_h = {max_h}")
    if len(reps) != 3:
        raise ParameterError("psi_kz needs exactly three representations")
    x = complex(s) + complex(mu)
    hb = _hbar(h)
    tk12 = build_leg_tensor(pr, "t_k", reps, (1, 2)).data
    tm12 = (build_leg_tensor(pr, "t_mplus", reps, (1, 2)).data
            + build_leg_tensor(pr, "t_mminus", reps, (1, 2)).data)
    tu12 = build_leg_tensor(pr, "t_u", reps, (1, 2)).data
    tk01 = build_leg_tensor(pr, "t_k", reps, (0, 1)).data
    ck1 = build_leg_tensor(pr, "casimir_k", reps, (1,)).data
    z1 = build_leg_tensor(pr, "Z", reps, (1,)).data

    prob = KZProblem(
        A_minus1=hb * (tk12 - tm12),
        A_0=hb * (2 * tk01 + ck1) + x * z1,
        A_1=hb * tu12,
        tol=tol, max_order=max_order,
    )
    return frobenius_monodromy(prob).psi


def phi_kz(pr, reps, h, tol=1e-12, max_order=200):
    """Drinfeld's KZ associator Phi(hbar t_12, hbar t_23) on three legs."""
    if len(reps) != 3:
        raise ParameterError("phi_kz needs exactly three representations")
    hb = _hbar(h)
    t12 = build_leg_tensor(pr, "t_u", reps, (0, 1)).data
    t23 = build_leg_tensor(pr, "t_u", reps, (1, 2)).data
    prob = KZProblem(
        A_minus1=np.zeros_like(t12),
        A_0=hb * t12,
        A_1=hb * t23,
        tol=tol, max_order=max_order,
    )
    return frobenius_monodromy(prob).psi


def r_kz(pr, reps, h):
    """R_KZ = exp(-h t^u) on a pair of legs."""
    if len(reps) != 2:
        raise ParameterError("r_kz needs exactly two representations")
    tu = build_leg_tensor(pr, "t_u", reps, (0, 1)).data
    return expm(-h * tu)


def central_scalar_matrix(pr, rep, zeta):
    """Image under rep of the central element zeta * I of SU(N).

    zeta must be an N-th root of unity; the element is realized as
    exp(X) for the traceless X = (2 pi i k / N)(I - N e_NN ... ) trick so the
    image is consistent across tensor-power representations.
    """
    N = pr.N
    k = int(round(np.angle(zeta) * N / (2 * np.pi))) % N
    if abs(zeta - np.exp(2j * np.pi * k / N)) > 1e-9:
        raise ParameterError(f"{zeta} is not an N-th root of unity for N={N}")
    if k == 0:
        return np.eye(rep.dim, dtype=complex)
    X = np.diag([2j * np.pi * k / N] * N).astype(complex)
    X[N - 1, N - 1] -= 2j * np.pi * k
    return expm(rep.rho(X))


def ribbon_kz(pr, reps, s, mu=0.0, h=0.05, central_g=1.0, variant="sigma"):
    """Ribbon twist-braid on legs (0,1).

    variant "sigma":   exp(-h(2 t^k_01 + C^k_1) - pi i (s+mu) Z_1) g_1,
    variant "plain":   exp(-h(2 t^k_01 + C^k_1) + pi (1 - i s - i mu) Z_1) g_1,
    variant "nonhermitian": exp(-h(2 t^k_01 + C^k_1)) g_1.

    central_g is a scalar in Z(SU(N)) placed on leg 1.
    """
    if len(reps) != 2:
        raise ParameterError("ribbon_kz needs exactly two representations")
    x = complex(s) + complex(mu)
    tk01 = build_leg_tensor(pr, "t_k", reps, (0, 1)).data
    ck1 = build_leg_tensor(pr, "casimir_k", reps, (1,)).data
    z1 = build_leg_tensor(pr, "Z", reps, (1,)).data
    expo = -h * (2 * tk01 + ck1)
    if variant == "sigma":
        expo = expo - 1j * np.pi * x * z1
    elif variant == "plain":
        expo = expo + np.pi * (1 - 1j * x) * z1
    elif variant != "nonhermitian":
        raise ParameterError(f"unknown ribbon variant {variant!r}")
    g1 = place_on_legs({1: central_scalar_matrix(pr, reps[1], central_g)},
                       tuple(r.dim for r in reps))
    return expm(expo) @ g1


def first_order_oracle(pr, reps, s):
    """The exact order-h coefficient of Psi_{KZ,s}:

    (1/pi i) [ log(2) t^u_12 + (gamma + psi(1/2 - is/2)) t^{m+}_12
                             + (gamma + psi(1/2 + is/2)) t^{m-}_12 ].
    """
    z1 = 0.5 - 0.5j * complex(s)
    z2 = 0.5 + 0.5j * complex(s)
    for z in (z1, z2):
        if abs(z - round(z.real)) < 1e-12 and z.real <= 0:
            raise DomainError(f"digamma pole at {z}")
    tu = build_leg_tensor(pr, "t_u", reps, (1, 2)).data
    tp = build_leg_tensor(pr, "t_mplus", reps, (1, 2)).data
    tm = build_leg_tensor(pr, "t_mminus", reps, (1, 2)).data
    c_plus = EULER_GAMMA + complex(digamma(z1))
    c_minus = EULER_GAMMA + complex(digamma(z2))
    return (np.log(2.0) * tu + c_plus * tp + c_minus * tm) / (np.pi * 1j)


def first_order_oracle_s_derivative(pr, reps, s):
    """d/ds of the order-h coefficient, via trigamma and sech^2:

    (1/4 pi)(psi'(1/2 + is/2) - psi'(1/2 - is/2)) t^m_12
      - (pi/4) sech^2(pi s / 2) (t^{m+}_12 - t^{m-}_12).
    """
    import mpmath
    tp = build_leg_tensor(pr, "t_mplus", reps, (1, 2)).data
    tm = build_leg_tensor(pr, "t_mminus", reps, (1, 2)).data
    s = complex(s)
    tri = lambda z: complex(mpmath.polygamma(1, mpmath.mpc(z)))
    coeff_m = (tri(0.5 + 0.5j * s) - tri(0.5 - 0.5j * s)) / (4 * np.pi)
    sech2 = 1.0 / np.cosh(np.pi * s / 2) ** 2
    return coeff_m * (tp + tm) - (np.pi / 4) * sech2 * (tp - tm)


# ---------------------------------------------------------------------------
# identity residuals

def _perm_matrix(mat, dims, placement):
    """Place the tensor legs of mat so that old leg i sits at placement[i]."""
    n = len(dims)
    perm = [0] * n
    for old, new in enumerate(placement):
        perm[new] = old
    return permute_legs(mat, [dims[perm[i]] for i in range(n)], perm)


def sigma_conjugator(pr, rep):
    """Matrix of exp(pi Z_nu) in the representation; Ad of it is sigma."""
    return group_image(rep, expm(np.pi * pr.Znu))


def identity_residuals(pr, reps, s, mu=0.0, h=0.05, tol=1e-12, max_order=200,
                       central_g=1.0):
    """Residual norms of the structural identities for the KZ data.

    Returns a dict with keys mixed_pentagon, ribbon_coproduct_1,
    ribbon_coproduct_2, hexagon_1, hexagon_2, psi_intertwiner.  The ribbon
    identities are checked for the sigma-braid E = ribbon_kz(..., "sigma")
    with beta = sigma = Ad exp(pi Z).
    """
    rep0, repW = reps
    f = repW
    tf = tensor_rep(rep0, f)    # merged (0,1)
    ff = tensor_rep(f, f)       # merged pair of G-legs

    kw = dict(h=h, tol=tol, max_order=max_order)

    # --- mixed pentagon on legs (0,1,2,3)
    psi_012 = psi_kz(pr, (rep0, f, f), s, mu, **kw)
    phi = phi_kz(pr, (f, f, f), h, tol=tol, max_order=max_order)
    dims4 = (rep0.dim, f.dim, f.dim, f.dim)
    d4 = int(np.prod(dims4))

    psi_0_12_3 = psi_kz(pr, (rep0, ff, f), s, mu, **kw)          # on V,(WW),W
    psi_0_1_23 = psi_kz(pr, (rep0, f, ff), s, mu, **kw)
    psi_01_2_3 = psi_kz(pr, (tf, f, f), s, mu, **kw)
    psi_012_I = np.kron(psi_012, np.eye(f.dim))
    phi_123 = np.kron(np.eye(rep0.dim), phi)
    lhs = phi_123 @ psi_0_12_3 @ psi_012_I
    rhs = psi_0_1_23 @ psi_01_2_3
    mixed_pentagon = np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs)

    # --- ribbon identities on legs (0,1,2), beta = sigma
    dims3 = (rep0.dim, f.dim, f.dim)
    E = ribbon_kz(pr, (rep0, f), s, mu, h=h, central_g=central_g,
                  variant="sigma")
    E_01_2 = ribbon_kz(pr, (tf, f), s, mu, h=h, central_g=central_g,
                       variant="sigma")       # (alpha (x) id)(E)
    E_0_12 = ribbon_kz(pr, (rep0, ff), s, mu, h=h, central_g=central_g,
                       variant="sigma")       # (id (x) Delta)(E)
    R = r_kz(pr, (f, f), h)
    R_12 = np.kron(np.eye(rep0.dim), R)
    R_21 = np.kron(np.eye(rep0.dim), permute_legs(R, (f.dim, f.dim), (1, 0)))
    psi = psi_012
    psi_021 = permute_legs(psi, dims3, (0, 2, 1))
    E_02 = _embed_two_leg(E, dims3, 0, 2)
    E_01 = _embed_two_leg(E, dims3, 0, 1)
    u = sigma_conjugator(pr, f)
    C2 = place_on_legs({2: u}, dims3)
    C2i = place_on_legs({2: np.linalg.inv(u)}, dims3)
    C12 = place_on_legs({1: u, 2: u}, dims3)
    C12i = place_on_legs({1: np.linalg.inv(u), 2: np.linalg.inv(u)}, dims3)

    beta2 = lambda M: C2 @ M @ C2i
    inner = beta2(np.linalg.solve(psi_021, R_12 @ psi))
    rhs1 = np.linalg.solve(psi, R_21 @ psi_021 @ E_02 @ inner)
    ribbon_1 = np.linalg.norm(E_01_2 - rhs1) / np.linalg.norm(rhs1)

    rhs2 = (R_21 @ psi_021 @ E_02 @ inner @ E_01
            @ C12 @ np.linalg.inv(psi) @ C12i)
    ribbon_2 = np.linalg.norm(E_0_12 - rhs2) / np.linalg.norm(rhs2)

    # --- hexagons for (Phi_KZ, R_KZ) on W^3
    dimsW = (f.dim, f.dim, f.dim)
    tu13 = build_leg_tensor(pr, "t_u", (f, f, f), (0, 2)).data
    tu23 = build_leg_tensor(pr, "t_u", (f, f, f), (1, 2)).data
    tu12 = build_leg_tensor(pr, "t_u", (f, f, f), (0, 1)).data
    Rd13 = expm(-h * tu13)
    lhs_h1 = expm(-h * (tu13 + tu23))           # (Delta (x) id)(R)
    R23 = np.kron(np.eye(f.dim), R)
    R12f = np.kron(R, np.eye(f.dim))
    P = lambda order: _perm_matrix(phi, dimsW, order)
    # (Delta (x) id)(R) = Phi_312 R_13 Phi_132^{-1} R_23 Phi_123
    rhs_h1 = P((2, 0, 1)) @ Rd13 @ np.linalg.inv(P((0, 2, 1))) @ R23 @ phi
    hexagon_1 = np.linalg.norm(lhs_h1 - rhs_h1) / np.linalg.norm(rhs_h1)
    # (id (x) Delta)(R) = Phi_231^{-1} R_13 Phi_213 R_12 Phi_123^{-1}
    lhs_h2 = expm(-h * (tu12 + tu13))
    rhs_h2 = (np.linalg.inv(P((1, 2, 0))) @ Rd13 @ P((1, 0, 2)) @ R12f
              @ np.linalg.inv(phi))
    hexagon_2 = np.linalg.norm(lhs_h2 - rhs_h2) / np.linalg.norm(rhs_h2)

    # --- k-invariance of Psi (the alpha = Delta intertwiner identity)
    worst = 0.0
    for X in _k_basis_matrices(pr):
        D = sum(
            place_on_legs({i: r.rho(X)}, dims3)
            for i, r in enumerate((rep0, f, f))
        )
        worst = max(worst, float(np.linalg.norm(psi @ D - D @ psi)))
    psi_intertwiner = worst / np.linalg.norm(psi)

    return {
        "mixed_pentagon": float(mixed_pentagon),
        "ribbon_coproduct_1": float(ribbon_1),
        "ribbon_coproduct_2": float(ribbon_2),
        "hexagon_1": float(hexagon_1),
        "hexagon_2": float(hexagon_2),
        "psi_intertwiner": float(psi_intertwiner),
    }


def _embed_two_leg(E, dims, i, j):
    """Place a two-leg operator E on legs (i, j) of a product with dims."""
    n = len(dims)
    full = np.kron(E, np.eye(int(np.prod([d for k, d in enumerate(dims)
                                          if k not in (i, j)]))))
    # full acts on legs ordered (i, j, rest...); permute into place
    order = [i, j] + [k for k in range(n) if k not in (i, j)]
    dims_ordered = [dims[k] for k in order]
    placement = [0] * n
    for pos, leg in enumerate(order):
        placement[leg] = pos
    perm = [placement[k] for k in range(n)]
    return permute_legs(full, dims_ordered, perm)


def _k_basis_matrices(pr):
    N, p = pr.N, pr.p
    out = []
    for i in range(N):
        for j in range(N):
            if i != j and ((i < p) == (j < p)):
                m = np.zeros((N, N), dtype=complex)
                m[i, j] = 1
                out.append(m)
    for i in range(N - 1):
        m = np.zeros((N, N), dtype=complex)
        m[i, i] = 1
        m[i + 1, i + 1] = -1
        out.append(m)
    return out
