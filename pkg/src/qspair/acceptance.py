"""The acceptance suite: every release-gating check with its pinned tolerance.

Each criterion is a function returning a dict with "passed", a short
"summary" and numeric "details"; the registry drives both the pytest module
and the CLI verify-all subcommand.  Tolerances are fixed here and nowhere
else.
"""

import numpy as np

from . import cohoch
from .braidb import kohno_drinfeld_compare, kz_side_rep, q_side_rep
from .kzmono import first_order_oracle, identity_residuals, psi_kz
from .sln import (
    coisotropy_residual,
    fix_theta_generator_residual,
    fundamental_rep,
    omega_pairing,
    r_rotation_residual,
    realize,
)
from .uqsl import (
    closed_form_kmatrix,
    cross_route_scalar,
    make_params,
    sl2_spherical,
    solve_kmatrix,
)

H_DEFAULT = 0.1
Q_DEFAULT = float(np.exp(H_DEFAULT))


def criterion_1_s_type_kmatrix():
    """S-type K-matrix at (4,2), q=e^0.1, s_p=0.3i vs the closed form."""
    tol = 1e-10
    t = make_params(4, 2, s_p=0.3j)
    kr = solve_kmatrix(4, 2, t, Q_DEFAULT)
    gap = float(np.max(np.abs(kr.K - closed_form_kmatrix(4, 2, t, Q_DEFAULT))))
    refl = kr.residuals["reflection"]
    return {
        "passed": gap <= tol and refl <= tol,
        "summary": f"entrywise gap {gap:.2e}, reflection {refl:.2e} (tol {tol:.0e})",
        "details": {"entrywise_gap": gap, "reflection_residual": refl,
                    "tolerance": tol},
    }


def criterion_2_c_type_kmatrix():
    """C-type K-matrix at (3,1), c_1 = q^(-1/2), vs lambda/mu_M formulas."""
    tol = 1e-10
    t = make_params(3, 1)
    kr = solve_kmatrix(3, 1, t, Q_DEFAULT)
    gap = float(np.max(np.abs(kr.K - closed_form_kmatrix(3, 1, t, Q_DEFAULT))))
    comm = kr.residuals["commutant"]
    return {
        "passed": gap <= tol and comm <= tol,
        "summary": f"entrywise gap {gap:.2e}, commutant {comm:.2e} (tol {tol:.0e})",
        "details": {"entrywise_gap": gap, "commutant_residual": comm,
                    "tolerance": tol},
    }


def criterion_3_parameter_formulas():
    """Eigenvalue-fitted s+mu equals the closed forms over a parameter sweep."""
    tol = 1e-9
    worst = 0.0
    cases = []
    for s_p in (0.0, 0.2j, -0.2j, 0.3j, -0.4j):
        t = make_params(4, 2, s_p=s_p)
        kr = solve_kmatrix(4, 2, t, Q_DEFAULT)
        gap = abs(kr.inferred_s_plus_mu - kr.closed_form_s_plus_mu)
        cases.append({"type": "S", "s_p": str(s_p), "gap": float(gap)})
        worst = max(worst, gap)
    for c in (None, 0.7, 1.0, 1.3, 2.0):
        t = make_params(3, 1) if c is None else make_params(3, 1, c_p0=c)
        kr = solve_kmatrix(3, 1, t, Q_DEFAULT)
        gap = abs(kr.inferred_s_plus_mu - kr.closed_form_s_plus_mu)
        cases.append({"type": "C", "c_p": "standard" if c is None else c,
                      "gap": float(gap)})
        worst = max(worst, gap)
    t0_gap = max(
        abs(solve_kmatrix(4, 2, make_params(4, 2), Q_DEFAULT).inferred_s_plus_mu),
        abs(solve_kmatrix(3, 1, make_params(3, 1), Q_DEFAULT).inferred_s_plus_mu),
    )
    passed = worst <= tol and t0_gap <= tol
    return {
        "passed": bool(passed),
        "summary": f"sweep worst gap {worst:.2e}, |s+mu| at t=0 {t0_gap:.2e}",
        "details": {"cases": cases, "t0_gap": float(t0_gap), "tolerance": tol},
    }


def criterion_4_first_order_expansion():
    """(Psi(h)-1)/h converges to the digamma oracle at first order in h."""
    pr = realize(2, 1)
    f = fundamental_rep(2)
    reps = (f, f, f)
    details = {}
    passed = True
    for s in (0.0, 0.4):
        oracle = first_order_oracle(pr, reps, s)
        errs = {}
        for h in (1e-2, 1e-3):
            psi = psi_kz(pr, reps, s, 0.0, h)
            errs[h] = float(np.linalg.norm((psi - np.eye(8)) / h - oracle))
        ratio = errs[1e-2] / errs[1e-3]
        ok = 5 <= ratio <= 20 and errs[1e-3] <= 10 * 1e-3
        passed = passed and ok
        details[f"s={s}"] = {"err_h_1e-2": errs[1e-2],
                             "err_h_1e-3": errs[1e-3], "ratio": ratio}
    return {
        "passed": bool(passed),
        "summary": ", ".join(
            f"s={k.split('=')[1]}: ratio {v['ratio']:.1f}"
            for k, v in details.items()),
        "details": details,
    }


def criterion_5_structural_identities():
    """Mixed pentagon, hexagons and ribbon-braid identities at N=2."""
    tol = 1e-8
    pr = realize(2, 1)
    f = fundamental_rep(2)
    res = identity_residuals(pr, (f, f), s=0.4, mu=0.0, h=0.05)
    worst = max(res.values())
    return {
        "passed": worst <= tol,
        "summary": f"worst residual {worst:.2e} (tol {tol:.0e})",
        "details": {**res, "tolerance": tol},
    }


def criterion_6_kohno_drinfeld_traces():
    """Trace match of braid words between the two sides at N=2, t=0."""
    tol = 1e-6
    out = kohno_drinfeld_compare(
        2, 1, None, h=0.05, n=2,
        words=(("rho1",), ("sigma1",), ("rho1", "sigma1"),
               ("rho1", "sigma1", "rho1", "sigma1")))
    return {
        "passed": out["max_delta"] <= tol,
        "summary": f"max trace discrepancy {out['max_delta']:.2e} (tol {tol:.0e})",
        "details": {"max_delta": out["max_delta"], "fit": {
            "s": out["fit"]["s"],
            "s_plus_mu": [out["fit"]["s_plus_mu"].real,
                          out["fit"]["s_plus_mu"].imag],
            "g": [out["fit"]["g"].real, out["fit"]["g"].imag]},
            "tolerance": tol},
    }


def criterion_7_gamma3_relations():
    """Gamma_3 relation residuals on both sides at N=2 (dimension 16)."""
    tol = 1e-8
    qrep, kr = q_side_rep(2, 1, make_params(2, 1), 0.05, 3)
    krep = kz_side_rep(2, 1, kr.inferred_s,
                       complex(kr.inferred_s_plus_mu) - kr.inferred_s,
                       kr.fitted_g, 0.05, 3)
    worst_q = max(qrep.residuals.values())
    worst_k = max(krep.residuals.values())
    return {
        "passed": worst_q <= tol and worst_k <= tol,
        "summary": f"q-side {worst_q:.2e}, kz-side {worst_k:.2e} (tol {tol:.0e})",
        "details": {"q_side": qrep.residuals, "kz_side": krep.residuals,
                    "dimension": qrep.dim, "tolerance": tol},
    }


def criterion_8_omega_pairing():
    """<Omega, t^{m+-}> = +- (i/2) dim m and <Omega, t^k> = 0."""
    tol = 1e-12
    details = {}
    passed = True
    for (N, p), dm in [((2, 1), 2), ((3, 1), 4), ((4, 2), 8)]:
        pr = realize(N, p)
        plus = omega_pairing(pr, pr.t_mplus)
        minus = omega_pairing(pr, pr.t_mminus)
        zero = omega_pairing(pr, pr.t_k)
        gaps = (abs(plus - 0.5j * dm), abs(minus + 0.5j * dm), abs(zero))
        passed = passed and max(gaps) <= tol
        details[f"({N},{p})"] = {"plus_gap": gaps[0], "minus_gap": gaps[1],
                                 "k_gap": gaps[2], "dim_m": dm}
    return {
        "passed": bool(passed),
        "summary": "all pairings within "
                   f"{max(max(v['plus_gap'], v['minus_gap'], v['k_gap']) for v in details.values()):.2e}",
        "details": {**details, "tolerance": tol},
    }


def criterion_9_cayley_checks():
    """Rotation/coisotropy residuals and the interpolated generator test."""
    tol_res = 1e-12
    tol_gen = 1e-10
    details = {}
    passed = True
    for N, p in [(4, 2), (3, 1)]:
        pr = realize(N, p)
        for phi in (0.3, 0.7, 1.0):
            rr = r_rotation_residual(pr, phi)
            cr = coisotropy_residual(pr, phi)
            ok = rr <= tol_res and cr <= tol_res
            passed = passed and ok
            details[f"({N},{p}) phi={phi}"] = {"rotation": rr, "coisotropy": cr}
        gen = fix_theta_generator_residual(pr, 0.7)
        passed = passed and gen <= tol_gen
        details[f"({N},{p}) generator"] = {"membership": gen}
    worst = max(max(v.values()) for v in details.values())
    return {
        "passed": bool(passed),
        "summary": f"worst residual {worst:.2e}",
        "details": {**details, "tolerances": [tol_res, tol_gen]},
    }


def criterion_10_cohochschild_dims():
    """Exact cohomology tables for sl2: full and Cartan-invariant."""
    cc = cohoch.build_complex(cohoch.sl2_data("zero"), 3, 4)
    dims = cohoch.cohomology_dims(cc)
    expected = {0: 1, 1: 3, 2: 3, 3: 1}
    ok_full = all(
        dims[(n, w)] == (expected[n] if n == w else 0)
        for n in range(4) for w in range(5)
    )
    cci = cohoch.build_complex(cohoch.sl2_data("cartan"), 3, 4)
    dimsi = cohoch.cohomology_dims(cci, invariant=True)
    h1 = sum(dimsi[(1, w)] for w in range(5))
    h2 = sum(dimsi[(2, w)] for w in range(5))
    ok_inv = h1 == 0 and h2 == 1 and dimsi[(2, 2)] == 1
    return {
        "passed": bool(ok_full and ok_inv),
        "summary": f"full table {'ok' if ok_full else 'WRONG'}, "
                   f"invariant H1={h1} H2={h2}",
        "details": {
            "full_diagonal": [dims[(n, n)] for n in range(4)],
            "invariant_h1": h1, "invariant_h2": h2,
        },
    }


def criterion_11_sl2_spherical_vector():
    """Rank-one spherical vector matches the lemma coefficients at n=1."""
    tol = 1e-12
    c, s = 0.7 + 0.2j, 0.3 - 0.1j
    q = Q_DEFAULT
    v = sl2_spherical(1, c, s, q)
    two = q + 1 / q
    expect = np.array([1.0, s * (1 - q * q) / (c * q * q * two),
                       1.0 / (c * q * q * two)])
    gap = float(np.max(np.abs(v - expect)))
    return {
        "passed": gap <= tol,
        "summary": f"coefficient gap {gap:.2e} (tol {tol:.0e})",
        "details": {"gap": gap, "tolerance": tol},
    }


def criterion_12_quasi_k_cross_route():
    """Quasi-K route agrees with the commutant route up to one unimodular
    scalar at (4,2), t=0."""
    tol = 1e-9
    scalar, gap = cross_route_scalar(4, 2, Q_DEFAULT)
    mod_gap = abs(abs(scalar) - 1)
    return {
        "passed": gap <= tol and mod_gap <= tol,
        "summary": f"entrywise gap {gap:.2e}, |scalar|-1 = {mod_gap:.2e}",
        "details": {"scalar": [scalar.real, scalar.imag],
                    "entrywise_gap": gap, "tolerance": tol},
    }


CRITERIA = [
    ("1", "AIII S-type K-matrix closed form", criterion_1_s_type_kmatrix),
    ("2", "AIII C-type K-matrix closed form", criterion_2_c_type_kmatrix),
    ("3", "parameter formulas s+mu", criterion_3_parameter_formulas),
    ("4", "Psi first-order digamma expansion", criterion_4_first_order_expansion),
    ("5", "pentagon/hexagon/ribbon identities", criterion_5_structural_identities),
    ("6", "Kohno-Drinfeld trace match", criterion_6_kohno_drinfeld_traces),
    ("7", "Gamma_3 relations both sides", criterion_7_gamma3_relations),
    ("8", "Omega-pairing values", criterion_8_omega_pairing),
    ("9", "Cayley rotation/coisotropy/generators", criterion_9_cayley_checks),
    ("10", "co-Hochschild dimension tables", criterion_10_cohochschild_dims),
    ("11", "sl2 spherical vector", criterion_11_sl2_spherical_vector),
    ("12", "quasi-K cross-route", criterion_12_quasi_k_cross_route),
]


def run_all(report=print):
    """Run every criterion, emit one line each, return the result list."""
    results = []
    for num, name, fn in CRITERIA:
        out = fn()
        out["criterion"] = num
        out["name"] = name
        results.append(out)
        status = "PASS" if out["passed"] else "FAIL"
        if report is not None:
            report(f"[{status}] criterion {num:>2}: {name}: {out['summary']}")
    return results
