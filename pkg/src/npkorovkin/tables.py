"""Table generation, property suites and the reproduce-all driver.

Every ``cmd_*`` function returns a :class:`ReportTable` whose ``notes``
carry a list of :class:`Check` verdicts. Golden checks compare against the
reference values below; informational checks are reported but never fail a
run.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import grunwald as gr
from . import kantorovich as ka
from .chebyshev import cardinal_matrix, chebyshev_grid
from .errors import ArgumentError
from .extended import (hn_values, kn_values, l1_on_window, product_spectrum, rate_report,
                       auto_truncation)
from .fourier import FourierConvention, Spectrum, fourier_transform
from .functions import (SYMMETRIC, abs_centred, bump_transform, example, gaussian_spectrum, monomial,
                        tent)
from .numerics import Interval, QuadratureSpec, modulus_from_samples, modulus_of_continuity
from .report import Column, ReportTable

# Published values the tables are compared against.
REFERENCE_NU = {10: 0.223973, 22: 0.1359174, 57: 0.06397026, 101: 0.044366868,
                203: 0.018509, 543: 0.00805148}
REFERENCE_OMEGA = {
    "tent": {10: 0.4444, 22: 0.242424, 57: 0.121212, 101: 0.080808, 203: 0.032064128,
             543: 0.01603206412},
    "cubic-spline-like": {10: 0.05048237, 22: 0.03452337, 57: 0.01965476, 101: 0.01366795,
                          203: 0.00579762, 543: 0.002946137},
}
REFERENCE_OMEGA_FT = {
    "tent": {10: 0.004060488107, 22: 0.002333738037, 57: 0.0012052788281, 101: 0.0007385178853,
             203: 0.00032657475, 543: 0.000148752398},
    "cubic-spline-like": {10: 0.001574275979, 22: 0.000903234267, 57: 0.000464745735,
                          101: 0.00028451126, 203: 0.0001257120959, 543: 0.00005724135},
}
REFERENCE_XI = {100: 0.04436868245, 200: 0.01970873322, 300: 0.01513454629, 400: 0.01448400327,
                500: 0.011950746336, 600: 0.010190080703, 700: 0.009029628692, 800: 0.008142319697,
                900: 0.007361966592, 1000: 0.003879745159}
XI_GOLDEN = (100, 200, 300, 400, 500)
REFERENCE_KN = {
    1.0: {50: 0.15509756 + 4.9677361e-15j, 100: 0.15515498 + 2.968903571e-15j,
          200: 0.155169346 - 1.47290502e-15j, 300: 0.1551720046 + 5.9769031e-15j,
          400: 0.1551729368 + 3.46106193e-15j, 500: 0.1551733674 + 1.11732524e-16j},
    math.pi / 4: {50: 0.132503942 - 0.046439j, 100: 0.1325853 - 0.04646751j,
                  200: 0.13260566 - 0.0464746492j, 300: 0.13260943 - 0.0464759714j,
                  400: 0.132610751 - 0.04647643j, 500: 0.13261136 - 0.0464766j},
    1.5: {50: 0.095911405 + 0.0959114j, 100: 0.09583492 + 0.09583492j,
          200: 0.09581573 + 0.09581573j, 300: 0.09581217 + 0.09581217j,
          400: 0.09581093 + 0.09581093j, 500: 0.0958104 + 0.09581036j},
}
NU_LIST = tuple(REFERENCE_NU)
XI_LIST = tuple(REFERENCE_XI)
KN_P = (1.0, math.pi / 4, 1.5)
KN_NM = tuple((n, n) for n in (50, 100, 200, 300, 400, 500))
FORWARD_SCALES = (1.0, 1.0 / math.sqrt(2.0 * math.pi))

NU_TOL = 0.005
OMEGA_TENT_TOL = 0.02
OMEGA_CUBIC_TOL = 0.05
OMEGA_FT_TOL = 0.20
XI_TOL = 0.02
KN_CAUCHY_TOL = 1e-5
KN_IM_TOL = 1e-10
KN_DIAGONAL_TOL = 1e-6


@dataclass
class RunConfig:
    """Settings shared by all commands.

    ``l_truncation`` is ``None`` (use each table's own window count),
    ``"auto"`` (size from the spectrum) or an integer.
    """

    grid_step: float = math.pi * 1e-5
    quad_tol: float = 1e-10
    l_truncation: int | str | None = None
    convention: FourierConvention = field(default_factory=FourierConvention)
    out_dir: Path = Path("out")
    emit_svg: bool = False
    omega_window_m: int = 4
    workers: int = 4

    def __post_init__(self):
        if not self.grid_step > 0 or not self.quad_tol > 0:
            raise ArgumentError("grid_step and quad_tol must be > 0")
        lt = self.l_truncation
        if lt is not None and lt != "auto" and (isinstance(lt, bool) or int(lt) != lt or int(lt) < 0):
            raise ArgumentError("l_truncation must be 'auto' or a non-negative integer")
        self.out_dir = Path(self.out_dir)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["out_dir"] = str(self.out_dir)
        d["convention"] = self.convention.label()
        return d


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    bound: float
    passed: bool
    golden: bool = True
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "bound", float(self.bound))
        object.__setattr__(self, "passed", bool(self.passed))
        if self.n is not None:
            object.__setattr__(self, "n", int(self.n))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def _pmap(cfg: RunConfig, fn, items):
    items = list(items)
    if cfg.workers <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(fn, items))


def checks_of(table: ReportTable) -> list[Check]:
    return table.notes.setdefault("checks", [])


def golden_passed(table: ReportTable) -> bool:
    return all(c.passed for c in checks_of(table) if c.golden)


def _ft_modulus(f, delta_list, cfg: RunConfig, step: float = 1e-3) -> list[float]:
    """``omega(F(f), delta)`` on ``[-(m+1) pi, (m+1) pi]`` for each delta."""
    lim = (cfg.omega_window_m + 1) * math.pi
    count = int(math.ceil(2 * lim / step))
    theta = np.linspace(-lim, lim, count + 1)
    vals = fourier_transform(f, theta, QuadratureSpec(abs_tol=cfg.quad_tol), cfg.convention)
    h = 2 * lim / count
    return [modulus_from_samples(vals, h, d) for d in delta_list]


def cmd_nu_table(example_name: str, n_list=NU_LIST, cfg: RunConfig | None = None) -> ReportTable:
    """``nu_n``, ``omega(f, nu_n)`` and ``omega(F(f), nu_n)`` per order."""
    cfg = cfg or RunConfig()
    f = example(example_name)
    n_list = [int(n) for n in n_list]
    nus = _pmap(cfg, lambda n: gr.nu_n(n, cfg.grid_step), n_list)
    # same relative resolution on [-1, 1] as on [0, pi]
    x_step = cfg.grid_step * f.domain.length / math.pi
    om = [modulus_of_continuity(f, v, f.domain, x_step) for v in nus]
    omf = _ft_modulus(f, nus, cfg)
    slug = "tent" if example_name == "tent" else "cubic"
    table = ReportTable(f"nu_{slug}", [Column("n", "1", "int"), Column("nu_n", "1"),
                                       Column("omega_f", "1"), Column("omega_Ff", "1")])
    for row in zip(n_list, nus, om, omf):
        table.add(*row)
    _nu_checks(table, example_name)
    return table


def _nu_checks(table: ReportTable, example_name: str):
    out = checks_of(table)
    ref_om = REFERENCE_OMEGA[example_name]
    ref_ft = REFERENCE_OMEGA_FT[example_name]
    rows = table.rows
    for n, nu, om, _ in rows:
        if n in REFERENCE_NU:
            out.append(Check("nu_n rel. error", _rel(nu, REFERENCE_NU[n]), NU_TOL,
                             _rel(nu, REFERENCE_NU[n]) <= NU_TOL, n=n))
        if n in ref_om:
            if example_name == "tent":
                target, tol = max(ref_om[n], 2 * nu), OMEGA_TENT_TOL
            else:
                target, tol = ref_om[n], OMEGA_CUBIC_TOL
            e = _rel(om, target)
            out.append(Check("omega_f rel. error", e, tol, e <= tol, n=n))
    ratios = [r[3] / r[1] for r in rows]
    if ratios:
        spread = max(ratios) / min(ratios) - 1.0
        out.append(Check("omega_Ff/nu_n spread", spread, OMEGA_FT_TOL, spread <= OMEGA_FT_TOL))
    ref_rows = [r for r in rows if r[0] in ref_ft]
    for a, b in zip(ref_rows[:-1], ref_rows[1:]):
        ours = a[3] / b[3]
        theirs = ref_ft[a[0]] / ref_ft[b[0]]
        e = _rel(ours, theirs)
        out.append(Check(f"omega_Ff row ratio {a[0]}->{b[0]}", e, OMEGA_FT_TOL, e <= OMEGA_FT_TOL, n=b[0]))


def cmd_xi_table(n_list=XI_LIST, cfg: RunConfig | None = None) -> ReportTable:
    cfg = cfg or RunConfig()
    n_list = [int(n) for n in n_list]
    xis = _pmap(cfg, lambda n: gr.xi_n(n, cfg.grid_step), n_list)
    table = ReportTable("xi", [Column("n", "1", "int"), Column("xi_n", "rad")])
    for row in zip(n_list, xis):
        table.add(*row)
    out = checks_of(table)
    for n, xi in table.rows:
        if n in REFERENCE_XI:
            e = _rel(xi, REFERENCE_XI[n])
            out.append(Check("xi_n rel. error", e, XI_TOL, e <= XI_TOL, golden=n in XI_GOLDEN, n=n))
    gold = [xi for n, xi in table.rows if n in XI_GOLDEN]
    dec = all(b < a for a, b in zip(gold[:-1], gold[1:]))
    out.append(Check("xi_n strictly decreasing", float(dec), 1.0, dec))
    return table


def kn_variants(cfg: RunConfig) -> list[FourierConvention]:
    """Convention variants scanned by the K table; the configured one comes first."""
    base = cfg.convention
    seen = [base]
    for freq in ("angular", "ordinary"):
        for mode in ("exact-exponential", "alternating-sign"):
            for fs in FORWARD_SCALES:
                c = FourierConvention(fs, base.inverse_scale, mode, freq)
                if c not in seen:
                    seen.append(c)
    return seen


def _kn_m(cfg: RunConfig, m: int, g) -> int:
    if cfg.l_truncation is None:
        return m
    if cfg.l_truncation == "auto":
        return auto_truncation(g)
    return int(cfg.l_truncation)


def cmd_kn_table(p_list=KN_P, nm_list=KN_NM, cfg: RunConfig | None = None) -> ReportTable:
    """``K_{n,m}`` of the Gaussian at each ``p`` for every convention variant.

    ``ref_dist`` is the distance to the reference value where one exists;
    ``best_match`` flags the variant closest to the reference ``p = 1`` column.
    """
    cfg = cfg or RunConfig()
    p_list = [float(p) for p in p_list]
    variants = kn_variants(cfg)
    rows = []
    dist = []
    dist_all = []
    for conv in variants:
        g = gaussian_spectrum(conv.forward_scale, conv.frequency)
        d2 = d2_all = 0.0
        for n, m in nm_list:
            mm = _kn_m(cfg, m, g)
            vals = kn_values(int(n), g, p_list, mm, "quadrature", conv)
            for p, v in zip(p_list, vals):
                ref = _kn_reference(p, n)
                pd = abs(v - ref) if ref is not None else math.nan
                if ref is not None:
                    d2_all += pd**2
                    if math.isclose(p, 1.0):
                        d2 += pd**2
                rows.append([int(n), mm, p, complex(v), conv.frequency, conv.phase_mode,
                             conv.forward_scale, pd, 0])
        dist.append(math.sqrt(d2))
        dist_all.append(math.sqrt(d2_all))
    # integer p cannot tell the phase modes apart; the other columns break the tie
    near = [i for i, d in enumerate(dist) if d <= min(dist) + 1e-12]
    best = variants[min(near, key=lambda i: dist_all[i])]
    table = ReportTable("kn", [Column("n", "1", "int"), Column("m", "1", "int"), Column("p", "1"),
                               Column("K", "1", "complex"), Column("frequency", "-", "text"),
                               Column("phase_mode", "-", "text"), Column("forward_scale", "1"),
                               Column("ref_dist", "1"), Column("best_match", "1", "int")])
    for r in rows:
        r[8] = int(r[4] == best.frequency and r[5] == best.phase_mode and r[6] == best.forward_scale)
        table.add(*r)
    table.notes["best_convention"] = best.label()
    table.notes["best_distance"] = float(min(dist))
    _kn_checks(table, best, cfg)
    return table


def _kn_reference(p: float, n: int):
    for key, col in REFERENCE_KN.items():
        if math.isclose(p, key, rel_tol=1e-12):
            return col.get(n)
    return None


def _kn_checks(table: ReportTable, best: FourierConvention, cfg: RunConfig):
    """Cauchy, imaginary-part and diagonal properties in alternating mode.

    They are evaluated in the frequency variable and scale of the best match.
    """
    out = checks_of(table)
    conv = replace(best, phase_mode="alternating-sign")
    g = gaussian_spectrum(conv.forward_scale, conv.frequency)
    k500 = kn_values(500, g, list(KN_P), _kn_m(cfg, 500, g), "quadrature", conv)
    k400 = kn_values(400, g, list(KN_P), _kn_m(cfg, 400, g), "quadrature", conv)
    for p, a, b in zip(KN_P, k500, k400):
        out.append(Check(f"|K500-K400| at p={p:.6g}", abs(a - b), KN_CAUCHY_TOL, abs(a - b) < KN_CAUCHY_TOL))
    out.append(Check("|im K500(1)|", abs(k500[0].imag), KN_IM_TOL, abs(k500[0].imag) < KN_IM_TOL))
    d = abs(k500[2].real - k500[2].imag)
    out.append(Check("|re-im| K500(1.5)", d, KN_DIAGONAL_TOL, d < KN_DIAGONAL_TOL))


def _rows_table(name: str, checks: list[Check]) -> ReportTable:
    t = ReportTable(name, [Column("check", "-", "text"), Column("n", "1", "int"), Column("value", "1"),
                           Column("bound", "1"), Column("passed", "1", "int"), Column("golden", "1", "int")])
    for c in checks:
        t.add(c.name, -1 if c.n is None else c.n, c.value, c.bound, int(c.passed), int(c.golden))
    t.notes["checks"] = list(checks)
    return t


def grunwald_identity_errors(n_max: int = 64, points: int = 1000) -> dict:
    """Largest deviations in the exact identities of the cardinal polynomials and ``G_n``."""
    theta = np.linspace(0.0, math.pi, points)
    pu = card = g1 = 0.0
    for n in range(1, n_max + 1):
        grid = chebyshev_grid(n)
        P = cardinal_matrix(grid, theta)
        pu = max(pu, float(np.max(np.abs(P.sum(axis=1) - 1.0))))
        card = max(card, float(np.max(np.abs(cardinal_matrix(grid, grid.angles) - np.eye(n)))))
        g1 = max(g1, float(np.max(np.abs(gr.apply_gn(n, lambda t: np.ones_like(t), theta) - 1.0))))
    gc = 0.0
    for n in (2, 5, 10, 50):
        expect = np.cos(theta) * (math.cos(math.pi / (2 * n)) - 1.0)
        got = gr.apply_gn(n, np.cos, theta) - np.cos(theta)
        gc = max(gc, float(np.max(np.abs(got - expect))))
    return {"partition": pu, "cardinal": card, "gn_one": g1, "gn_cos": gc}


def norm_sweep(cfg: RunConfig, ns=gr.DYADIC_SWEEP) -> list[tuple[int, float]]:
    norms = _pmap(cfg, lambda n: gr.operator_norm_gn(n, cfg.grid_step), ns)
    return list(zip(ns, norms))


def cmd_grunwald_suite(cfg: RunConfig | None = None) -> ReportTable:
    """Identities, non-positivity witnesses, boundedness and test-set convergence of ``G_n``."""
    cfg = cfg or RunConfig()
    c: list[Check] = []
    ids = grunwald_identity_errors()
    c.append(Check("sum_k P_k - 1", ids["partition"], 1e-10, ids["partition"] <= 1e-10))
    c.append(Check("P_k(theta_j) - delta_jk", ids["cardinal"], 1e-10, ids["cardinal"] <= 1e-10))
    c.append(Check("G_n(1) - 1", ids["gn_one"], 1e-11, ids["gn_one"] <= 1e-11))
    c.append(Check("G_n(cos) residual", ids["gn_cos"], 1e-9, ids["gn_cos"] <= 1e-9))
    for n in (3, 5):
        w = gr.nonpositivity_witness_gn(n)
        c.append(Check("G_n witness value", w.value, 0.0, w.value < 0, n=n))
    sweep = norm_sweep(cfg)
    for n, v in sweep:
        c.append(Check("||G_n||", v, 5.0, v <= 5.0, n=n))
    last = [v for _, v in sweep[-3:]]
    growing = last[0] < last[1] < last[2]
    c.append(Check("no monotone growth over last three dyadic n", float(growing), 0.0, not growing))
    ts = gr.test_set_convergence_report([4, 16, 64, 256], 1e-3)
    for n, e1, ec, ec2 in ts.rows:
        expect = 1.0 - math.cos(math.pi / (2 * n))
        c.append(Check("test-set cos error vs 1-cos(pi/2n)", abs(ec - expect), 1e-9,
                       abs(ec - expect) <= 1e-9, n=n))
    t = _rows_table("grunwald_suite", c)
    t.notes["c1_estimate"] = max(v for _, v in sweep)
    return t


def _closed_form_error(n_max: int = 40, samples: int = 1000, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 1.0, samples)
    worst = 0.0
    for n in range(1, n_max + 1):
        for j in range(3):
            e = monomial(j)
            worst = max(worst,
                        float(np.max(np.abs(ka.apply_an(n, e, x) - ka.an_moment(n, j, x)))),
                        float(np.max(np.abs(ka.apply_bn(n, e, x) - ka.bn_moment(n, j, x)))))
    return worst


def an_norm_bound(ns=(3, 5, 9, 17, 33), probes: int = 50, seed: int = 1) -> float:
    rng = np.random.default_rng(seed)
    fs = [ka.random_probe(rng) for _ in range(probes)]
    return max(ka.l1_operator_norm_bound(ka.an_operator(n), fs) for n in ns)


def cmd_kantorovich_suite(cfg: RunConfig | None = None) -> ReportTable:
    """Closed forms, witnesses, norm bound, characteristic sequences and ``mu_n`` checks."""
    cfg = cfg or RunConfig()
    c: list[Check] = []
    err = _closed_form_error()
    c.append(Check("A_n/B_n closed forms vs direct sum (n<=40)", err, 1e-9, err <= 1e-9))
    for n in (3, 7, 15, 31):
        v = ka.output_norm(ka.bn_operator(n), monomial(0))
        c.append(Check("||B_n(e0)||_1 - 1/(n+1)", abs(v - 1 / (n + 1)), 1e-9, abs(v - 1 / (n + 1)) <= 1e-9, n=n))
    for n in (3, 5, 7):
        w = ka.witness_an(n)
        c.append(Check("A_n witness value", w.value, 0.0, w.value < 0, n=n))
        w = ka.witness_bn(n)
        c.append(Check("B_n witness value", w.value, 0.0, w.value < 0, n=n))
    nb = an_norm_bound()
    c.append(Check("empirical ||A_n|| over 50 probes", nb, 3 + 1e-6, nb <= 3 + 1e-6))
    g_iv = Interval(0.2, 0.6)
    rep = ka.characteristic_condition_check(ka.kantorovich_operator, None, g_iv, (5, 10, 20, 40, 80))
    below = all(v <= rep.g_norm + 1e-9 for v in rep.values)
    c.append(Check("K_n characteristic sequence final", rep.values[-1], rep.g_norm + 0.02, rep.final_ok and below))
    rep = ka.characteristic_condition_check(ka.bn_operator, None, g_iv, (5, 11, 21, 41, 81))
    d = abs(rep.values[-1] - rep.g_norm)
    c.append(Check("|B_n characteristic final - ||g||_1|", d, 0.02, d <= 0.02))
    mus = [(n, ka.mu_n(ka.kantorovich_operator(n))) for n in (5, 10, 20, 50)]
    for n, m in mus:
        c.append(Check("mu_n(K_n)", m, 0.15, True, golden=False, n=n))
    dec = all(b[1] < a[1] for a, b in zip(mus[:-1], mus[1:]))
    c.append(Check("mu_n decreasing, final < 0.15", mus[-1][1], 0.15, dec and mus[-1][1] < 0.15))
    for f in (abs_centred(), monomial(2)):
        for n, _ in mus:
            b = ka.mu_bound_check(ka.kantorovich_operator(n), f)
            c.append(Check(f"mu bound lhs<=rhs for {f.name}", b.lhs, b.rhs, b.holds, n=n))
    tent01 = _tent_on_unit()
    for n in (4, 16, 64):
        c.append(Check("||A_n(tent) - tent(x/2)||_1", _an_error(n, tent01), math.nan, True, golden=False, n=n))
        c.append(Check("||B_n(tent)||_1", ka.output_norm(ka.bn_operator(n), tent01), math.nan, True,
                       golden=False, n=n))
    return _rows_table("kantorovich_suite", c)


def _tent_on_unit():
    from .numerics import RealFunction

    t = tent()
    return RealFunction(t.evaluate, ka.UNIT, "piecewise-C1", breakpoints=(), name="tent")


def _an_error(n: int, f) -> float:
    op = ka.an_operator(n)
    return ka.l1_norm(lambda x: np.asarray(op.apply(f, x)) - np.asarray(op.target(f, x)), op.breakpoints)


def bump_spectrum(cutoff: float = 4 * math.pi) -> Spectrum:
    return Spectrum(bump_transform, Interval(-cutoff, cutoff), name="bump")


HN_SCHEDULE = ((8, 0.5), (16, 0.2), (32, 0.05))


def hn_checks(cfg: RunConfig, f=None, schedule=HN_SCHEDULE) -> tuple[float, list[float]]:
    """Identity gap between ``H_{n,delta}`` and ``K_n`` of the smoothed spectrum, and L1 errors on [0, pi]."""
    f = f or tent()
    q = QuadratureSpec(abs_tol=min(cfg.quad_tol, 1e-11))
    x = np.linspace(-2.0, 2.0, 9)
    gap = 0.0
    errs = []
    for n, d in schedule:
        h = hn_values(n, d, f, x, q, cfg.convention)
        k = kn_values(n, product_spectrum(f, d, q, cfg.convention), x, "auto", "quadrature", cfg.convention)
        gap = max(gap, float(np.max(np.abs(h - k))))
        errs.append(l1_on_window(lambda xs: hn_values(n, d, f, xs, q, cfg.convention) - f(xs),
                                 Interval(0.0, math.pi), 64))
    return gap, errs


def cmd_extension_suite(cfg: RunConfig | None = None) -> ReportTable:
    """Convergence of the transform-side extension and its regularised form."""
    cfg = cfg or RunConfig()
    c: list[Check] = []
    rr = rate_report([8, 16, 32, 64], bump_spectrum(), Interval(-2.0, 2.0), conv=cfg.convention)
    errs = rr.column("l1_error")
    ratios = rr.column("ratio")
    for n, e, r in zip(rr.column("n"), errs, ratios):
        c.append(Check("||(K_n f - f) chi[-2,2]||_1", e, math.nan, True, golden=False, n=n))
    dec = all(b < a for a, b in zip(errs[:-1], errs[1:]))
    c.append(Check("K_n L1 error decreasing", float(dec), 1.0, dec))
    band = max(ratios) / min(ratios)
    c.append(Check("error/xi_n band", band, 20.0, band <= 20.0))
    gap, herrs = hn_checks(cfg)
    c.append(Check("H_{n,delta} - K_n(f*phi_delta)", gap, 1e-8, gap <= 1e-8))
    for (n, _), e in zip(HN_SCHEDULE, herrs):
        c.append(Check("||H_{n,delta} f - f||_1 on [0,pi]", e, math.nan, True, golden=False, n=n))
    dec = all(b < a for a, b in zip(herrs[:-1], herrs[1:]))
    c.append(Check("H_{n,delta} L1 error decreasing", float(dec), 1.0, dec))
    return _rows_table("extension_suite", c)


def write_table(table: ReportTable, cfg: RunConfig) -> list[Path]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    paths = [table.write_csv(cfg.out_dir / f"{table.name}.csv")]
    if cfg.emit_svg:
        p = cfg.out_dir / f"{table.name}.svg"
        p.write_text(table.to_svg(), encoding="utf-8")
        paths.append(p)
    return paths


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, (np.floating, np.integer)):
        return _jsonable(v.item())
    return v


def manifest_record(table: ReportTable, paths, runtime: float) -> dict:
    checks = [{k: _jsonable(v) for k, v in asdict(c).items()} for c in checks_of(table)]
    return {"table": table.name, "files": [str(p) for p in paths], "rows": len(table.rows),
            "runtime_s": round(runtime, 3), "passed": golden_passed(table), "checks": checks}


def cmd_reproduce_all(cfg: RunConfig | None = None, log=print) -> int:
    """Regenerate every table and suite; write CSVs and ``manifest.jsonl``.

    Returns 0 when every golden check passes and 1 otherwise.
    """
    cfg = cfg or RunConfig()
    jobs = [
        ("nu_tent", lambda: cmd_nu_table("tent", NU_LIST, cfg)),
        ("nu_cubic", lambda: cmd_nu_table("cubic-spline-like", NU_LIST, cfg)),
        ("xi", lambda: cmd_xi_table(XI_LIST, cfg)),
        ("kn", lambda: cmd_kn_table(KN_P, KN_NM, cfg)),
        ("grunwald_suite", lambda: cmd_grunwald_suite(cfg)),
        ("kantorovich_suite", lambda: cmd_kantorovich_suite(cfg)),
        ("extension_suite", lambda: cmd_extension_suite(cfg)),
    ]
    records = []
    extra = {}
    ok = True
    for name, job in jobs:
        t0 = time.perf_counter()
        try:
            table = job()
        except Exception as exc:  # report and carry on with the other tables
            log(f"FAIL {name}: {type(exc).__name__}: {exc}")
            records.append({"table": name, "passed": False, "error": f"{type(exc).__name__}: {exc}",
                            "runtime_s": round(time.perf_counter() - t0, 3)})
            ok = False
            continue
        paths = write_table(table, cfg)
        rec = manifest_record(table, paths, time.perf_counter() - t0)
        records.append(rec)
        ok &= rec["passed"]
        for key in ("c1_estimate", "best_convention", "best_distance"):
            if key in table.notes:
                extra[key] = table.notes[key]
        for ch in checks_of(table):
            if ch.golden and not ch.passed:
                n = "" if ch.n is None else f" n={ch.n}"
                log(f"FAIL {table.name}: {ch.name}{n}: {ch.value:.6g} vs bound {ch.bound:.6g}")
        log(f"{'ok  ' if rec['passed'] else 'FAIL'} {table.name} ({rec['runtime_s']} s)")
    summary = {"summary": True, "passed": bool(ok), "c1_estimate": extra.get("c1_estimate"),
               "kn_convention": extra.get("best_convention"), "kn_distance": extra.get("best_distance"),
               "config": cfg.as_dict()}
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    with open(cfg.out_dir / "manifest.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for rec in records + [summary]:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    return 0 if ok else 1
