"""Acceptance criteria 1-11, each at its stated tolerance.

Every test prints one ``[PASS]``/``[FAIL]`` line (visible with ``pytest -v``).
"""

import math
import time

import numpy as np
import pytest

from tricycle import linkage as lk
from tricycle.backlund import backlund_transform, reconstruct_rear_track
from tricycle.curves import CurvatureSeries, elastica_residual, fit_soliton_ab, frenet_fd, inflectional_ic
from tricycle.elliptic import jacobi_cn
from tricycle.poly import proofs as pf
from tricycle.simulate import simulate_geodesic, simulate_singular
from tricycle.verify import reflect

from conftest import EQUAL, UNEQUAL, UNEQUAL_START, random_unit_state


@pytest.fixture
def line(capsys):
    def emit(cid, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {cid}: {title} | {detail}")
    return emit


def _rel(x, ref):
    return abs(x - ref) / max(1.0, abs(ref))


# 1 ---------------------------------------------------------------------------

def test_c1_elastica_reproduction(line):
    worst, slowest = 0.0, 0.0
    for k in (0.1, 0.707, 0.854, 0.95, 0.909):
        t0 = time.perf_counter()
        run = simulate_geodesic(inflectional_ic(k), EQUAL, 20.0)  # rtol = atol = 1e-10
        slowest = max(slowest, time.perf_counter() - t0)
        worst = max(worst, float(np.max(np.abs(run.kappa - 2 * k * jacobi_cn(run.times, k)))))
    ok = worst <= 1e-6 and slowest < 5.0
    line(1, "kappa_x = 2k cn(t,k), T=20", ok, f"max err {worst:.2e} (tol 1e-6), slowest {slowest:.2f}s (< 5s)")
    assert ok


# 2 ---------------------------------------------------------------------------

def test_c2_conservation(line):
    eq = simulate_geodesic(inflectional_ic(0.707), EQUAL, 50.0).drift()
    un = simulate_geodesic(lk.scale_to_unit_energy(UNEQUAL_START, UNEQUAL), UNEQUAL, 50.0).drift()
    eq_keys, un_keys = ("H", "p1", "p2", "G"), ("H", "p1", "p2", "b", "a")
    worst = max([eq[k] for k in eq_keys] + [un[k] for k in un_keys])
    ok = worst <= 1e-8
    line(2, "relative drift over T=50", ok,
         f"equal {max(eq[k] for k in eq_keys):.1e}, unequal {max(un[k] for k in un_keys):.1e} (tol 1e-8)")
    assert ok


# 3 ---------------------------------------------------------------------------

def test_c3_elastica_residual_and_first_integral(line, rng):
    starts = [inflectional_ic(0.707), inflectional_ic(0.3)] + [random_unit_state(rng, EQUAL) for _ in range(3)]
    res, ident = 0.0, 0.0
    for s in starts:
        run = simulate_geodesic(s, EQUAL, 20.0)
        k, kd, kdd = run.jet.T
        A = -run.invariants()["G"][0]
        res = max(res, float(np.max(np.abs(kdd + k ** 3 / 2 + A * k))))
        # B from the first integral at every sample, with A = -G(t)
        At = -run.invariants()["G"]
        B = -(kd ** 2 + k ** 4 / 4 + At * k ** 2)
        pp = run.states[:, 4] ** 2 + run.states[:, 5] ** 2
        ident = max(ident, float(np.max(np.abs(At * At - B - pp))))
    ok = res <= 1e-8 and ident <= 1e-9
    line(3, "k''+k^3/2+Ak and A^2-B-|p|^2", ok, f"residual {res:.1e} (1e-8), identity {ident:.1e} (1e-9)")
    assert ok


# 4 ---------------------------------------------------------------------------

def test_c4_two_soliton_fit(line, unequal_run):
    inv = unequal_run.invariants()
    a0, b0 = inv["a"][0], inv["b"][0]
    fx = fit_soliton_ab(unequal_run.curvature_series(), trim=10)
    ex = max(_rel(fx.a, a0), _rel(fx.b, b0))
    ey = 0.0
    for w in (1, 2):
        fy = fit_soliton_ab(unequal_run.rear_curvature_series(w), trim=10)
        ey = max(ey, _rel(fy.a, a0), _rel(fy.b, b0))
    ok = ex <= 1e-5 and ey <= 1e-4
    line(4, "2-soliton (a,b) fit vs conserved, l=(1,2)", ok,
         f"x {ex:.1e} (1e-5), y1/y2 {ey:.1e} (1e-4); a={a0:.6f} b={b0:.6f}")
    assert ok


# 5 ---------------------------------------------------------------------------

def test_c5_singular_curves(line):
    dt = 0.005
    run = simulate_singular(lk.ConfigPoint(0, 0, 0.3, 2.0), UNEQUAL, 10.0, sample_dt=dt)
    _, _, k_fd = frenet_fd(run.curve("x"))
    k_cf = run.closed_form_curvature()
    fd_err = float(np.max(np.abs(k_fd - k_cf)))
    A = -(1 + 4) / (2 * 1 * 4)
    assert lk.singular_elastica_constant(UNEQUAL) == A
    el = elastica_residual(CurvatureSeries.from_samples(run.times, k_cf, 2), A, trim=5).sup

    eq = simulate_singular(lk.ConfigPoint(0, 0, 1.2, -0.4), EQUAL, 10.0, sample_dt=dt)
    s = eq.states
    theta = (s[0, 2] + s[0, 3]) / 2
    d = np.array([math.cos(theta), math.sin(theta)])
    rel = s[:, :2] - s[0, :2]
    col = float(np.max(np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0])))
    asum = float(np.max(np.abs(s[:, 2] + s[:, 3] - s[0, 2] - s[0, 3])))
    tr = eq.tracks()
    mirror = float(np.max(np.abs(reflect(tr.m1, s[0, :2], theta) - tr.m2)))
    ok = fd_err <= 1e-8 and el <= 1e-8 and col <= 1e-10 and asum <= 1e-10 and mirror <= 1e-8
    line(5, "singular curves", ok,
         f"FD vs closed {fd_err:.1e}, elastica {el:.1e}, collinear {col:.1e}, "
         f"alpha sum {asum:.1e}, mirror {mirror:.1e}")
    assert ok


# 6 ---------------------------------------------------------------------------

def test_c6_backlund(line):
    dt = 0.005
    run = simulate_geodesic(inflectional_ic(0.707), EQUAL, 20.0, sample_dt=dt)
    A, B = lk.elastica_constants(lk.PhaseState.from_array(run.states[0]), EQUAL)
    res = backlund_transform(run.curve("x"), 2.0, 0.3, kappa=run.kappa, heading=run.headings())
    speed = res.speed_deviation
    sol = res.soliton_residual(A, B, trim=10).sup
    rec = 0.0
    for r in (run, simulate_geodesic(lk.scale_to_unit_energy(UNEQUAL_START, UNEQUAL), UNEQUAL, 20.0,
                                     sample_dt=dt)):
        tr = r.tracks()
        for w in (1, 2):
            pts = reconstruct_rear_track(r, w)
            rec = max(rec, float(np.max(np.linalg.norm(pts - getattr(tr, f"y{w}"), axis=1))))
    ok = speed <= 1e-8 and sol <= 1e-4 and rec <= 1e-8
    line(6, "bicycle transform of elastica, L=2", ok,
         f"speed {speed:.1e} (1e-8), soliton residual {sol:.1e} (1e-4), y1/y2 rebuild {rec:.1e} (1e-8)")
    assert ok


# 7 ---------------------------------------------------------------------------

def _brute_growth(q, P, h=1e-5, tol=1e-7):
    """Growth vector from numerically differentiated Lie brackets of the frame."""
    def v(i):
        return lambda y: lk.horizontal_frame(lk.ConfigPoint(*y), P)[i]

    def jac(F, y):
        return np.column_stack([(F(y + h * e) - F(y - h * e)) / (2 * h) for e in np.eye(4)])

    def br(F, G):
        return lambda y: jac(G, y) @ F(y) - jac(F, y) @ G(y)

    y = q.as_array()
    v1, v2 = v(0), v(1)
    w = br(v1, v2)
    rank = lambda vs: int(np.sum(np.linalg.svd(np.array(vs), compute_uv=False) > tol))
    return (rank([v1(y), v2(y)]), rank([v1(y), v2(y), w(y)]),
            rank([v1(y), v2(y), w(y), br(w, v1)(y), br(w, v2)(y)]))


def test_c7_growth_vector(line, rng):
    bad = 0
    for P in (EQUAL, UNEQUAL):
        for _ in range(100):
            a = rng.uniform(-math.pi, math.pi, 2)
            q = lk.ConfigPoint(*rng.uniform(-3, 3, 2), *a)
            gv = lk.growth_vector(q, P)
            bad += gv != (2, 3, 4) or gv != _brute_growth(q, P)
    degenerate = []
    for a in rng.uniform(-math.pi, math.pi, 10):
        q = lk.ConfigPoint(0.0, 0.0, a, a)
        degenerate.append(lk.growth_vector(q, EQUAL) == (2, 3, 3) == _brute_growth(q, EQUAL))
    ok = bad == 0 and all(degenerate)
    line(7, "growth vector", ok, f"generic mismatches {bad}/200, degenerate (2,3,3) {sum(degenerate)}/10")
    assert ok


# 8 ---------------------------------------------------------------------------

def test_c8_poisson_commutation(line, rng):
    H = lambda y: lk.hamiltonian(y, EQUAL)
    G = lambda y: lk.invariant_G(y, EQUAL)
    p1, p2 = (lambda y: y[4]), (lambda y: y[5])
    worst = 0.0
    for _ in range(100):
        s = random_unit_state(rng, EQUAL)
        for f, g in ((H, G), (H, p1), (H, p2), (G, p1), (G, p2)):
            worst = max(worst, abs(lk.poisson_bracket(f, g, s)))
    ok = worst <= 1e-6
    line(8, "{H,G}, {H,p_i}, {G,p_i}", ok, f"max {worst:.1e} over 100 states (tol 1e-6)")
    assert ok


# 9 ---------------------------------------------------------------------------

LIMIT = 180.0


def _timed(fn, *a):
    t0 = time.perf_counter()
    out = fn(*a)
    return out, time.perf_counter() - t0


def test_c9_groebner_proofs(line):
    reports = []
    for l1, l2 in ((1, 1), (1, 2), (2, 3), (1, 3)):
        reports.append(_timed(pf.prove_unit_speed, l1, l2, 50))   # (i)
        reports.append(_timed(pf.prove_kappa_x, l1, l2, 50))      # (ii)
    reports.append(_timed(pf.prove_A_constant, 1, 50))            # (iii)
    for l1, l2 in ((1, 2), (2, 3), (1, 3)):                       # (iv)
        sc, dt = _timed(pf.derive_soliton_constants, l1, l2, 50)
        reports.extend((r, dt) for r in sc.report)
    corrected = _timed(pf.verify_y1_curvature, 1, "corrected", 50)
    printed = _timed(pf.verify_y1_curvature, 1, "printed", 50)
    core_ok = all(r.proved and dt < LIMIT for r, dt in reports + [corrected])
    evaluated = all(r.evaluation_ok is not False for r, _ in reports)
    ok = core_ok and evaluated and printed[0].proved
    line(9, "exact Groebner certificates", ok,
         f"(i)-(iv): {sum(r.proved for r, _ in reports)}/{len(reports)} proved, "
         f"slowest {max(dt for _, dt in reports):.1f}s; "
         f"(v) printed y1 display: {printed[0].status}; corrected y1 polynomial: {corrected[0].status}")
    assert core_ok and evaluated


@pytest.mark.xfail(strict=True, reason="the printed y1 curvature polynomial swaps eta1 and eta2 "
                                       "in its non-momentum terms and does not reduce to zero")
def test_c9v_printed_y1_display_reduces():
    assert pf.verify_y1_curvature(1, "printed", 50).proved


# 10 --------------------------------------------------------------------------

def test_c10_lifting(line):
    eta_max, k_err = 0.0, 0.0
    for P, seed in ((UNEQUAL, lk.PhaseState(0, 0, 0.4, -1.1, 0.3, 0.2, 0.7, 0.0)),
                    (lk.Params(2.0, 3.0), lk.PhaseState(0, 0, 1.0, 2.5, -0.2, 0.4, 0.9, 0.0))):
        run = simulate_geodesic(lk.scale_to_unit_energy(seed, P), P, 50.0)
        eta_max = max(eta_max, float(np.max(np.abs(run.states[:, 7]))))
        k_err = max(k_err, float(np.max(np.abs(run.kappa - run.states[:, 6] / P.l1 ** 2))))
    ok = eta_max <= 1e-10 and k_err <= 1e-12
    line(10, "eta2(0)=0 stays zero", ok, f"|eta2| {eta_max:.1e} (1e-10), |k - eta1/l1^2| {k_err:.1e} (1e-12)")
    assert ok


# 11 --------------------------------------------------------------------------

def test_c11_filament(line, rng):
    worst = {}
    for name, P in (("equal", EQUAL), ("unequal", UNEQUAL)):
        worst[name] = max(lk.filament_residual(random_unit_state(rng, P), P) for _ in range(100))
    ok = max(worst.values()) <= 1e-8
    line(11, "extra-integral flow projects to uT + vN", ok,
         f"equal {worst['equal']:.1e}, unequal {worst['unequal']:.1e} (tol 1e-8)")
    assert ok
