"""Acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL summary with its worst-case figure;
conftest prints them at the end of the run.
"""

import math

import numpy as np
import pytest

from oracles import concurrence_pure_two_qubit, reduced_two_site
from spinrevival.chain import reflection_matrix, to_matrix
from spinrevival.deformation import (
    band_leakage,
    build_Q,
    build_V,
    deform_closed_form,
    deform_conjugate,
    q_invariance_residual,
)
from spinrevival.fullspace import (
    build_full,
    concurrence_after_revival,
    embed_site_state,
    evolve_full,
    magnetization_commutator_residual,
    restrict_one_excitation,
)
from spinrevival.models import krawtchouk, shifted_krawtchouk, uniform
from spinrevival.spectral import eigendecompose, propagator
from spinrevival.transfer import pst_report, revival_pattern_check, revival_report, transfer_probability_scan

PI = math.pi
THETAS = [k * PI / 37 for k in range(37)]
GRID_N = range(1, 11)

RESULTS = {}


def record(number, title, ok, detail):
    RESULTS[number] = f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def test_criterion_01_krawtchouk_pst():
    worst_res, worst_fid = 0.0, 0.0
    for N in range(1, 13):
        rep = pst_report(krawtchouk(N), PI)
        worst_res = max(worst_res, rep.phase_opt_residual)
        worst_fid = max(worst_fid, abs(rep.end_fidelity - 1))
    record(1, "Krawtchouk PST up to phase, N=1..12",
           worst_res <= 1e-9 and worst_fid <= 1e-9,
           f"max phase-opt residual {worst_res:.2e}, max |fidelity-1| {worst_fid:.2e} (tol 1e-9)")


def test_criterion_02_strict_phase_pst():
    worst = 0.0
    for N in range(1, 13):
        chain = shifted_krawtchouk(N)
        assert np.all(chain.fields == -N / 2)
        u = propagator(eigendecompose(chain), PI).entries
        worst = max(worst, float(np.max(np.abs(u - reflection_matrix(N)))))
    record(2, "shifted Krawtchouk strict PST, N=1..12", worst <= 1e-9,
           f"max |U(pi) - R| {worst:.2e} (tol 1e-9)")


def test_criterion_03_deformation_oracle_equivalence():
    worst_gap, worst_leak = 0.0, 0.0
    for N in GRID_N:
        chain = krawtchouk(N)
        for th in THETAS:
            v = build_V(N, th)
            worst_leak = max(worst_leak, band_leakage(v @ to_matrix(chain) @ v))
            a = to_matrix(deform_conjugate(chain, th))
            b = to_matrix(deform_closed_form(chain, th))
            worst_gap = max(worst_gap, float(np.max(np.abs(a - b))))
    record(3, "conjugation vs closed form, N=1..10, 37 thetas",
           worst_gap <= 1e-10 and worst_leak <= 1e-10,
           f"max entry gap {worst_gap:.2e}, max band leakage {worst_leak:.2e} (tol 1e-10)")


def test_criterion_04_revival_amplitudes():
    worst_a = worst_b = worst_leak = 0.0
    for N in GRID_N:
        base = shifted_krawtchouk(N)
        for th in THETAS:
            rep = revival_report(deform_closed_form(base, th), PI)
            worst_a = max(worst_a, abs(abs(rep.alpha) - abs(math.sin(2 * th))))
            worst_b = max(worst_b, abs(abs(rep.beta) - abs(math.cos(2 * th))))
            worst_leak = max(worst_leak, rep.leak)
    ok = worst_a <= 1e-9 and worst_b <= 1e-9 and worst_leak <= 1e-9
    record(4, "revival amplitudes |sin 2t|, |cos 2t|", ok,
           f"max alpha err {worst_a:.2e}, beta err {worst_b:.2e}, leak {worst_leak:.2e} (tol 1e-9)")


def test_criterion_05_full_revival_pattern():
    worst, worst_mid = 0.0, 0.0
    all_pass = True
    for N in (3, 4, 5, 6):
        base = shifted_krawtchouk(N)
        for th in (PI / 8, PI / 6, PI / 5):
            chain = deform_closed_form(base, th)
            check = revival_pattern_check(chain, PI, th, 1e-8)
            all_pass &= check.passed
            worst = max(worst, check.max_residual)
            if N % 2 == 0:
                u = np.exp(1j * check.phase) * propagator(eigendecompose(chain), PI).entries
                e = np.zeros(N + 1)
                e[N // 2] = 1
                worst_mid = max(worst_mid, float(np.max(np.abs(u @ e - e))))
    record(5, "revival pattern, N=3..6, theta in {pi/8, pi/6, pi/5}",
           all_pass and worst <= 1e-8 and worst_mid <= 1e-8,
           f"max residual {worst:.2e}, middle-site residual {worst_mid:.2e} (tol 1e-8)")


def test_criterion_06_involution_identities():
    worst = {"V=V^T": 0.0, "V^2=I": 0.0, "VRV=Q": 0.0, "Q^2=I": 0.0, "QJQ=J": 0.0}
    for N in GRID_N:
        r = reflection_matrix(N)
        eye = np.eye(N + 1)
        base = shifted_krawtchouk(N)
        for th in THETAS:
            v, q = build_V(N, th), build_Q(N, th)
            worst["V=V^T"] = max(worst["V=V^T"], float(np.max(np.abs(v - v.T))))
            worst["V^2=I"] = max(worst["V^2=I"], float(np.max(np.abs(v @ v - eye))))
            worst["VRV=Q"] = max(worst["VRV=Q"], float(np.max(np.abs(v @ r @ v - q))))
            worst["Q^2=I"] = max(worst["Q^2=I"], float(np.max(np.abs(q @ q - eye))))
            worst["QJQ=J"] = max(worst["QJQ=J"], q_invariance_residual(deform_closed_form(base, th), th))
    ok = all(v <= 1e-10 for v in worst.values())
    record(6, "involution identities", ok,
           ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " (tol 1e-10)")


def test_criterion_07_isospectrality():
    worst = 0.0
    for N in GRID_N:
        for base in (krawtchouk(N), shifted_krawtchouk(N)):
            ref = eigendecompose(base).eigenvalues
            for th in THETAS:
                lam = eigendecompose(deform_closed_form(base, th)).eigenvalues
                worst = max(worst, float(np.max(np.abs(lam - ref))))
    record(7, "isospectral deformation", worst <= 1e-9, f"max eigenvalue gap {worst:.2e} (tol 1e-9)")


def test_criterion_08_uniform_negative_control():
    times, probs = transfer_probability_scan(uniform(3), 50.0, 50001)
    assert times[1] - times[0] == pytest.approx(1e-3)
    peak = float(probs[1:].max())
    record(8, "uniform N=3 never transfers on (0, 50]", peak < 0.999,
           f"max transfer probability {peak:.6f} at t={times[1:][np.argmax(probs[1:])]:.3f} (threshold 0.999)")


def test_criterion_09_full_space_consistency():
    worst_restr, worst_comm = 0.0, 0.0
    for N in range(1, 7):
        for chain in (krawtchouk(N), shifted_krawtchouk(N), uniform(N),
                      deform_closed_form(krawtchouk(N), 0.3)):
            full = build_full(chain)
            worst_restr = max(worst_restr, float(np.max(np.abs(restrict_one_excitation(full) - to_matrix(chain)))))
            worst_comm = max(worst_comm, magnetization_commutator_residual(full))
    record(9, "full-space restriction and conservation, N=1..6",
           worst_restr <= 1e-12 and worst_comm <= 1e-12,
           f"restriction {worst_restr:.2e}, commutator {worst_comm:.2e} (tol 1e-12)")


def test_criterion_10_entanglement():
    worst_bal, worst_gen, worst_oracle = 0.0, 0.0, 0.0
    for N in (3, 4, 5):
        base = shifted_krawtchouk(N)
        chain = deform_closed_form(base, PI / 8)
        worst_bal = max(worst_bal, abs(concurrence_after_revival(chain, PI, 0, N) - 1))
        for th in (PI / 12, PI / 8, PI / 6):
            chain = deform_closed_form(base, th)
            target = abs(math.sin(4 * th))
            worst_gen = max(worst_gen, abs(concurrence_after_revival(chain, PI, 0, N) - target))
            psi = evolve_full(build_full(chain), embed_site_state(N + 1, 0), PI)
            oracle = concurrence_pure_two_qubit(reduced_two_site(psi, N + 1, 0, N))
            worst_oracle = max(worst_oracle, abs(oracle - target))
    ok = worst_bal <= 1e-8 and worst_gen <= 1e-8
    record(10, "revival entanglement of sites (0, N)", ok,
           f"balanced |C-1| {worst_bal:.2e}, |C-|sin 4t|| {worst_gen:.2e}, "
           f"brute-force oracle gap {worst_oracle:.2e} (tol 1e-8)")
