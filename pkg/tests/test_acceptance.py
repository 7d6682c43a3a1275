"""Acceptance gate: every shipped criterion at its stated tolerance.

Each test prints one ``acceptance criterion-NN ...: PASS|FAIL`` line (visible
with ``pytest -s`` or in failure output) and enforces the stated runtime
budget where one is given.
"""

import json
import math
import time

import numpy as np

from conftest import random_commuting_pair
from isotuple import classify
from isotuple import matrix_core as mc
from isotuple import transforms as tf
from isotuple import verify
from isotuple.generators import (
    jordan_block,
    paper_example_mixing,
    paper_example_squares,
    random_instance,
    random_unitary,
)
from isotuple.tuples import (
    OperatorTuple,
    PowerConvention,
    adjoint_tuple,
    inverse_tuple,
    power_tuple,
    product_tuple,
    sum_tuple,
)
from isotuple.verify import CampaignConfig, run_campaign


def _criterion(name: str, ok: bool, detail: str = ""):
    print(f"acceptance {name}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_01_golden_mixing_example():
    start = time.monotonic()
    T, A0, U, S = paper_example_mixing()
    pair_t = (OperatorTuple.of(mc.adjoint(T)), OperatorTuple.of(T))
    pair_s = (OperatorTuple.of(mc.adjoint(S)), OperatorTuple.of(S))
    checks = []
    checks.append(mc.fro_norm(tf.triangle(pair_t[0], pair_t[1], A0, 2)) <= 1e-12)
    sas = mc.adjoint(S) @ A0 @ S
    checks.append(mc.max_abs_diff(sas, np.array([[1, 1], [1, 1]])) <= 1e-12)
    s2as2 = mc.adjoint(S) @ mc.adjoint(S) @ A0 @ S @ S
    checks.append(mc.max_abs_diff(s2as2, np.array([[1, 1 - 1j], [1 + 1j, 2]])) <= 1e-12)
    tri_s = tf.triangle(pair_s[0], pair_s[1], A0, 2)
    checks.append(mc.max_abs_diff(tri_s, np.array([[-1, -1 - 1j], [-1 + 1j, 1]])) <= 1e-12)
    checks.append(mc.fro_norm(tri_s) > 1.0)
    elapsed = time.monotonic() - start
    checks.append(elapsed < 1.0)
    _criterion(
        "criterion-01 golden mixing example",
        all(checks),
        f"checks={checks} elapsed={elapsed:.3f}s",
    )


def test_criterion_02_golden_squares_example():
    start = time.monotonic()
    A, B = paper_example_squares()
    eye = np.eye(2)
    checks = []
    checks.append(mc.fro_norm(tf.triangle(A, B, eye, 1)) <= 1e-12)
    inv_a, inv_b = inverse_tuple(A), inverse_tuple(B)
    rel = 0.0
    for m in range(1, 7):
        defect = tf.triangle(inv_a, inv_b, eye, m)
        rel = max(rel, mc.max_abs_diff(defect, (-3.0) ** m * eye) / 3.0**m)
    checks.append(rel <= 1e-9)
    word_a = power_tuple(A, 2, PowerConvention.WORD)
    word_b = power_tuple(B, 2, PowerConvention.WORD)
    checks.append(mc.fro_norm(tf.triangle(word_a, word_b, eye, 1)) <= 1e-12)
    comp_a = power_tuple(A, 2, PowerConvention.COMPONENTWISE)
    comp_b = power_tuple(B, 2, PowerConvention.COMPONENTWISE)
    rel = 0.0
    for m in range(1, 7):
        defect = tf.triangle(comp_a, comp_b, eye, m)
        rel = max(rel, mc.max_abs_diff(defect, 2.0 ** (-m) * eye) / 2.0 ** (-m))
    checks.append(rel <= 1e-9)
    elapsed = time.monotonic() - start
    checks.append(elapsed < 1.0)
    _criterion(
        "criterion-02 golden squares example (both power conventions)",
        all(checks),
        f"checks={checks} elapsed={elapsed:.3f}s",
    )


def test_criterion_03_oracle_equivalence():
    start = time.monotonic()
    worst = 0.0
    count = 0
    for seed in range(200):
        d = 1 + seed % 3
        n = 2 + seed % 3
        m_deg = 1 + seed % 4
        n_deg = 1 + (seed // 2) % 4
        A, B, X = random_commuting_pair(seed, d, n)
        eye = np.eye(n * n)
        sig_hat = tf.superop_matrix(A, B, "sigma")
        left = tf.superop_matrix(A, B, "left_sum")
        right = tf.superop_matrix(A, B, "right_sum")
        vx = mc.vec(X)

        tri = tf.triangle(A, B, X, m_deg)
        tri_hat = mc.unvec(np.linalg.matrix_power(eye - sig_hat, m_deg) @ vx, n)
        scale = max(tf.defect_scale(A, B, X, m_deg), 1.0)
        worst = max(worst, mc.fro_norm(tri - tri_hat) / (1e-10 * scale))

        dlt = tf.delta(A, B, X, n_deg)
        dlt_hat = mc.unvec(np.linalg.matrix_power(left - right, n_deg) @ vx, n)
        scale = max(tf.defect_scale(A, B, X, 0, n_deg), 1.0)
        worst = max(worst, mc.fro_norm(dlt - dlt_hat) / (1e-10 * scale))

        iso = tf.isosym_defect(A, B, X, m_deg, n_deg)
        iso_hat = mc.unvec(
            np.linalg.matrix_power(eye - sig_hat, m_deg)
            @ np.linalg.matrix_power(left - right, n_deg)
            @ vx,
            n,
        )
        scale = max(tf.defect_scale(A, B, X, m_deg, n_deg), 1.0)
        worst = max(worst, mc.fro_norm(iso - iso_hat) / (1e-10 * scale))

        j = seed % 6
        it = tf.sigma_power(A, B, X, j, mode="iterate")
        ex = tf.sigma_power(A, B, X, j, mode="expand")
        scale = max(tf.defect_scale(A, B, X, j), 1.0)
        worst = max(worst, mc.fro_norm(it - ex) / (1e-10 * scale))
        count += 1
    elapsed = time.monotonic() - start
    ok = worst <= 1.0 and count >= 200 and elapsed < 30.0
    _criterion(
        "criterion-03 oracle equivalence (vec lift + expansion)",
        ok,
        f"instances={count} worst_ratio={worst:.3e} elapsed={elapsed:.2f}s",
    )


def test_criterion_04_degree_monotonicity():
    checked = 0
    anomaly_count = 0
    for seed in range(120):
        kind = seed % 4
        if kind == 0:
            k = 1 + seed % 3
            T = jordan_block(np.exp(2j * np.pi * (seed % 11) / 11.0), k)
            A, B = OperatorTuple.of(mc.adjoint(T)), OperatorTuple.of(T)
            X = np.eye(k)
            families = ("isometry",)
        elif kind == 1:
            k = 1 + seed % 3
            T = jordan_block(1.0 + 0.2 * (seed % 4), k)
            A, B = OperatorTuple.of(mc.adjoint(T)), OperatorTuple.of(T)
            X = np.eye(k)
            families = ("symmetry",)
        elif kind == 2:
            bundle = random_instance("pro01", seed)
            A, B, X = bundle.tuples["A"], bundle.tuples["B"], bundle.matrices["X"]
            families = ("isometry",)
        else:
            bundle = random_instance("thm05", seed)
            A = sum_tuple(bundle.tuples["A"], bundle.tuples["N1"])
            B = sum_tuple(bundle.tuples["B"], bundle.tuples["N2"])
            X = bundle.matrices["X"]
            families = ("isometry", "symmetry")
        profile = classify.defect_profile(A, B, X, k_max=12)
        for family in families:
            min_deg = getattr(profile, f"min_{family}_degree")
            if min_deg is not None and min_deg <= 6:
                checked += 1
                anomaly_count += len(getattr(profile, f"{family}_anomalies"))
    ok = checked >= 100 and anomaly_count == 0
    _criterion(
        "criterion-04 degree monotonicity (upward-closed pass sets)",
        ok,
        f"instances={checked} anomalies={anomaly_count}",
    )


def test_criterion_05_cesaro_limit():
    start = time.monotonic()
    T = jordan_block(1.0, 2)
    A, B = OperatorTuple.of(mc.adjoint(T)), OperatorTuple.of(T)
    errors = dict(tf.cesaro_estimate(A, B, np.eye(2), 3, 1000))
    decreasing = all(
        errors[t2] < errors[t1] for t1, t2 in [(10, 50), (50, 100), (100, 500), (500, 1000)]
    )
    band = errors[1000] <= 5.0 * errors[100] / 10.0

    rng = np.random.default_rng(123)
    U = random_unitary(rng, 3)
    w = math.sqrt(0.5)
    B2 = OperatorTuple.of(w * U, w * U)
    A2 = adjoint_tuple(B2)
    collapse = mc.fro_norm(tf.triangle(A2, B2, np.eye(3), 1)) <= 1e-9
    sigma_hat = tf.superop_matrix(A2, B2, "sigma")
    invertible = float(np.min(np.abs(np.linalg.eigvals(sigma_hat)))) > 1e-6
    elapsed = time.monotonic() - start
    ok = decreasing and band and collapse and invertible and elapsed < 10.0
    _criterion(
        "criterion-05 cesaro decay + invertible collapse",
        ok,
        f"e100={errors[100]:.3e} e1000={errors[1000]:.3e} collapse={collapse} elapsed={elapsed:.2f}s",
    )


def test_criterion_06_selfadjoint_sum_and_even_collapse():
    rep_pro04 = run_campaign(CampaignConfig(theorem_id="pro04", trials=100, seed=0))
    residual_ok = True
    for seed in range(100):
        bundle = random_instance("pro04", seed)
        s = bundle.tuples["A"].component_sum()
        if mc.fro_norm(s - s.conj().T) > 1e-8:
            residual_ok = False
    rep_pro5 = run_campaign(CampaignConfig(theorem_id="pro5", trials=100, seed=0))
    ok = (
        rep_pro04.passes == 100
        and rep_pro04.skipped == 0
        and not rep_pro04.counterexamples
        and residual_ok
        and rep_pro5.passes == 100
        and rep_pro5.skipped == 0
        and not rep_pro5.counterexamples
    )
    _criterion(
        "criterion-06 self-adjoint sums + even-degree collapse",
        ok,
        f"pro04={rep_pro04.passes}/100 pro5={rep_pro5.passes}/100",
    )


def test_criterion_07_nilpotent_perturbation_campaign():
    start = time.monotonic()
    report = run_campaign(CampaignConfig(theorem_id="thm05", trials=100, seed=0))
    witnesses = [
        w for w in report.sharpness_witnesses if w["sharpness"].get("below_t1", 0.0) > 1e-4
    ]
    elapsed = time.monotonic() - start
    ok = (
        report.passes == 100
        and report.skipped == 0
        and not report.counterexamples
        and len(witnesses) >= 1
        and elapsed < 60.0
    )
    _criterion(
        "criterion-07 nilpotent perturbation degree bound",
        ok,
        f"passes={report.passes}/100 sharp={len(witnesses)} elapsed={elapsed:.2f}s",
    )


def test_criterion_08_product_campaigns_and_jordan_special_case():
    start = time.monotonic()
    reports = {
        tid: run_campaign(CampaignConfig(theorem_id=tid, trials=n, seed=0))
        for tid, n in (("thm06", 100), ("cor06", 100), ("cor061", 100), ("cor062", 100))
    }
    campaign_ok = all(
        r.passes == r.requested_trials and r.skipped == 0 and not r.counterexamples
        for r in reports.values()
    )
    # two commuting degree-3 isometric Jordan pairs: the product is degree-5
    a = jordan_block(1.0, 2)
    eye2 = mc.identity(2)
    A = OperatorTuple.of(np.kron(mc.adjoint(a), eye2))
    B = OperatorTuple.of(np.kron(a, eye2))
    S = OperatorTuple.of(np.kron(eye2, mc.adjoint(a)))
    T = OperatorTuple.of(np.kron(eye2, a))
    SA, TB = product_tuple(S, A), product_tuple(T, B)
    X = np.eye(4)
    defect5 = mc.fro_norm(tf.triangle(SA, TB, X, 5))
    special_ok = defect5 <= 1e-8 * tf.defect_scale(SA, TB, X, 5)
    sharp_ok = mc.fro_norm(tf.triangle(SA, TB, X, 4)) > 1e-4
    elapsed = time.monotonic() - start
    ok = campaign_ok and special_ok and sharp_ok and elapsed < 60.0
    _criterion(
        "criterion-08 product degree bounds + conjugation corollaries",
        ok,
        f"campaigns={[r.passes for r in reports.values()]} defect5={defect5:.3e} elapsed={elapsed:.2f}s",
    )


def test_criterion_09_tensor_campaign():
    start = time.monotonic()
    report = run_campaign(CampaignConfig(theorem_id="thm07", trials=50, seed=0))
    variants = {random_instance("thm07", s).params["variant"] for s in range(50)}
    elapsed = time.monotonic() - start
    ok = (
        report.passes == 50
        and report.skipped == 0
        and not report.counterexamples
        and variants == {"i", "ii"}
        and elapsed < 60.0
    )
    _criterion(
        "criterion-09 tensor product degree bounds (variants i and ii)",
        ok,
        f"passes={report.passes}/50 variants={sorted(variants)} elapsed={elapsed:.2f}s",
    )


def test_criterion_10_campaign_determinism():
    def stripped(tid):
        report = run_campaign(CampaignConfig(theorem_id=tid, trials=3, seed=42, t_max=100))
        data = report.to_json()
        data.pop("timestamp")
        return json.dumps(data, sort_keys=True).encode()

    mismatched = [tid for tid in verify.CAMPAIGN_IDS if stripped(tid) != stripped(tid)]
    _criterion(
        "criterion-10 byte-identical reports modulo timestamp",
        not mismatched,
        f"mismatched={mismatched}",
    )
