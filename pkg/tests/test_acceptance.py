"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

Every test records a one-line PASS/FAIL summary that ``conftest.py`` prints
at the end of the session.
"""
import math
import sys
import time
from pathlib import Path

import pytest

from pdcauchy import catalog
from pdcauchy.checker import CONSISTENT_PD, NOT_PD, CheckConfig, check_theorem12, check_theorem13
from pdcauchy.cli import main as cli_main
from pdcauchy.distribution import DensityAtom, DiracAtom, Distribution
from pdcauchy.monotone import PASS, Tolerance, cm_finite_diff
from pdcauchy.oracle import NO, YES, fourier_truth, quadratic_form_truth
from pdcauchy.transform import CauchyParams, axis_derivative, cauchy_transform, poisson_axis
from pdcauchy import verify

FIX = Path(__file__).resolve().parent.parent / "fixtures"
RESULTS: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    assert ok, line


def test_criterion_01_kernel_identity():
    t0 = time.perf_counter()
    res = verify.kernel_identity()
    dt = time.perf_counter() - t0
    worst = max(c["residual"] for c in res.cases)
    axes = {math.copysign(1, c["y"]) for c in res.cases}
    record(1, res.passed and dt < 5.0 and axes == {1.0, -1.0} and len(res.cases) == 126,
           f"{len(res.cases)} cases on both axes, worst rel {worst:.2e} <= 1e-8, {dt:.2f}s < 5s")


def test_criterion_02_dirac_closed_form():
    F = Distribution.of(DiracAtom())
    p = CauchyParams(0, (0.0, 1.0))
    worst_t = worst_d = 0.0
    for y in (0.01, 0.1, 1.0, 10.0, 100.0):
        want = 1.0 / (math.pi * y)
        worst_t = max(worst_t, abs(cauchy_transform(F, p, 1, complex(0, y)) - want) / want)
        for s in range(9):
            d = axis_derivative(F, p, 1, y, s).value
            ref = (-1) ** s * math.factorial(s) / (math.pi * y ** (s + 1))
            worst_d = max(worst_d, abs(d - ref) / abs(ref))
    record(2, worst_t <= 1e-12 and worst_d <= 1e-12,
           f"transform rel {worst_t:.2e}, derivatives s<=8 rel {worst_d:.2e} (bound 1e-12)")


def test_criterion_03_finite_differences():
    t0 = time.perf_counter()
    h = 1e-4
    worst = 0.0
    for kind in ("gaussian", "laplace"):
        F = Distribution.of(DensityAtom(kind, 1.0))
        p = CauchyParams.auto(F)
        for j in (1, 2):
            for y in (0.5, 2.0):
                for s in (1, 2, 3):
                    fd = (axis_derivative(F, p, j, y + h, s - 1).value
                          - axis_derivative(F, p, j, y - h, s - 1).value) / (2 * h)
                    ex = axis_derivative(F, p, j, y, s).value
                    worst = max(worst, abs(fd - ex) / abs(ex))
    dt = time.perf_counter() - t0
    record(3, worst <= 1e-6 and dt < 30.0,
           f"worst rel {worst:.2e} <= 1e-6 over 24 cases, {dt:.2f}s < 30s")


def test_criterion_04_catalog_concordance():
    t0 = time.perf_counter()
    discordant, missing_witness = [], []
    for fx in catalog.CATALOG.values():
        rep = check_theorem13(fx.distribution)
        truth = fourier_truth(fx.distribution).pd
        expected = CONSISTENT_PD if fx.pd else NOT_PD
        if rep.overall != expected or truth != (YES if fx.pd else NO):
            discordant.append(fx.name)
        if rep.overall == NOT_PD and not any(v.witnesses for v in rep.verdicts.values()):
            missing_witness.append(fx.name)
    dt = time.perf_counter() - t0
    record(4, not discordant and not missing_witness and dt < 120.0,
           f"{len(catalog.CATALOG)} fixtures, discordant={discordant}, "
           f"missing witnesses={missing_witness}, {dt:.1f}s < 120s")


def test_criterion_05_order_path():
    F = catalog.get("t_squared").distribution
    r2 = check_theorem13(F, CheckConfig(n=2))
    r3 = check_theorem13(F, CheckConfig(n=3))
    record(5, r2.overall == NOT_PD and r3.overall == NOT_PD,
           f"t^2 with n=2 -> {r2.overall}, n=3 -> {r3.overall}")


def test_criterion_06_plemelj():
    t0 = time.perf_counter()
    res = verify.plemelj()
    dt = time.perf_counter() - t0
    ratios = [c["ratio"] for c in res.cases if "ratio" in c]
    m1 = [c["residual"] for c in res.cases if c["m"] == 1]
    record(6, res.passed and dt < 30.0,
           f"m=0 ratios {', '.join(f'{r:.3f}' for r in ratios)} in [1.5, 2.5], "
           f"m=1 {m1[1]:.3e} < {m1[0]:.3e}, {dt:.1f}s < 30s")


def test_criterion_07_interchange():
    res = verify.interchange()
    worst = max(c["residual"] for c in res.cases)
    record(7, res.passed and len(res.cases) == 3,
           f"3 (u, F) pairs, worst rel {worst:.2e} <= 1e-7")


def test_criterion_08_theorem12_path():
    ok = {}
    for kind in ("cosine", "gaussian"):
        rep = check_theorem12(Distribution.of(DensityAtom(kind, 1.0)), k_max=6)
        ok[kind] = rep.verdicts["poisson_axis"].status == PASS
    one = Distribution.of(DensityAtom("constant"))
    ys = [0.05 * k for k in range(1, 101)]
    worst = max(abs(poisson_axis(one, y) - 1.0) for y in ys)
    record(8, all(ok.values()) and worst <= 1e-9,
           f"cm_finite_diff k_max=6 {ok}, |u_1(0,y) - 1| <= {worst:.1e} (bound 1e-9)")


def test_criterion_09_oracle_soundness():
    t0 = time.perf_counter()
    refuted_late = {}
    for fx in catalog.NON_PD_FIXTURES:
        gt = quadratic_form_truth(fx.distribution, 256, seed=0)
        refuted_late[fx.name] = gt.evidence["trial"] if gt.pd == NO else None
    per = math.ceil(10_000 / len(catalog.PD_FIXTURES))
    false_refutations = [fx.name for fx in catalog.PD_FIXTURES
                         if quadratic_form_truth(fx.distribution, per, seed=0).pd == NO]
    dt = time.perf_counter() - t0
    ok = all(v is not None for v in refuted_late.values()) and not false_refutations
    record(9, ok, f"non-PD refuted at trials {refuted_late}; "
                  f"{per * len(catalog.PD_FIXTURES)} PD trials, false refutations "
                  f"{false_refutations}, {dt:.0f}s")


def test_criterion_10_determinism(tmp_path):
    outs = []
    for k in range(2):
        p = tmp_path / f"r{k}.json"
        code = cli_main(["check", str(FIX / "gaussian.spec"), "--no-meta", "--report", str(p)])
        outs.append((code, p.read_bytes()))
    record(10, outs[0] == outs[1] and outs[0][0] == 0,
           f"two --no-meta runs byte-identical ({len(outs[0][1])} bytes), exit {outs[0][0]}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
