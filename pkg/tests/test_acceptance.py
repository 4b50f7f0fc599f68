"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they execute.
"""

import dataclasses
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from epiplan import (Epidemic, b_star, integrate_ode, maximize_welfare,
                     overload_interval, sweep, verify_propositions,
                     welfare_closed, welfare_quadrature, x_at)
from epiplan.cli import main
from conftest import make_example1

LN99 = 4.59511985013459
ELEVEN_PEAKS = [3.06 + 0.46 * k for k in range(11)]  # 3.06, 3.52, ..., 7.66


def report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {num:02d} {name}: {status}{suffix}")
    assert ok, f"criterion {num} ({name}) failed{suffix}"


def test_criterion_01_reference_optimum_and_interval():
    start = time.perf_counter()
    res = maximize_welfare(make_example1())
    elapsed = time.perf_counter() - start
    ok = (abs(res.b_opt - 6.14) <= 0.005
          and res.overload is not None
          and abs(res.overload.t_l - 4.86) <= 0.005
          and abs(res.overload.t_r - 7.42) <= 0.005
          and elapsed < 1.0)
    report(1, "optimum 6.14, overload [4.86, 7.42]", ok,
           f"b_opt={res.b_opt:.6f}, interval=[{res.overload.t_l:.6f}, "
           f"{res.overload.t_r:.6f}], {elapsed:.2f}s")


def test_criterion_02_low_weight_optimum_at_capacity_boundary():
    start = time.perf_counter()
    res = maximize_welfare(make_example1(lam=0.05))
    elapsed = time.perf_counter() - start
    ok = (abs(res.b_opt - 7.66) <= 0.005
          and not res.exceeded
          and elapsed < 1.0)
    report(2, "lambda=0.05 optimum 7.66, not exceeded", ok,
           f"b_opt={res.b_opt:.6f}, exceeded={res.exceeded}, {elapsed:.2f}s")


def test_criterion_03_critical_peak_time():
    value = b_star(0.15, 0.01)
    ok = abs(value - 7.658533) <= 1e-6
    report(3, "b_star(0.15, 0.01) = 7.658533", ok, f"b_star={value:.9f}")


def test_criterion_04_closed_form_matches_quadrature():
    pol = make_example1()
    start = time.perf_counter()
    worst = 0.0
    for i in range(200):
        b = 3.06 + (15.0 - 3.06) * i / 199.0
        diff = abs(welfare_closed(b, pol) - welfare_quadrature(b, pol, tol=1e-9))
        worst = max(worst, diff)
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and elapsed < 10.0
    report(4, "closed vs quadrature < 1e-6 on 200-point grid", ok,
           f"max diff={worst:.2e}, {elapsed:.2f}s")


def test_criterion_05_rk4_oracle_matches_closed_form():
    a = LN99 / 6.14
    start = time.perf_counter()
    ts, xs = integrate_ode(0.01, a, 15.0, 1e-3)
    epi = Epidemic.from_intensity(a, 0.01)
    sup = max(abs(x - x_at(t, epi)) for t, x in zip(ts, xs))
    elapsed = time.perf_counter() - start
    ok = sup < 1e-9 and elapsed < 1.0
    report(5, "RK4 vs closed form sup error < 1e-9", ok,
           f"sup={sup:.2e}, {elapsed:.2f}s")


def test_criterion_06_proposition_suite(capsys):
    start = time.perf_counter()
    code = main(["verify", "--trials", "200", "--seed", "42"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    ok = (code == 0
          and all(f"{name}: PASS (200/200)" in out
                  for name in ("P1a", "P1b", "P2", "P3"))
          and elapsed < 60.0)
    with capsys.disabled():
        report(6, "verify --trials 200 --seed 42 passes", ok,
               f"exit={code}, {elapsed:.1f}s")


def test_criterion_07_comparative_statics_sweeps():
    pol = make_example1()
    lam_b = [res.b_opt for _, res in sweep(pol, "lambda", 0.05, 0.95, 19)]
    c_b = [res.b_opt for _, res in sweep(pol, "c", 0.10, 0.30, 21)]
    lam_ok = all(x >= y - 1e-6 for x, y in zip(lam_b, lam_b[1:]))
    c_ok = all(x >= y - 1e-6 for x, y in zip(c_b, c_b[1:]))
    report(7, "lambda- and c-sweeps weakly decreasing", lam_ok and c_ok,
           f"lambda range [{lam_b[-1]:.4f}, {lam_b[0]:.4f}], "
           f"c range [{c_b[-1]:.4f}, {c_b[0]:.4f}]")


def test_criterion_08_capacity_area_inequality():
    bs = b_star(0.15, 0.01)
    strict = True
    for i in range(100):
        b = 3.06 + (bs - 3.06) * i / 100.0  # [3.06, bs)
        iv = overload_interval(b, 0.15, 0.01, 15.0)
        epi = Epidemic.from_peak(b, 0.01)
        lhs = 0.15 * (iv.t_r - iv.t_l)
        rhs = x_at(iv.t_r, epi) - x_at(iv.t_l, epi)
        strict = strict and lhs < rhs
    iv = overload_interval(bs, 0.15, 0.01, 15.0)
    epi = Epidemic.from_peak(bs, 0.01)
    at_bs = (0.15 * (iv.t_r - iv.t_l) == 0.0
             and x_at(iv.t_r, epi) - x_at(iv.t_l, epi) == 0.0)
    report(8, "c*(t_r-t_l) < x(t_r)-x(t_l) strictly below b_star", strict and at_bs)


def test_criterion_09_figure_curves(tmp_path, capsys):
    cfg = tmp_path / "hires.cfg"
    cfg.write_text("precision = 15\n")
    out_csv = tmp_path / "curves.csv"
    b_arg = ",".join(f"{b:.2f}" for b in ELEVEN_PEAKS)
    code = main(["curves", "--config", str(cfg), "--b", b_arg,
                 "--out", str(out_csv)])
    capsys.readouterr()
    assert code == 0

    rows_by_b = {}
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "b,t,x,xdot,y,h,w"
    for line in lines[1:]:
        parts = line.split(",")
        rows_by_b.setdefault(parts[0], []).append(
            [float(v) for v in parts[1:]])

    ok = len(rows_by_b) == 11
    detail = ""
    for b_txt, rows in rows_by_b.items():
        b = float(b_txt)
        g_b = 1.0 + b / 15.0
        ts = [r[0] for r in rows]
        xdots = [r[2] for r in rows]
        peak_t = ts[int(np.argmax(xdots))]
        if abs(peak_t - b) > 0.01 + 1e-12:
            ok, detail = False, f"peak of xdot at {peak_t} for b={b}"
            break
        if any(abs(r[3] - (1.0 - g_b * r[2])) > 1e-12 for r in rows):
            ok, detail = False, f"y identity broken for b={b}"
            break
        iv = overload_interval(b, 0.15, 0.01, 15.0)
        for r in rows:
            outside = iv is None or r[0] <= iv.t_l or r[0] >= iv.t_r
            if outside and r[4] != 1.0:
                ok, detail = False, f"h != 1 outside overload at b={b}, t={r[0]}"
                break
        if not ok:
            break
    report(9, "curves: xdot peaks at b, y and h identities hold", ok, detail)


CLI_COMMANDS = [
    ("optimize",),
    ("eval", "--b", "6.14"),
    ("sweep", "--param", "lambda", "--from", "0.05", "--to", "0.95",
     "--steps", "19"),
    ("sweep", "--param", "c", "--from", "0.10", "--to", "0.30",
     "--steps", "21"),
    ("verify", "--trials", "200", "--seed", "42"),
    ("reproduce-example",),
]


def test_criterion_10_byte_identical_cli_output(tmp_path):
    cfg = tmp_path / "panel2.cfg"
    cfg.write_text("lambda = 0.05\n")
    commands = CLI_COMMANDS + [
        ("optimize", "--config", str(cfg)),
        ("curves", "--b", ",".join(f"{b:.2f}" for b in ELEVEN_PEAKS)),
    ]
    ok = True
    detail = ""
    for argv in commands:
        outs = []
        for _ in range(2):
            proc = subprocess.run(
                [sys.executable, "-m", "epiplan.cli", *argv],
                capture_output=True, check=True)
            outs.append(proc.stdout)
        if outs[0] != outs[1]:
            ok, detail = False, f"output differs for {' '.join(argv)}"
            break
    report(10, "repeated CLI runs are byte-identical", ok, detail)
