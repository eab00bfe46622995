"""Acceptance criteria 1-8, each run at full size and reported as one line."""

import random
import subprocess
import sys

import pytest

from dgdescent.report import Report
from dgdescent import harness
from dgdescent.holim import crosscheck_equalizer
from dgdescent.descent import f2_sweep, descent_to_comodule, validate_strict_comodule

RESULTS = {}


def record(n, title, rep):
    RESULTS[n] = (title, rep.ok, "" if rep.ok else rep.summary())
    assert rep.ok, rep.summary()


@pytest.fixture(scope="module")
def systems():
    out = []
    for k, sys in enumerate(harness.test_systems(3)):
        out.append((sys, harness.holim_seeds(sys, random.Random(100 + k))))
    return out


def test_criterion_1_sign_core():
    rep = harness.sign_core(random.Random(1), quads=200, max_n=8, conj_n=4)
    record(1, "sign core", rep)


def test_criterion_2_ainfty_bar():
    rep = harness.ainfty_bar(random.Random(2), count=50, corrupted=20, L=5)
    record(2, "A-infinity relations vs bar d^2", rep)


def test_criterion_3_afun_dg_category():
    rep = Report("AFun")
    rep.extend(harness.afun_exhaustive(1), "n=1: ")
    rep.extend(harness.afun_exhaustive(2), "n=2: ")
    rep.extend(harness.afun_random(random.Random(3), n=3, count=100), "n=3: ")
    record(3, "AFun(k[n], B) is a dg-category", rep)


def test_criterion_4_holim_dg_category(systems):
    rep = Report("holim")
    for k, (sys, seeds) in enumerate(systems):
        assert [L.dim for L in sys.levels][:3] == ([4, 6, 10] if k == 0 else [8, 12, 20])
        rep.extend(harness.holim_seed_report(sys, seeds), "system %d: " % k)
        rep.extend(harness.holim_laws(seeds, random.Random(40 + k), 100), "system %d: " % k)
    record(4, "holim dg-category on both systems", rep)


def test_criterion_5_equalizer_crosscheck(systems):
    rep = Report("crosscheck")
    for k, (sys, seeds) in enumerate(systems):
        rep.extend(crosscheck_equalizer(seeds, N=2, degrees=(-1, 0, 1)), "system %d: " % k)
    record(5, "equalizer cross-check", rep)


def test_criterion_6_comodule_translation(systems):
    rep = Report("translation")
    for k, (sys, seeds) in enumerate(systems):
        rep.extend(harness.comodule_translation(seeds, random.Random(60 + k), 100, max_m=5),
                   "system %d: " % k)
    record(6, "holim objects are A-infinity comodules", rep)


def test_criterion_7_classical_descent():
    rep = Report("classical")
    sweep = f2_sweep()
    rep.extend(sweep, "F2: ")
    for d in sweep.valid:
        rep.extend(validate_strict_comodule(descent_to_comodule(d)), "F2 %s: " % d.name)
    rep.extend(harness.barr_beck_instances(random.Random(7), 20), "Barr-Beck: ")
    record(7, "classical descent", rep)


def test_criterion_8_selftest_determinism():
    rep = Report("determinism")
    for seed in (1, 7, 2024):
        runs = [subprocess.run([sys.executable, "-m", "dgdescent", "selftest", "--seed",
                                str(seed)], capture_output=True) for _ in range(2)]
        rep.add("seed %d exit 0" % seed, all(p.returncode == 0 for p in runs))
        rep.add("seed %d byte-identical" % seed, runs[0].stdout == runs[1].stdout and runs[0].stdout)
    record(8, "selftest is deterministic", rep)


def summary_lines():
    lines = []
    for n in range(1, 9):
        if n in RESULTS:
            title, ok, detail = RESULTS[n]
            lines.append("criterion %d: %s  %s" % (n, "PASS" if ok else "FAIL", title))
        else:
            lines.append("criterion %d: NOT RUN" % n)
    return lines


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
