"""The nine acceptance criteria, each at its stated tolerance."""
import itertools
import os
import subprocess
import sys
import time

import pytest

from catgroup.cgroup import certify_special, replay_cert
from catgroup.construct import build_categorical_group
from catgroup.crossed import _weak_violations, classify, special_lift_violation
from catgroup.instances import builtin_instance, canonical_key, search_fattened
from catgroup.rawcheck import raw_agreement
from catgroup.report import ValidationReport
from catgroup.star import classical_core, group_groupoid_from_classical, round_trip, star_crossed_module
from catgroup.verify import interchange_cases, verify_all

from conftest import ACCEPTANCE

VERIFY_SET = ("TRIV", "XM4", "S3A3", "FZ2")
STRICT = ("XM4", "S3A3", "K4Z2", "Q8Z")
ALL = ("TRIV", "XM4", "S3A3", "K4Z2", "Q8Z", "FZ2")


def _record(key, ok, text):
    ACCEPTANCE[key] = (ok, text)
    assert ok, text


@pytest.fixture(scope="module")
def hits():
    return search_fattened(3, 2, 10000, seed=1)


def _every_instance(hits):
    return [(n, builtin_instance(n)) for n in ALL] + [(f"hit{i}", h.xm) for i, h in enumerate(hits)]


def test_1_verify_passes_on_named_instances():
    slow, failed = [], []
    for name in VERIFY_SET:
        xm = builtin_instance(name)
        t = time.perf_counter()
        rep = verify_all(build_categorical_group(xm), xm.n.special)
        dt = time.perf_counter() - t
        if not rep.ok:
            failed.append((name, [c.line() for c in rep.checks if not c.ok]))
        if dt >= 10:
            slow.append((name, dt))
        for part in ("monoidal/interchange", "monoidal/pentagon", "categorical group/zigzag-unit",
                     "coherence/special-pairs-match", "kernel commutation/ker-commute"):
            assert rep.get(part).ok
    _record(1, not failed and not slow,
            f"verify all PASS on {', '.join(VERIFY_SET)}; failures={failed} slow={slow}")


def test_2_round_trip_strict_family():
    sizes = {}
    ok = True
    for name in STRICT:
        xm = builtin_instance(name)
        rep = round_trip(classical_core(xm))
        sizes[name] = (rep.arrows_built, xm.n.n * xm.m.n)
        ok = ok and rep.found and rep.arrows_built == xm.n.n * xm.m.n
    ok = ok and sizes["XM4"][0] == 8 and sizes["S3A3"][0] == 18
    _record(2, ok, f"isomorphism found, |G1| = |N||M|: {sizes}")


def test_3_star_of_group_groupoids_is_cssc():
    out = {}
    for name in ("TRIV",) + STRICT:
        c = group_groupoid_from_classical(classical_core(builtin_instance(name)))
        xs = star_crossed_module(c)
        rep = ValidationReport("W")
        _weak_violations(xs, rep)
        flags = classify(xs)
        eq_m = frozenset((a, a) for a in xs.m.carrier)
        eq_n = frozenset((a, a) for a in xs.n.carrier)
        out[name] = (flags.cssc and rep.ok and special_lift_violation(xs) is None
                     and xs.weak == eq_m and xs.n.special == eq_n)
    _record(3, all(out.values()), f"cssc, no W1-W10 or lift violations, W = S_N = equality: {out}")


def test_4_boundary_of_zero_is_special_to_zero(hits):
    bad = []
    for name, xm in _every_instance(hits):
        z = xm.boundary[xm.m.zero]
        cert = certify_special(xm.n, z, xm.n.zero)
        if not xm.n.is_special(z, xm.n.zero) or cert is None or replay_cert(xm.n, cert) != (z, xm.n.zero):
            bad.append(name)
    _record(4, not bad, f"(d0, 0) in closure with replayed certificate on "
                        f"{len(ALL) + len(hits)} instances; failures={bad}")


def test_5_weak_special_lifts_unique(hits):
    checked, bad = 0, []
    for name, xm in _every_instance(hits):
        n = xm.n
        for c, r in itertools.product(xm.m.carrier, n.carrier):
            if n.is_special(xm.boundary[c], r):
                checked += 1
                lifts = [c2 for c2 in xm.m.carrier if xm.boundary[c2] == r and (c, c2) in xm.weak]
                if len(lifts) != 1:
                    bad.append((name, c, r, len(lifts)))
    _record(5, not bad, f"{checked} (c, r) pairs, exceptions={len(bad)}")


def test_6_raw_operations_agree_with_normal_form():
    res = {}
    for name in ALL:
        r = raw_agreement(builtin_instance(name), pairs=1000, seed=6)
        res[name] = (r.pairs, len(r.mismatches))
    ok = all(p >= 1000 and m == 0 for p, m in res.values())
    _record(6, ok, f"(pairs, mismatches) per instance: {res}")


def test_7_interchange_and_identity_sum_exhaustive(hits):
    t = time.perf_counter()
    cases, bad = 0, []
    models = [(n, build_categorical_group(xm)) for n, xm in _every_instance(hits)]
    models = [(n, m) for n, m in models if m.n_arrows <= 64]
    for name, m in models:
        for w, ok in interchange_cases(m):
            cases += 1
            if not ok:
                bad.append((name, "interchange", w))
        for x, y in itertools.product(m.objects, repeat=2):
            cases += 1
            if m.add_arr[m.ident[x]][m.ident[y]] != m.ident[m.add_obj[x][y]]:
                bad.append((name, "identity-sum", (x, y)))
    dt = time.perf_counter() - t
    _record(7, not bad and dt < 60,
            f"{cases} cases on {len(models)} models, violations={len(bad)}, under 60 s={dt < 60}")


def test_8_search_reaches_non_strict_cssc():
    t = time.perf_counter()
    found = search_fattened(3, 2, 10000, seed=1)
    dt = time.perf_counter() - t
    key = canonical_key(builtin_instance("FZ2"))
    non_strict = all(h.xm.n.special != frozenset((a, a) for a in h.xm.n.carrier) for h in found)
    cssc = all(classify(h.xm).cssc for h in found)
    has_fz2 = any(h.key == key for h in found)
    _record(8, len(found) >= 1 and non_strict and cssc and has_fz2 and dt < 60,
            f"{len(found)} non-strict cssc instances, FZ2 among them={has_fz2}, "
            f"under 60 s={dt < 60}")


REPORT_COMMANDS = [
    ["verify", "TRIV"], ["verify", "XM4"], ["verify", "S3A3"], ["verify", "FZ2"],
    ["roundtrip", "XM4"], ["roundtrip", "S3A3"], ["roundtrip", "K4Z2"],
    ["classify", "FZ2"], ["instance", "FZ2"],
    ["--summary", "search", "--max-n", "3", "--max-m", "2", "--trials", "2000", "--seed", "1"],
]


def _run_reports(tmp_path, tag, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    chunks = []
    for cmd in REPORT_COMMANDS:
        p = subprocess.run([sys.executable, "-m", "catgroup.cli", *cmd],
                           capture_output=True, env=env, check=False)
        chunks.append(p.stdout + f"rc={p.returncode}\n".encode())
    dump = tmp_path / f"dump_{tag}.txt"
    subprocess.run([sys.executable, "-m", "catgroup.cli", "build", "S3A3", "--dump", str(dump)],
                   capture_output=True, env=env, check=True)
    chunks.append(dump.read_bytes())
    return b"".join(chunks)


def test_9_reports_are_byte_identical(tmp_path):
    first = _run_reports(tmp_path, "a", 1)
    second = _run_reports(tmp_path, "b", 2)
    _record(9, first == second,
            f"{len(REPORT_COMMANDS) + 1} reports, {len(first)} bytes, identical={first == second}")
