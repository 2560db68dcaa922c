"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Every test records a single PASS/FAIL line; the lines are printed in the
terminal summary (see conftest.py). Run this file directly to print them
without pytest.
"""

import random
import sys
import time
from collections import Counter
from fractions import Fraction

import pytest

from ppmlab import oracle
from ppmlab.coder import chain_width, decode, encode
from ppmlab.debruijn import martin_db, verify_db
from ppmlab.harness import ratio_curve, zone_bounds
from ppmlab.lz78 import decode_lz, encode_lz
from ppmlab.model import ESCAPE, BoundedModel, ModelConfig, StarModel, snapshot_rows
from ppmlab.sequence import (normality_stats, occ, prefix, prefix_through, segment,
                             zone_start)
from ppmlab.tables import BOUNDED_EXAMPLE_ROWS, STAR_EXAMPLE_ROWS

X = "0100110110"
DB6 = "0000001000011000101000111001001011001101001111010101110110111111"
CONFIGS = [ModelConfig("star")] + [ModelConfig("bounded", k) for k in range(6)]

RESULTS = []  # (number, passed, line)
CRITERIA = []


def criterion(number, title, limit=None):
    def wrap(fn):
        CRITERIA.append((number, title, limit, fn))
        return fn
    return wrap


def evaluate(number, title, limit, fn):
    checks = []

    def check(ok, text):
        checks.append((bool(ok), text))

    t = time.perf_counter()
    fn(check)
    seconds = time.perf_counter() - t
    if limit is not None:
        check(seconds < limit, "runtime %.1fs < %gs" % (seconds, limit))
    passed = all(ok for ok, _ in checks)
    failed = [text for ok, text in checks if not ok]
    line = "%s  criterion %2d  %-28s %7.1fs" % ("PASS" if passed else "FAIL", number, title, seconds)
    if failed:
        line += "  failed: " + "; ".join(failed)
    RESULTS.append((number, passed, line))
    return passed, checks, line


# -- criteria -----------------------------------------------------------------

@criterion(1, "reference tables", limit=1)
def c1_tables(check):
    check(snapshot_rows(BoundedModel(3).feed(X)) == BOUNDED_EXAMPLE_ROWS, "bounded k=3 table")
    check(snapshot_rows(StarModel().feed(X)) == STAR_EXAMPLE_ROWS, "PPM* table")


@criterion(2, "worked-example emission")
def c2_emission(check):
    want = [("110", ESCAPE, Fraction(1, 2)), ("10", 0, Fraction(1, 4))]
    for model in (BoundedModel(3).feed(X), StarModel().feed(X)):
        got = [(e.context, e.event, e.probability) for e in model.emit(0)]
        check(got == want, "%s chain %s" % (model.mode, got))


@criterion(3, "de Bruijn suite", limit=10)
def c3_debruijn(check):
    db3 = martin_db(3).data
    check(db3 == "00011101", "martin_db(3) = 00011101 (got %s)" % db3)
    check(martin_db(6).data == DB6, "martin_db(6) = reference row")
    for n in range(1, 15):
        check(verify_db(martin_db(n).data, n), "verify_db(martin_db(%d))" % n)
    for n in range(3, 15):
        db = martin_db(n).data
        check(db[:2 * n + 1] == "0" * n + "1" + "0" * (n - 2) + "11", "prefix shape n=%d" % n)
        check(db[(1 << n) - n:] == "1" * n, "suffix 1^n n=%d" % n)
    for n in range(1, 6):
        check(oracle.exhaustive_db_check(n, martin_db(n).data), "exhaustive minimum n=%d" % n)


@criterion(4, "enumeration suite", limit=30)
def c4_enumeration(check):
    for n in range(1, 15):
        seg = segment(n)
        blocks = Counter(seg[i:i + n] for i in range(0, len(seg), n))
        ok = len(seg) == n << n and len(blocks) == 1 << n and set(blocks.values()) == {1}
        check(ok, "every length-%d word once as a block of S_%d" % (n, n))


@criterion(5, "context building", limit=120)
def c5_contexts(check):
    for n in range(3, 11):
        model = StarModel().feed(prefix(zone_start(n) + (1 << n) + n))
        missing = [v for v in range(1 << n) if model.entry(format(v, "0%db" % n)) is None]
        check(not missing, "n=%d: %d length-%d contexts missing" % (n, len(missing), n))


def _roundtrip_corpus():
    rng = random.Random(20)
    corpus = [X, prefix(10_000)]
    corpus += ["".join(rng.choice("01") for _ in range(rng.randint(0, 2000))) for _ in range(200)]
    return corpus


@criterion(6, "round-trips")
def c6_roundtrip(check):
    corpus = _roundtrip_corpus()
    for cfg in CONFIGS:
        bad = sum(decode(encode(cfg, x), len(x), cfg) != x for x in corpus)
        check(bad == 0, "%s: %d of %d inputs differ" % (cfg, bad, len(corpus)))
    bad = sum(decode_lz(encode_lz(x)) != x for x in corpus)
    check(bad == 0, "lz78: %d of %d inputs differ" % (bad, len(corpus)))


@criterion(7, "coder accounting")
def c7_coder(check):
    corpus = _roundtrip_corpus()
    for cfg in CONFIGS:
        width = length = ideal = 0
        for x in corpus:
            code = encode(cfg, x, collect=True)
            iv = code.interval
            width += Fraction(iv.width, iv.denom) != chain_width(code.emissions)
            ell = code.interval_bits
            length += not ell <= len(code.bits) <= ell + 1
            fast = encode(cfg, x, ideal_only=True)
            ideal += abs(len(code.bits) - fast.ideal_bits) > 2
        check(width == 0, "%s: width != product of probabilities on %d inputs" % (cfg, width))
        check(length == 0, "%s: length outside sandwich on %d inputs" % (cfg, length))
        check(ideal == 0, "%s: ideal path off by > 2 bits on %d inputs" % (cfg, ideal))


@criterion(8, "zone cost bound", limit=600)
def c8_zone_bound(check):
    for r in zone_bounds(8, 13, ideal_only=False):
        check(r.holds, "n=%d: %.0f bits <= %.1f" % (r.n, r.measured_bits, r.bound_bits))


@criterion(9, "separation trends")
def c9_separation(check):
    ns = list(range(8, 15))
    points = [zone_start(n + 1) for n in ns]
    recs = ratio_curve(["ppm_star", "ppm_k", "lz78"], [1, 2, 3, 4, 5], 14, points,
                       ideal_only=True, jobs=4)
    by = {(r.algo, r.k, r.prefix_len): r.ratio for r in recs}
    star = [by[("ppm_star", None, p)] for p in points]
    check(all(a > b for a, b in zip(star, star[1:])),
          "PPM* strictly decreasing: %s" % ", ".join("%.4f" % float(s) for s in star))
    for n, p in zip(ns, points):
        for k in range(1, 6):
            mid = by[("ppm_k", k, p)]
            check(by[("ppm_star", None, p)] < mid < by[("lz78", None, p)],
                  "ordering at n=%d k=%d" % (n, k))
    last = points[-1]
    check(by[("ppm_star", None, last)] < 0.5, "PPM* at n=14 is %.4f" % by[("ppm_star", None, last)])
    check(by[("lz78", None, last)] > 0.8, "LZ78 at n=14 is %.4f" % by[("lz78", None, last)])


@criterion(10, "oracle agreement")
def c10_oracle(check):
    rng = random.Random(10)
    corpus = [("S|5000", prefix(5000), 700)]
    for i in range(100):
        x = "".join(rng.choice("01") for _ in range(500))
        corpus.append(("random#%d" % i, x, len(x)))
    for name, x, limit in corpus:
        rep = oracle.compare_incremental(StarModel, "star", x, snapshot_every=50,
                                         snapshot_limit=limit)
        check(not rep, "%s star: %s" % (name, rep))
        for k in range(6):
            rep = oracle.compare_incremental(lambda k=k: BoundedModel(k), "bounded", x, k=k,
                                             snapshot_every=50, snapshot_limit=limit)
            check(not rep, "%s k=%d: %s" % (name, k, rep))
    bad = 0
    for _ in range(10_000):
        w = "".join(rng.choice("01") for _ in range(rng.randint(1, 4)))
        x = "".join(rng.choice("01") for _ in range(rng.randint(0, 40)))
        bad += oracle.naive_occ(w, x) != occ(w, x)
    check(bad == 0, "naive_occ differs from occ on %d cases" % bad)


@criterion(11, "normality statistics")
def c11_normality(check):
    x = prefix_through(12).data
    for w, f in normality_stats(x, 3):
        check(abs(f - 2.0 ** -len(w)) <= 0.01, "freq(%s) = %.5f" % (w, f))


@pytest.mark.parametrize("number,title,limit,fn", CRITERIA, ids=[str(c[0]) for c in CRITERIA])
def test_criterion(number, title, limit, fn):
    passed, checks, line = evaluate(number, title, limit, fn)
    print(line)
    assert passed, line


if __name__ == "__main__":
    ok = True
    for entry in CRITERIA:
        passed, _, line = evaluate(*entry)
        print(line, flush=True)
        ok = ok and passed
    sys.exit(0 if ok else 1)
