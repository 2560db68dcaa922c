"""Ratio curves, zone-cost bounds and the desk-scale verification suites."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import oracle
from .coder import ceil_neg_log2, decode, encode
from .debruijn import martin_db, verify_db
from .lz78 import decode_lz, encode_lz, pointer_width
from .model import ModelConfig, StarModel
from .sequence import (check_enumeration, normality_stats, prefix, prefix_through,
                       zone_of, zone_start)

ALGOS = ("ppm_star", "ppm_k", "lz78")
DEFAULT_N_MAX = 14


@dataclass(frozen=True)
class RatioRecord:
    prefix_len: int
    zone: int
    algo: str
    k: Optional[int]
    output_bits: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.output_bits, self.prefix_len)

    def row(self) -> List[str]:
        return [str(self.prefix_len), str(self.zone), self.algo,
                "" if self.k is None else str(self.k), str(self.output_bits),
                "%.6f" % (self.output_bits / self.prefix_len)]


CSV_HEADER = ["prefix_len", "zone", "algo", "k", "output_bits", "ratio"]


def bad_zone_length(n: int) -> int:
    return (1 << n) + 2 * n


def default_points(n_max: int) -> List[int]:
    """Every zone boundary and every bad-zone end up to S_{n_max}."""
    points = set()
    for n in range(1, n_max + 1):
        start = zone_start(n)
        end = zone_start(n + 1)
        points.add(end)
        if start + bad_zone_length(n) <= end:
            points.add(start + bad_zone_length(n))
    return sorted(points)


# -- cost profiles ----------------------------------------------------------

def ppm_profile(config: ModelConfig, x: str, points: Iterable[int],
                ideal_only: bool = False) -> Dict[int, float]:
    """Output bits after each prefix length in ``points``.

    Exact mode reports ``ceil(-log2 width)`` of the running interval, which
    is the length ``finalize`` would produce at that point; ideal mode
    reports the running sum of -log2(p).
    """
    wanted = sorted(set(p for p in points if 0 < p <= len(x)))
    out: Dict[int, float] = {}
    if not wanted:
        return out
    model = config.build()
    low, width, denom = 0, 1, 1
    ideal = 0.0
    log2 = math.log2
    j = 0
    for i, ch in enumerate(x[:wanted[-1]]):
        symbol = 1 if ch == "1" else 0
        for _, c0, c1 in model.candidates():
            esc = (c0 > 0) + (c1 > 0)
            total = c0 + c1 + esc
            c = c1 if symbol else c0
            if c:
                ideal += log2(total / c)
                if not ideal_only:
                    width *= c
                    denom *= total
                break
            ideal += log2(total / esc)
            if not ideal_only:
                width *= esc
                denom *= total
        else:
            ideal += 1.0
            if not ideal_only:
                denom *= 2
        model.update(symbol)
        if i + 1 == wanted[j]:
            out[wanted[j]] = ideal if ideal_only else ceil_neg_log2(width, denom)
            j += 1
    return out


def lz_profile(x: str, points: Iterable[int]) -> Dict[int, int]:
    """Fixed-width LZ78 code length after each prefix length in ``points``."""
    wanted = sorted(set(p for p in points if 0 < p <= len(x)))
    out: Dict[int, int] = {}
    trie = [{}]
    node = 0
    phrases = 0
    bits = 0  # cost of the complete phrases so far
    j = 0
    for i, ch in enumerate(x[:wanted[-1]] if wanted else ""):
        child = trie[node].get(ch)
        if child is None:
            trie[node][ch] = len(trie)
            trie.append({})
            phrases += 1
            bits += pointer_width(phrases) + 1
            node = 0
        else:
            node = child
        if i + 1 == wanted[j]:
            # an unfinished phrase costs its pointer only
            out[wanted[j]] = bits + (pointer_width(phrases + 1) if node else 0)
            j += 1
    return out


def _run_one(job) -> List[RatioRecord]:
    algo, k, x, points, ideal_only = job
    if algo == "lz78":
        prof = lz_profile(x, points)
    else:
        cfg = ModelConfig("star") if algo == "ppm_star" else ModelConfig("bounded", k)
        prof = ppm_profile(cfg, x, points, ideal_only)
    return [RatioRecord(p, zone_of(p - 1), algo, k, int(math.ceil(v - 1e-9)))
            for p, v in sorted(prof.items())]


def ratio_curve(algos: Sequence[str], ks: Sequence[int], n_max: int = DEFAULT_N_MAX,
                points: Optional[Sequence[int]] = None, ideal_only: bool = False,
                jobs: int = 1) -> List[RatioRecord]:
    """Ratio records for each algorithm over prefixes of S_1 ... S_{n_max}.

    ``ppm_k`` runs once for every k in ``ks``. Prefix length 0 has no ratio
    and is skipped.
    """
    for a in algos:
        if a not in ALGOS:
            raise ValueError("unknown algorithm %r" % a)
    if "ppm_k" in algos and not ks:
        raise ValueError("ppm_k needs at least one k")
    x = prefix_through(n_max).data
    pts = [p for p in (points if points is not None else default_points(n_max))
           if 0 < p <= len(x)]
    job_list = []
    for a in algos:
        if a == "ppm_k":
            job_list.extend(("ppm_k", k, x, pts, ideal_only) for k in ks)
        else:
            job_list.append((a, None, x, pts, ideal_only))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_one, job_list))
    else:
        parts = [_run_one(j) for j in job_list]
    records = [r for part in parts for r in part]
    records.sort(key=lambda r: (r.algo, -1 if r.k is None else r.k, r.prefix_len))
    return records


def records_to_csv(records: Iterable[RatioRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


# -- zone bounds --------------------------------------------------------------

def upper_bound_bits(n: int) -> float:
    """(2^n + 2n + n^2) log(n^5) + log((n-1)^n n^(2^(n+1))), logs base 2."""
    return ((1 << n) + 2 * n + n * n) * 5 * math.log2(n) \
        + n * math.log2(n - 1) + (1 << (n + 1)) * math.log2(n)


def bad_zone_bound_bits(n: int) -> float:
    return bad_zone_length(n) * 5 * math.log2(n)


@dataclass(frozen=True)
class BoundRecord:
    n: int
    measured_bits: float
    bound_bits: float
    bad_zone_bits: float
    bad_zone_bound: float

    @property
    def holds(self) -> bool:
        return self.measured_bits <= self.bound_bits

    @property
    def bad_zone_holds(self) -> bool:
        return self.bad_zone_bits <= self.bad_zone_bound


def zone_bounds(n_lo: int, n_hi: int, ideal_only: bool = True) -> List[BoundRecord]:
    """PPM* bits spent on S_n (after S_1..S_{n-1}) and on its bad zone, against the bounds."""
    x = prefix_through(n_hi).data
    points = []
    for n in range(max(1, n_lo - 1), n_hi + 1):
        points += [zone_start(n), zone_start(n) + bad_zone_length(n), zone_start(n + 1)]
    prof = ppm_profile(ModelConfig("star"), x, points, ideal_only)
    prof[0] = 0.0
    out = []
    for n in range(max(2, n_lo), n_hi + 1):
        s, e = zone_start(n), zone_start(n + 1)
        bz = s + bad_zone_length(n)
        out.append(BoundRecord(n, prof[e] - prof[s], upper_bound_bits(n),
                               prof[bz] - prof[s], bad_zone_bound_bits(n)))
    return out


def first_holding(records: Sequence[BoundRecord], attr: str = "holds") -> Optional[int]:
    """Smallest n from which the bound holds for every later record."""
    first = None
    for r in records:
        if getattr(r, attr):
            if first is None:
                first = r.n
        else:
            first = None
    return first


# -- model-level checks ------------------------------------------------------

def missing_contexts_after_build(n: int) -> List[str]:
    """Length-n words with no PPM* context after S_1..S_{n-1} and 2^n + n bits of S_n."""
    x = prefix(zone_start(n) + (1 << n) + n)
    model = StarModel().feed(x)
    missing = []
    for v in range(1 << n):
        w = format(v, "0%db" % n)
        if model.entry(w) is None:
            missing.append(w)
    return missing


def bad_zone_context(n: int):
    """The entry for 0 1 0^(n-2) 1 once the bad zone of S_n has been read."""
    x = prefix(zone_start(n) + bad_zone_length(n))
    model = StarModel().feed(x)
    return model.entry("01" + "0" * (n - 2) + "1")


def deterministic_hits(x: str) -> Tuple[int, int]:
    """Check that correct deterministic predictions cost k/(k+1).

    Returns (number of such predictions, number violating the form).
    """
    model = StarModel()
    seen = bad = 0
    for ch in x:
        symbol = int(ch)
        chain = model.emit(symbol)
        if len(chain) == 1 and chain[0].context is not None:
            entry = model.select_context()
            if entry.deterministic:
                seen += 1
                k = entry.counts[symbol]
                if chain[0].probability != Fraction(k, k + 1):
                    bad += 1
        model.update(symbol)
    return seen, bad


# -- suites -------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    lines: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok: bool, text: str) -> bool:
        self.lines.append("%s  %s" % ("PASS" if ok else "FAIL", text))
        self.passed = self.passed and ok
        return ok


def suite_debruijn(res: SuiteResult, n_max: int = 14, **_):
    res.check(verify_db("00011101", 3), "00011101 is de Bruijn of order 3")
    res.lines.append("info  db(3) = %s" % martin_db(3).data)
    for n in range(1, n_max + 1):
        db = martin_db(n).data
        ok = verify_db(db, n)
        if n >= 3:
            ok = ok and db[:2 * n + 1] == "0" * n + "1" + "0" * (n - 2) + "11"
            ok = ok and db.endswith("1" * n)
        res.check(ok, "db(%d) is de Bruijn%s" % (n, " with 0^n 1 0^(n-2) 11 ... 1^n shape" if n >= 3 else ""))
    for n in range(1, 6):
        res.check(oracle.exhaustive_db_check(n, martin_db(n).data),
                  "db(%d) is the exhaustive lexicographic minimum" % n)


def suite_enumeration(res: SuiteResult, n_max: int = 14, **_):
    for n in range(1, n_max + 1):
        res.check(check_enumeration(n), "S_%d block-enumerates {0,1}^%d" % (n, n))


def suite_tables(res: SuiteResult, **_):
    from .tables import BOUNDED_EXAMPLE_ROWS, STAR_EXAMPLE_ROWS, rows_of
    from .model import BoundedModel
    b = BoundedModel(3).feed("0100110110")
    s = StarModel().feed("0100110110")
    res.check(rows_of(b) == BOUNDED_EXAMPLE_ROWS, "PPM_3 model of 0100110110 equals the bounded reference table")
    res.check(rows_of(s) == STAR_EXAMPLE_ROWS, "PPM* model of 0100110110 equals the PPM* reference table")


def suite_contexts(res: SuiteResult, n_lo: int = 3, n_hi: int = 10, **_):
    for n in range(n_lo, n_hi + 1):
        missing = missing_contexts_after_build(n)
        res.check(not missing, "all 2^%d contexts of length %d built (missing %d)"
                  % (n, n, len(missing)))


def suite_deterministic(res: SuiteResult, n_lo: int = 7, n_hi: int = 13, **_):
    for n in range(n_lo, n_hi + 1, 1):
        if n % 2 == 0:
            continue
        e = bad_zone_context(n)
        ok = e is not None and e.deterministic and e.counts[1] > 0
        res.check(ok, "n=%d: context 010^%d1 deterministic for 1 (%s)"
                  % (n, n - 2, None if e is None else e.counts))


def suite_zone_bound(res: SuiteResult, n_lo: int = 8, n_hi: int = 13, **_):
    recs = zone_bounds(2, n_hi)
    for r in recs:
        if r.n >= n_lo:
            res.check(r.holds, "n=%d: zone bits %.1f <= bound %.1f" % (r.n, r.measured_bits, r.bound_bits))
    res.lines.append("info  zone bound holds from n=%s on (checked from 2)" % first_holding(recs))


def suite_badzone(res: SuiteResult, n_lo: int = 8, n_hi: int = 13, **_):
    recs = zone_bounds(2, n_hi)
    for r in recs:
        if r.n >= n_lo:
            res.check(r.bad_zone_holds, "n=%d: bad-zone bits %.1f <= %.1f"
                      % (r.n, r.bad_zone_bits, r.bad_zone_bound))
    res.lines.append("info  bad-zone bound holds from n=%s on"
                     % first_holding(recs, "bad_zone_holds"))


def suite_roundtrip(res: SuiteResult, samples: int = 200, max_len: int = 2000,
                    seed: int = 0, s_len: int = 10_000, **_):
    rng = random.Random(seed)
    inputs = [("0100110110", "example"), (prefix(s_len), "S|%d" % s_len)]
    inputs += [("".join(rng.choice("01") for _ in range(rng.randint(0, max_len))), "random")
               for _ in range(samples)]
    configs = [ModelConfig("star")] + [ModelConfig("bounded", k) for k in range(6)]
    for cfg in configs:
        bad = 0
        for x, _label in inputs:
            code = encode(cfg, x)
            if decode(code, len(x), cfg) != x:
                bad += 1
        res.check(bad == 0, "%s round-trips %d inputs" % (cfg, len(inputs)))
    bad = sum(decode_lz(encode_lz(x)) != x for x, _ in inputs)
    res.check(bad == 0, "lz78 round-trips %d inputs" % len(inputs))


def suite_coder(res: SuiteResult, samples: int = 50, seed: int = 1, **_):
    from .coder import chain_width
    rng = random.Random(seed)
    inputs = ["0100110110", prefix(3000)]
    inputs += ["".join(rng.choice("01") for _ in range(rng.randint(1, 1000))) for _ in range(samples)]
    for cfg in [ModelConfig("star")] + [ModelConfig("bounded", k) for k in range(6)]:
        ok_w = ok_len = ok_ideal = True
        for x in inputs:
            code = encode(cfg, x, collect=True)
            iv = code.interval
            ok_w &= Fraction(iv.width, iv.denom) == chain_width(code.emissions)
            ell = code.interval_bits
            ok_len &= ell <= len(code.bits) <= ell + 1
            ok_ideal &= abs(len(code.bits) - code.ideal_bits) <= 2
        res.check(ok_w, "%s: width equals product of emission probabilities" % cfg)
        res.check(ok_len, "%s: code length within [ceil(-log2 w), +1]" % cfg)
        res.check(ok_ideal, "%s: ideal length within 2 bits of exact" % cfg)


def suite_oracle(res: SuiteResult, s_len: int = 5000, samples: int = 100,
                 length: int = 500, seed: int = 2, **_):
    from .model import BoundedModel
    rng = random.Random(seed)
    corpus = [("S|%d" % s_len, prefix(s_len))]
    corpus += [("random#%d" % i, "".join(rng.choice("01") for _ in range(length)))
               for i in range(samples)]
    for name, x in corpus:
        limit = 700 if name.startswith("S") else len(x)
        rep = oracle.compare_incremental(StarModel, "star", x, snapshot_every=50,
                                         snapshot_limit=limit)
        ok = not rep
        for k in range(6):
            if not ok:
                break
            rep = oracle.compare_incremental(lambda k=k: BoundedModel(k), "bounded", x, k=k,
                                             snapshot_every=50, snapshot_limit=len(x))
            ok = not rep
        if not ok or name.startswith("S"):
            res.check(ok, "%s: incremental model matches rebuild (%s)" % (name, rep))
    res.check(res.passed, "%d random strings agree in both modes" % samples)
    from .sequence import occ
    bad = 0
    for _ in range(10_000):
        w = "".join(rng.choice("01") for _ in range(rng.randint(1, 4)))
        x = "".join(rng.choice("01") for _ in range(rng.randint(0, 40)))
        bad += oracle.naive_occ(w, x) != occ(w, x)
    res.check(bad == 0, "naive_occ equals occ on 10^4 random cases")


def suite_normality(res: SuiteResult, n_max: int = 12, max_word_len: int = 3, **_):
    x = prefix_through(n_max).data
    worst = 0.0
    for w, f in normality_stats(x, max_word_len):
        worst = max(worst, abs(f - 2.0 ** -len(w)))
    res.check(worst <= 0.01, "max |freq - 2^-|w|| = %.5f over words <= %d on S_1..S_%d"
              % (worst, max_word_len, n_max))


def suite_separation(res: SuiteResult, n_lo: int = 8, n_hi: int = DEFAULT_N_MAX,
                     ideal_only: bool = True, **_):
    pts = [zone_start(n + 1) for n in range(n_lo, n_hi + 1)]
    recs = ratio_curve(["ppm_star", "ppm_k", "lz78"], [1, 2, 3, 4, 5], n_hi, pts, ideal_only)
    by = {}
    for r in recs:
        by[(r.algo, r.k, r.zone)] = r.ratio
    star = [by[("ppm_star", None, n)] for n in range(n_lo, n_hi + 1)]
    res.check(all(a > b for a, b in zip(star, star[1:])),
              "PPM* ratio strictly decreasing over n=%d..%d: %s"
              % (n_lo, n_hi, ", ".join("%.4f" % float(s) for s in star)))
    ok = True
    for n in range(n_lo, n_hi + 1):
        for k in range(1, 6):
            ok &= by[("ppm_star", None, n)] < by[("ppm_k", k, n)] < by[("lz78", None, n)]
    res.check(ok, "PPM* < PPM_k (k=1..5) < LZ78 at every boundary")
    s14 = by[("ppm_star", None, n_hi)]
    lz = by[("lz78", None, n_hi)]
    res.check(s14 < 0.5, "PPM* ratio at n=%d is %.4f < 0.5" % (n_hi, s14))
    res.check(lz > 0.8, "LZ78 ratio at n=%d is %.4f > 0.8" % (n_hi, lz))


SUITES: Dict[str, Callable] = {
    "debruijn": suite_debruijn,
    "enumeration": suite_enumeration,
    "tables": suite_tables,
    "contexts": suite_contexts,
    "deterministic": suite_deterministic,
    "zone-bound": suite_zone_bound,
    "badzone": suite_badzone,
    "roundtrip": suite_roundtrip,
    "coder": suite_coder,
    "oracle": suite_oracle,
    "normality": suite_normality,
    "separation": suite_separation,
}


def run_suite(name: str, **params) -> SuiteResult:
    if name not in SUITES:
        raise KeyError("unknown suite %r (choose from %s)" % (name, ", ".join(SUITES)))
    res = SuiteResult(name)
    t = time.perf_counter()
    SUITES[name](res, **params)
    res.seconds = time.perf_counter() - t
    return res
