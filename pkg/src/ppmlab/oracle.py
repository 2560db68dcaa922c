"""Brute-force cross-checks for the fast paths.

Nothing here imports the model, coder or sequence internals; every routine is
a direct, slow restatement of a definition.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

Counts = Tuple[int, int]


@dataclass
class DivergenceReport:
    position: Optional[int] = None
    expected: str = ""
    actual: str = ""

    def __bool__(self):
        # True when there is a divergence to report
        return self.position is not None

    def __str__(self):
        if self.position is None:
            return "agreement"
        return "diverged at bit %d:\n  expected %s\n  actual   %s" % (
            self.position, self.expected, self.actual)


def naive_occ(w: str, x: str) -> int:
    return sum(1 for i in range(len(x) - len(w) + 1) if x[i:i + len(w)] == w)


def rebuild_model(mode: str, prefix: str, k: Optional[int] = None) -> Dict[str, Counts]:
    """Context table for ``prefix`` computed straight from the definitions.

    Bounded(k): every substring of length <= k seen followed by a bit.
    Star: ``wb`` for every ``w`` occurring at least twice and every ``b``
    that has followed it, provided ``wb`` itself has been seen followed by
    a bit. Counts are the numbers of times each bit followed the context.
    """
    n = len(prefix)
    if mode == "bounded":
        top = k
    elif mode == "star":
        # Longest string occurring at least twice; contexts are at most one longer.
        occ = Counter()
        repeat = 0
        for length in range(1, n + 1):
            seen = Counter(prefix[i:i + length] for i in range(n - length + 1))
            occ.update(seen)
            if max(seen.values()) < 2:
                break
            repeat = length
        top = repeat + 1
    else:
        raise ValueError("unknown mode %r" % mode)
    follow: Dict[str, List[int]] = defaultdict(lambda: [0, 0])
    for end in range(-1, n - 1):
        nxt = int(prefix[end + 1])
        for length in range(0, min(top, end + 1) + 1):
            follow[prefix[end + 1 - length:end + 1]][nxt] += 1
    table = {}
    for ctx, v in follow.items():
        if mode == "star" and len(ctx) >= 2 and occ[ctx[:-1]] < 2:
            continue
        table[ctx] = (v[0], v[1])
    return table


def table_from_entries(entries) -> Dict[str, Counts]:
    return {e.context: tuple(e.counts) for e in entries}


def compare_tables(expected: Dict[str, Counts], actual: Dict[str, Counts]) -> Optional[str]:
    if expected == actual:
        return None
    missing = sorted(set(expected) - set(actual), key=lambda c: (len(c), c))[:5]
    extra = sorted(set(actual) - set(expected), key=lambda c: (len(c), c))[:5]
    wrong = [c for c in expected if c in actual and expected[c] != actual[c]][:5]
    return "missing=%s extra=%s wrong=%s" % (missing, extra,
                                               [(c, expected[c], actual[c]) for c in wrong])


class MatchTable:
    """Counts for every suffix length of the history, via match lengths.

    ``m[e]`` is the length of the longest common suffix of ``x[:e+1]`` and
    the whole history; a suffix of length l has been followed by
    ``x[e+1]`` once for each e with ``m[e] >= l``. Index 0 stands for the
    empty prefix (e = -1).
    """

    def __init__(self, x: str):
        self.x = np.frombuffer(x.encode("ascii"), dtype=np.uint8) - 48
        self.i = 0
        self.m = np.zeros(1, dtype=np.int64)  # m for e = -1 only

    def runs(self, cap: Optional[int] = None) -> List[Tuple[int, int, int, int]]:
        """Relevant suffix lengths as runs ``(shortest, longest, c0, c1)``, longest first."""
        i = self.i
        if i == 0:
            return []
        # end positions e = -1 .. i-2 have continuations x[e+1] = x[0..i-1]
        m = self.m[:i]
        nxt = self.x[:i]
        top = int(m.max())
        if cap is not None:
            top = min(top, cap)
            m = np.minimum(m, cap)
        c0 = np.bincount(m[nxt == 0], minlength=top + 1)[::-1].cumsum()[::-1]
        c1 = np.bincount(m[nxt == 1], minlength=top + 1)[::-1].cumsum()[::-1]
        out = []
        for ell in range(top, -1, -1):
            pair = (int(c0[ell]), int(c1[ell]))
            if out and (out[-1][2], out[-1][3]) == pair:
                out[-1] = (ell, out[-1][1], pair[0], pair[1])
            else:
                out.append((ell, ell, pair[0], pair[1]))
        return out

    def advance(self):
        """Append history bit x[i]."""
        i = self.i
        b = self.x[i]
        # new m over e = -1 .. i-1 (new end position i is the history itself)
        new = np.zeros(i + 1, dtype=np.int64)
        if i >= 1:
            same = self.x[:i] == b
            new[1:i + 1] = np.where(same, self.m[:i] + 1, 0)
        self.m = new
        self.i += 1


def oracle_chain(mode: str, runs, symbol: int) -> List[Tuple[int, str, Fraction]]:
    """Emission chain ``(context length, event, probability)`` from runs.

    Length -1 denotes the order -1 table.
    """
    lengths = []
    for lo, hi, c0, c1 in runs:
        for ell in range(hi, lo - 1, -1):
            lengths.append((ell, c0, c1))
    if mode == "star":
        det = [j for j, (_, c0, c1) in enumerate(lengths) if (c0 == 0) != (c1 == 0)]
        start = max(det) if det else 0
    else:
        start = 0
    chain = []
    for ell, c0, c1 in lengths[start:]:
        esc = (c0 > 0) + (c1 > 0)
        total = c0 + c1 + esc
        if (c1 if symbol else c0) > 0:
            chain.append((ell, str(symbol), Fraction(c1 if symbol else c0, total)))
            return chain
        chain.append((ell, "$", Fraction(esc, total)))
    chain.append((-1, str(symbol), Fraction(1, 2)))
    return chain


def model_runs(model) -> List[Tuple[int, int, int, int]]:
    """The same run encoding, read from an incremental model's relevant contexts."""
    out = []
    if model.mode == "star":
        items = model.relevant_runs()
    else:
        items = [(len(e.context), len(e.context), e.counts[0], e.counts[1])
                 for e in model.relevant_contexts()]
    for lo, hi, c0, c1 in items:
        if out and (out[-1][2], out[-1][3]) == (c0, c1) and out[-1][0] == hi + 1:
            out[-1] = (lo, out[-1][1], c0, c1)
        else:
            out.append((lo, hi, c0, c1))
    return out


def compare_incremental(model_factory, mode: str, x: str, k: Optional[int] = None,
                        snapshot_every: int = 0, snapshot_limit: int = 0) -> DivergenceReport:
    """Feed ``x`` bit by bit, checking the model against the oracles.

    At every prefix the relevant contexts (with counts) and the emission
    chain of the next bit are compared with ``MatchTable``. Every
    ``snapshot_every`` bits and at the end, as long as the prefix is at most
    ``snapshot_limit`` bits, the full context table is compared with
    ``rebuild_model``.
    """
    model = model_factory()
    table = MatchTable(x)
    cap = k if mode == "bounded" else None
    for i in range(len(x) + 1):
        expected = table.runs(cap)
        actual = model_runs(model)
        if expected != actual:
            return DivergenceReport(i, "relevant %s" % expected[:6], "relevant %s" % actual[:6])
        at_end = i == len(x)
        due = at_end or (snapshot_every and i % snapshot_every == 0)
        if due and i <= snapshot_limit:
            want = rebuild_model(mode, x[:i], k)
            got = table_from_entries(model.snapshot())
            diff = compare_tables(want, got)
            if diff:
                return DivergenceReport(i, "rebuilt table", diff)
        if at_end:
            break
        symbol = int(x[i])
        want_chain = oracle_chain(mode, expected, symbol)
        got_chain = [(-1 if e.context is None else len(e.context), str(e.event), e.probability)
                     for e in model.emit(symbol)]
        if want_chain != got_chain:
            return DivergenceReport(i, "chain %s" % want_chain, "chain %s" % got_chain)
        model.update(symbol)
        table.advance()
    return DivergenceReport()


def all_db_strings(n: int) -> List[str]:
    """Every binary string of length 2^n that is de Bruijn of order n, in lexicographic order.

    Depth-first over all strings with 0 tried before 1, abandoning a prefix
    as soon as one of its n-windows repeats (no extension of it can qualify).
    """
    size = 1 << n
    found = []
    x = []
    seen = set()

    def walk():
        if len(x) == size:
            ext = "".join(x) + "".join(x[:n - 1])
            if len({ext[i:i + n] for i in range(size)}) == size:
                found.append("".join(x))
            return
        for b in "01":
            x.append(b)
            w = "".join(x[-n:]) if len(x) >= n else None
            if w is None or w not in seen:
                if w is not None:
                    seen.add(w)
                walk()
                if w is not None:
                    seen.discard(w)
            x.pop()

    walk()
    return found


def exhaustive_db_check(n: int, candidate: str) -> bool:
    """True iff ``candidate`` is the least de Bruijn string of order n (n <= 5)."""
    if not 1 <= n <= 5:
        raise ValueError("exhaustive search only for 1 <= n <= 5")
    strings = all_db_strings(n)
    return bool(strings) and min(strings) == candidate
