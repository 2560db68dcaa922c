"""Adaptive PPM context models over the binary alphabet.

Two modes share the Method C escape rule and the order -1 fallback:

* ``BoundedModel(k)`` stores every context of length <= k that has been seen
  followed by a bit, and codes from the longest relevant context.
* ``StarModel()`` (PPM*) stores a context ``wb`` once ``w`` has occurred at
  least twice and ``b`` has followed it, and codes from the shortest
  deterministic relevant context.

Unbounded contexts are represented implicitly by an online suffix automaton.
All strings sharing a state have the same end positions in the history, so
they carry identical continuation counts; each state therefore stands for a
run of contexts of consecutive lengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple, Union

ESCAPE = "$"
Event = Union[int, str]

# A coding candidate: (context length, count of 0, count of 1).
Candidate = Tuple[int, int, int]


@dataclass(frozen=True)
class ContextEntry:
    context: str
    counts: Tuple[int, int]

    @property
    def escape_count(self) -> int:
        return (self.counts[0] > 0) + (self.counts[1] > 0)

    @property
    def total(self) -> int:
        return self.counts[0] + self.counts[1] + self.escape_count

    @property
    def deterministic(self) -> bool:
        return self.escape_count == 1

    def predicts(self, bit: int) -> bool:
        return self.counts[bit] > 0

    def count(self, event: Event) -> int:
        if event == ESCAPE:
            return self.escape_count
        return self.counts[event]

    def probability(self, event: Event) -> Fraction:
        return Fraction(self.count(event), self.total)

    def events(self) -> List[Event]:
        """Events with non-zero count, in coding order (0, 1, escape)."""
        return [b for b in (0, 1) if self.counts[b]] + [ESCAPE]


@dataclass(frozen=True)
class Emission:
    """One coded event. ``context`` is None for the order -1 table."""

    context: Optional[str]
    event: Event
    probability: Fraction


EmissionChain = List[Emission]


def event_range(c0: int, c1: int, event: Event) -> Tuple[int, int, int]:
    """Cumulative ``(low, high, total)`` of ``event`` in a context with counts c0, c1.

    Ordering inside the context interval is 0, then 1, then escape.
    """
    esc = (c0 > 0) + (c1 > 0)
    total = c0 + c1 + esc
    if event == 0:
        return 0, c0, total
    if event == 1:
        return c0, c0 + c1, total
    return c0 + c1, total, total


class ContextModel:
    """State shared by both PPM modes: the history read so far."""

    mode = "abstract"
    k: Optional[int] = None

    def __init__(self):
        self._bits = bytearray()

    # -- history ---------------------------------------------------------
    @property
    def history(self) -> str:
        return self._bits.decode("ascii")

    def __len__(self):
        return len(self._bits)

    # -- mode specific -----------------------------------------------------
    def candidates(self) -> Iterator[Candidate]:
        """Relevant contexts in escape order, starting at the selected one."""
        raise NotImplementedError

    def relevant_contexts(self) -> List[ContextEntry]:
        """Stored contexts that are suffixes of the history, longest first."""
        raise NotImplementedError

    def select_context(self) -> Optional[ContextEntry]:
        raise NotImplementedError

    def update(self, symbol: int) -> None:
        raise NotImplementedError

    def snapshot(self) -> List[ContextEntry]:
        """Every stored context, longest first, lexicographic within a length."""
        raise NotImplementedError

    def entry(self, context: str) -> Optional[ContextEntry]:
        raise NotImplementedError

    def config(self) -> "ModelConfig":
        return ModelConfig(self.mode, self.k)

    # -- shared ------------------------------------------------------------
    def _suffix(self, length: int) -> str:
        if length == 0:
            return ""
        return self._bits[-length:].decode("ascii")

    def emit(self, symbol: int) -> EmissionChain:
        """Escape/symbol chain that codes ``symbol`` in the current state."""
        chain: EmissionChain = []
        for length, c0, c1 in self.candidates():
            ctx = self._suffix(length)
            low, high, total = event_range(c0, c1, symbol)
            if high > low:
                chain.append(Emission(ctx, symbol, Fraction(high - low, total)))
                return chain
            low, high, total = event_range(c0, c1, ESCAPE)
            chain.append(Emission(ctx, ESCAPE, Fraction(high - low, total)))
        chain.append(Emission(None, symbol, Fraction(1, 2)))
        return chain

    def feed(self, bits: str) -> "ContextModel":
        for ch in bits:
            self.update(1 if ch == "1" else 0)
        return self


@dataclass(frozen=True)
class ModelConfig:
    mode: str
    k: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("bounded", "star"):
            raise ValueError("unknown mode %r" % self.mode)
        if self.mode == "bounded" and (self.k is None or self.k < 0):
            raise ValueError("bounded mode needs k >= 0")

    def build(self) -> ContextModel:
        if self.mode == "star":
            return StarModel()
        return BoundedModel(self.k)

    def __str__(self):
        return "ppm_star" if self.mode == "star" else "ppm_%d" % self.k


def _key(code: int, length: int) -> int:
    # A leading 1 marks the length, so "0" and "00" get different keys.
    return code | (1 << length)


def _key_str(key: int) -> str:
    return bin(key)[3:]


class BoundedModel(ContextModel):
    mode = "bounded"

    def __init__(self, k: int):
        super().__init__()
        if k < 0:
            raise ValueError("k must be non-negative")
        self.k = k
        self._counts = {}
        self._code = 0  # last min(k, len) bits as an integer

    def _lengths(self) -> range:
        top = min(self.k, len(self._bits))
        return range(top, -1, -1)

    def candidates(self) -> Iterator[Candidate]:
        counts = self._counts
        code = self._code
        for length in self._lengths():
            c = counts.get(_key(code & ((1 << length) - 1), length))
            if c is not None:
                yield length, c[0], c[1]

    def relevant_contexts(self) -> List[ContextEntry]:
        return [ContextEntry(self._suffix(length), (c0, c1))
                for length, c0, c1 in self.candidates()]

    def select_context(self) -> Optional[ContextEntry]:
        for length, c0, c1 in self.candidates():
            return ContextEntry(self._suffix(length), (c0, c1))
        return None

    def update(self, symbol: int) -> None:
        counts = self._counts
        code = self._code
        for length in self._lengths():
            key = _key(code & ((1 << length) - 1), length)
            c = counts.get(key)
            if c is None:
                c = counts[key] = [0, 0]
            c[symbol] += 1
        self._bits.append(49 if symbol else 48)
        if self.k:
            self._code = ((code << 1) | symbol) & ((1 << self.k) - 1)

    def snapshot(self) -> List[ContextEntry]:
        entries = [ContextEntry(_key_str(key), (c[0], c[1]))
                   for key, c in self._counts.items()]
        entries.sort(key=lambda e: (-len(e.context), e.context))
        return entries

    def entry(self, context: str) -> Optional[ContextEntry]:
        if len(context) > self.k:
            return None
        c = self._counts.get(_key(int(context, 2) if context else 0, len(context)))
        return ContextEntry(context, (c[0], c[1])) if c else None


class StarModel(ContextModel):
    """PPM* on top of an online suffix automaton with per-state continuation counts."""

    mode = "star"

    def __init__(self):
        super().__init__()
        # state 0 is the root (the empty context)
        self._len = [0]
        self._link = [-1]
        self._nxt = ([-1], [-1])
        self._cnt = ([0], [0])
        self._first = [-1]  # an end position of the state's strings
        self._clone = [False]
        self._prefix_state = []  # state created for each history prefix
        self._last = 0
        self._chain = None
        self._occ_cache = None

    # -- chain of suffix states ------------------------------------------
    def _suffix_chain(self) -> List[int]:
        """States holding suffixes of the history, longest first."""
        if self._chain is None:
            link = self._link
            chain = []
            p = self._last
            while p != -1:
                chain.append(p)
                p = link[p]
            self._chain = chain
        return self._chain

    def _relevant_states(self) -> List[int]:
        c0, c1 = self._cnt
        # Only the newest state can lack continuations; it holds the
        # suffixes that occurred once.
        return [u for u in self._suffix_chain() if c0[u] or c1[u]]

    def _selected_index(self, states: List[int]) -> int:
        c0, c1 = self._cnt
        for j in range(len(states) - 1, -1, -1):
            u = states[j]
            if not (c0[u] and c1[u]):
                return j
        return 0

    def candidates(self) -> Iterator[Candidate]:
        states = self._relevant_states()
        if not states:
            return
        c0, c1 = self._cnt
        length, link = self._len, self._link
        start = self._selected_index(states)
        u = states[start]
        deterministic = not (c0[u] and c1[u])
        for j in range(start, len(states)):
            u = states[j]
            lo = length[link[u]] + 1 if link[u] != -1 else 0
            hi = lo if (j == start and deterministic) else length[u]
            for ell in range(hi, lo - 1, -1):
                yield ell, c0[u], c1[u]

    def relevant_contexts(self) -> List[ContextEntry]:
        c0, c1 = self._cnt
        out = []
        for u in self._relevant_states():
            lo = self._len[self._link[u]] + 1 if self._link[u] != -1 else 0
            for ell in range(self._len[u], lo - 1, -1):
                out.append(ContextEntry(self._suffix(ell), (c0[u], c1[u])))
        return out

    def relevant_runs(self) -> List[Tuple[int, int, int, int]]:
        """Relevant contexts as ``(shortest, longest, c0, c1)`` length runs, longest first."""
        c0, c1 = self._cnt
        out = []
        for u in self._relevant_states():
            lo = self._len[self._link[u]] + 1 if self._link[u] != -1 else 0
            out.append((lo, self._len[u], c0[u], c1[u]))
        return out

    def select_context(self) -> Optional[ContextEntry]:
        for length, c0, c1 in self.candidates():
            return ContextEntry(self._suffix(length), (c0, c1))
        return None

    def longest_relevant_length(self) -> int:
        states = self._relevant_states()
        return self._len[states[0]] if states else -1

    # -- update -----------------------------------------------------------
    def update(self, symbol: int) -> None:
        cnt = self._cnt[symbol]
        for u in self._suffix_chain():
            cnt[u] += 1
        self._extend(symbol)
        self._bits.append(49 if symbol else 48)
        self._chain = None
        self._occ_cache = None

    def _new_state(self, length: int, link: int, first: int, clone: bool) -> int:
        s = len(self._len)
        self._len.append(length)
        self._link.append(link)
        self._nxt[0].append(-1)
        self._nxt[1].append(-1)
        self._cnt[0].append(0)
        self._cnt[1].append(0)
        self._first.append(first)
        self._clone.append(clone)
        return s

    def _extend(self, c: int) -> None:
        nxt = self._nxt[c]
        link, length = self._link, self._len
        pos = len(self._bits)
        cur = self._new_state(length[self._last] + 1, 0, pos, False)
        p = self._last
        while p != -1 and nxt[p] == -1:
            nxt[p] = cur
            p = link[p]
        if p != -1:
            q = nxt[p]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = self._new_state(length[p] + 1, link[q], self._first[q], True)
                self._nxt[0][clone] = self._nxt[0][q]
                self._nxt[1][clone] = self._nxt[1][q]
                self._cnt[0][clone] = self._cnt[0][q]
                self._cnt[1][clone] = self._cnt[1][q]
                while p != -1 and nxt[p] == q:
                    nxt[p] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        self._last = cur
        self._prefix_state.append(cur)

    # -- inspection -------------------------------------------------------
    def _occurrences(self) -> List[int]:
        """Number of end positions of each state in the current history."""
        if self._occ_cache is None:
            occ = [0 if c else 1 for c in self._clone]
            occ[0] = 0
            for u in sorted(range(1, len(occ)), key=self._len.__getitem__, reverse=True):
                occ[self._link[u]] += occ[u]
            occ[0] = len(self._bits) + 1
            self._occ_cache = occ
        return self._occ_cache

    def _state_of(self, w: str) -> int:
        u = 0
        for ch in w:
            u = self._nxt[1 if ch == "1" else 0][u]
            if u == -1:
                return -1
        return u

    def entry(self, context: str) -> Optional[ContextEntry]:
        u = self._state_of(context)
        if u == -1:
            return None
        c = (self._cnt[0][u], self._cnt[1][u])
        if not any(c):
            return None
        if context:
            w = self._state_of(context[:-1])
            if self._occurrences()[w] < 2:
                return None
        return ContextEntry(context, c)

    def snapshot(self) -> List[ContextEntry]:
        occ = self._occurrences()
        link, length, first = self._link, self._len, self._first
        hist = self._bits
        # For every end position e, the longest suffix of hist[:e+1] that
        # occurs at least twice in the whole history.
        repeat = []
        for s in self._prefix_state:
            while occ[s] < 2:
                s = link[s]
            repeat.append(length[s])
        entries = []
        c0, c1 = self._cnt
        if c0[0] or c1[0]:
            entries.append(ContextEntry("", (c0[0], c1[0])))
        for u in range(1, len(length)):
            if not (c0[u] or c1[u]):
                continue
            lo = length[link[u]] + 1
            hi = length[u]
            if occ[u] < 2:
                e = first[u] - 1
                hi = min(hi, (repeat[e] if e >= 0 else 0) + 1)
            end = first[u] + 1
            for ell in range(lo, hi + 1):
                entries.append(ContextEntry(hist[end - ell:end].decode("ascii"),
                                            (c0[u], c1[u])))
        entries.sort(key=lambda e: (-len(e.context), e.context))
        return entries


def build_model(mode: str, k: Optional[int] = None) -> ContextModel:
    return ModelConfig(mode, k).build()


ORDER_MINUS_ONE = [(0, 1, Fraction(1, 2)), (1, 1, Fraction(1, 2))]


def snapshot_rows(model: ContextModel) -> List[Tuple[Optional[str], Event, int, Fraction]]:
    """(context, prediction, count, probability) rows in table order.

    The order -1 table comes last with context ``None``.
    """
    rows = []
    for e in model.snapshot():
        for ev in e.events():
            rows.append((e.context, ev, e.count(ev), e.probability(ev)))
    for bit, cnt, p in ORDER_MINUS_ONE:
        rows.append((None, bit, cnt, p))
    return rows


def render_tsv(model: ContextModel) -> str:
    """``context<TAB>prediction<TAB>count<TAB>num/den`` lines.

    The empty context is an empty field; the order -1 table uses ``-1``.
    """
    lines = []
    for ctx, ev, cnt, p in snapshot_rows(model):
        label = "-1" if ctx is None else ctx
        lines.append("%s\t%s\t%d\t%d/%d" % (label, ev, cnt, p.numerator, p.denominator))
    return "\n".join(lines) + "\n"


def render_table(model: ContextModel) -> str:
    """Plain-text listing grouped by context length, one block per order."""
    lines = []
    current = object()
    last_ctx = object()
    for ctx, ev, cnt, p in snapshot_rows(model):
        order = -1 if ctx is None else len(ctx)
        if order != current:
            lines.append("Order k = %d" % order)
            current = order
        shown = ("λ" if ctx == "" else ctx) if ctx is not None else ""
        if ctx == last_ctx:
            shown = ""
        last_ctx = ctx
        lines.append("  %-8s %s %5d  %s" % (shown, ev, cnt, p))
    return "\n".join(lines) + "\n"
