"""The enumeration sequence S = S_1 S_2 S_3 ... built from shifted de Bruijn blocks.

Zone ``S_n`` is ``B_{n,0} B_{n,1} ... B_{n,2^s-1}`` where ``n = 2^s * t`` with
``t`` odd and block ``B_{n,i}`` is ``db_i(n)`` repeated ``t`` times.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Tuple

from .debruijn import DEFAULT_MAX_ORDER, martin_db, shift


@dataclass(frozen=True)
class ZoneSpec:
    n: int
    s: int
    t: int

    @classmethod
    def of(cls, n: int) -> "ZoneSpec":
        if n < 1:
            raise ValueError("zone number must be >= 1")
        s = 0
        t = n
        while t % 2 == 0:
            t //= 2
            s += 1
        return cls(n, s, t)

    @property
    def block_count(self) -> int:
        return 1 << self.s

    @property
    def block_length(self) -> int:
        return self.t << self.n

    @property
    def length(self) -> int:
        return self.n << self.n


def zone_length(n: int) -> int:
    return n << n


def zone_start(n: int) -> int:
    """Offset of the first bit of S_n in S (sum of j*2^j for j < n)."""
    if n < 1:
        raise ValueError("zone number must be >= 1")
    # sum_{j=1}^{m} j 2^j = (m-1) 2^(m+1) + 2
    m = n - 1
    return (m - 1) * (1 << (m + 1)) + 2 if m >= 1 else 0


def zone_of(position: int) -> int:
    """Zone number containing bit ``position`` of S."""
    if position < 0:
        raise ValueError("position must be non-negative")
    n = 1
    while zone_start(n + 1) <= position:
        n += 1
    return n


def segment(n: int, max_order: int = DEFAULT_MAX_ORDER) -> str:
    zone = ZoneSpec.of(n)
    db = martin_db(n, max_order)
    return "".join(shift(db, i).data * zone.t for i in range(zone.block_count))


@dataclass
class SequencePrefix:
    data: str
    boundary_index: Dict[int, int]


def prefix_through(n_max: int, max_order: int = DEFAULT_MAX_ORDER) -> SequencePrefix:
    """S_1 ... S_{n_max} together with the start offset of each zone."""
    parts: List[str] = []
    boundaries: Dict[int, int] = {}
    offset = 0
    for n in range(1, n_max + 1):
        boundaries[n] = offset
        seg = segment(n, max_order)
        parts.append(seg)
        offset += len(seg)
    boundaries[n_max + 1] = offset
    return SequencePrefix("".join(parts), boundaries)


def stream(limit_bits: int, max_order: int = DEFAULT_MAX_ORDER) -> Iterator[str]:
    """Yield the first ``limit_bits`` bits of S one at a time, generating zones lazily."""
    remaining = limit_bits
    n = 1
    while remaining > 0:
        seg = segment(n, max_order)
        take = seg if len(seg) <= remaining else seg[:remaining]
        yield from take
        remaining -= len(take)
        n += 1


def prefix(limit_bits: int, max_order: int = DEFAULT_MAX_ORDER) -> str:
    """S restricted to its first ``limit_bits`` bits, as one string."""
    parts = []
    remaining = limit_bits
    n = 1
    while remaining > 0:
        seg = segment(n, max_order)
        parts.append(seg[:remaining])
        remaining -= len(parts[-1])
        n += 1
    return "".join(parts)


def occ(w: str, x: str) -> int:
    """Number of (overlapping) occurrences of ``w`` in ``x``."""
    if not w:
        raise ValueError("occ is undefined for the empty word")
    count = 0
    start = x.find(w)
    while start != -1:
        count += 1
        start = x.find(w, start + 1)
    return count


def occ_block(w: str, x: str) -> int:
    """Occurrences of ``w`` at offsets that are multiples of ``|w|``.

    Only complete windows count; a trailing partial block never matches.
    """
    if not w:
        raise ValueError("occ_block is undefined for the empty word")
    m = len(w)
    return sum(1 for i in range(0, len(x) - m + 1, m) if x[i:i + m] == w)


def check_enumeration(n: int, max_order: int = DEFAULT_MAX_ORDER) -> bool:
    """True iff every length-``n`` word appears exactly once as a block of S_n."""
    seg = segment(n, max_order)
    if len(seg) != zone_length(n):
        return False
    blocks = [seg[i:i + n] for i in range(0, len(seg), n)]
    if len(blocks) != 1 << n:
        return False
    return len(set(blocks)) == 1 << n


def normality_stats(x: str, max_word_len: int) -> List[Tuple[str, float]]:
    """Empirical frequency ``occ(w, x) / |x|`` for every word up to ``max_word_len`` bits."""
    if not x:
        raise ValueError("empty prefix")
    if (1 << max_word_len) > len(x):
        raise ValueError("max_word_len must be <= log2(|prefix|)")
    rows = []
    for length in range(1, max_word_len + 1):
        for letters in product("01", repeat=length):
            w = "".join(letters)
            rows.append((w, occ(w, x) / len(x)))
    return rows
