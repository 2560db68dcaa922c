"""Least lexicographic binary de Bruijn strings and their cyclic shifts.

Bit strings are plain ``str`` objects over the characters ``'0'`` and ``'1'``
throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Orders above this need an explicit override (2^24 bits is the desk ceiling).
DEFAULT_MAX_ORDER = 24


class ResourceLimitError(ValueError):
    """Raised when a request would exceed the configured memory budget."""


@dataclass(frozen=True)
class DeBruijnString:
    order: int
    data: str
    shift: int = 0

    def __post_init__(self):
        if len(self.data) != 1 << self.order:
            raise ValueError("de Bruijn string of order %d must have %d bits"
                             % (self.order, 1 << self.order))

    def __str__(self):
        return self.data

    def __len__(self):
        return len(self.data)


def check_order(n: int, max_order: int = DEFAULT_MAX_ORDER) -> None:
    if n < 1:
        raise ValueError("order must be >= 1, got %d" % n)
    if n > max_order:
        raise ResourceLimitError(
            "order %d exceeds the memory budget (max %d)" % (n, max_order))


@lru_cache(maxsize=32)
def _martin(n: int) -> str:
    mask = (1 << n) - 1
    seen = bytearray(1 << n)
    x = bytearray(b"1" * (n - 1))
    # Rolling value of the last n-1 bits; the prefix 1^(n-1) is all ones.
    window = (1 << (n - 1)) - 1
    target = (1 << n) + n - 1
    while len(x) < target:
        w0 = (window << 1) & mask
        if not seen[w0]:
            seen[w0] = 1
            x.append(48)
            window = w0
            continue
        w1 = w0 | 1
        if not seen[w1]:
            seen[w1] = 1
            x.append(49)
            window = w1
            continue
        break
    return x[n - 1:].decode("ascii")


def martin_db(n: int, max_order: int = DEFAULT_MAX_ORDER) -> DeBruijnString:
    """Build db(n) with Martin's prefer-zero rule.

    Starts from ``1^(n-1)``, greedily appends the bit (0 first) whose new
    n-window has not appeared yet, stops when neither bit works, then drops
    the ``1^(n-1)`` prefix.
    """
    check_order(n, max_order)
    data = _martin(n)
    if len(data) != 1 << n:
        raise RuntimeError("Martin's construction stopped early for n=%d" % n)
    return DeBruijnString(n, data, 0)


def shift(db: DeBruijnString, i: int) -> DeBruijnString:
    """Left cyclic shift by ``i`` of the *unshifted* string ``db`` represents.

    ``shift(shift(x, i), j)`` composes, so the ``shift`` field is taken
    modulo ``2^n``.
    """
    size = 1 << db.order
    if not 0 <= i < size:
        raise ValueError("shift %d out of range [0, %d)" % (i, size))
    return DeBruijnString(db.order, db.data[i:] + db.data[:i], (db.shift + i) % size)


def verify_db(x: str, n: int) -> bool:
    """True iff every length-``n`` word occurs exactly once in ``x`` read cyclically."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if len(x) != 1 << n:
        raise ValueError("length %d does not match 2^%d" % (len(x), n))
    ext = x + x[:n - 1]
    seen = set()
    for i in range(len(x)):
        w = ext[i:i + n]
        if w in seen:
            return False
        seen.add(w)
    return len(seen) == 1 << n
