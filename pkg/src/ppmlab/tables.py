"""Reference model tables for the input 0100110110, transcribed cell by cell.

Each row is ``(context, prediction, count, probability)``; ``"$"`` is the
escape and context ``None`` is the order -1 table.
"""

from fractions import Fraction as F

_BOUNDED = {
    "001": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "010": [(0, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "011": [(0, 2, F(2, 3)), ("$", 1, F(1, 3))],
    "100": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "101": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "110": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "00": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "01": [(0, 1, F(1, 5)), (1, 2, F(2, 5)), ("$", 2, F(2, 5))],
    "10": [(0, 1, F(1, 4)), (1, 1, F(1, 4)), ("$", 2, F(1, 2))],
    "11": [(0, 2, F(2, 3)), ("$", 1, F(1, 3))],
    "0": [(0, 1, F(1, 6)), (1, 3, F(1, 2)), ("$", 2, F(1, 3))],
    "1": [(0, 3, F(3, 7)), (1, 2, F(2, 7)), ("$", 2, F(2, 7))],
    "": [(0, 5, F(5, 12)), (1, 5, F(5, 12)), ("$", 2, F(1, 6))],
    None: [(0, 1, F(1, 2)), (1, 1, F(1, 2))],
}

_STAR = {
    "01101": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "0110": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "1101": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "010": [(0, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "011": [(0, 2, F(2, 3)), ("$", 1, F(1, 3))],
    "100": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "101": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "110": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "00": [(1, 1, F(1, 2)), ("$", 1, F(1, 2))],
    "01": [(0, 1, F(1, 5)), (1, 2, F(2, 5)), ("$", 2, F(2, 5))],
    "10": [(0, 1, F(1, 4)), (1, 1, F(1, 4)), ("$", 2, F(1, 2))],
    "11": [(0, 2, F(2, 3)), ("$", 1, F(1, 3))],
    "0": [(0, 1, F(1, 6)), (1, 3, F(1, 2)), ("$", 2, F(1, 3))],
    "1": [(0, 3, F(3, 7)), (1, 2, F(2, 7)), ("$", 2, F(2, 7))],
    "": [(0, 5, F(5, 12)), (1, 5, F(5, 12)), ("$", 2, F(1, 6))],
    None: [(0, 1, F(1, 2)), (1, 1, F(1, 2))],
}


def _flatten(table):
    return [(ctx, ev, cnt, p) for ctx, cells in table.items() for ev, cnt, p in cells]


BOUNDED_EXAMPLE_ROWS = _flatten(_BOUNDED)
STAR_EXAMPLE_ROWS = _flatten(_STAR)


def rows_of(model):
    from .model import snapshot_rows
    return snapshot_rows(model)
