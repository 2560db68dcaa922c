"""Exact arithmetic coding driven by PPM emission chains.

Intervals are kept as integer triples ``(low, width, denom)`` meaning
``[low/denom, (low+width)/denom)``; nothing is ever rounded or renormalised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .model import ContextModel, Emission, ModelConfig


class CorruptStreamError(ValueError):
    pass


@dataclass(frozen=True)
class CodeInterval:
    low: int = 0
    width: int = 1
    denom: int = 1

    @property
    def lo(self) -> Fraction:
        return Fraction(self.low, self.denom)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.low + self.width, self.denom)

    @property
    def size(self) -> Fraction:
        return Fraction(self.width, self.denom)

    def scale(self, low: int, high: int, total: int) -> "CodeInterval":
        """Keep the sub-interval ``[low/total, high/total)`` of this interval."""
        if not 0 <= low < high <= total:
            raise ValueError("empty or out-of-range event [%d, %d) / %d" % (low, high, total))
        return CodeInterval(self.low * total + self.width * low,
                            self.width * (high - low),
                            self.denom * total)


def narrow(iv: CodeInterval, event_low: Fraction, event_high: Fraction) -> CodeInterval:
    event_low = Fraction(event_low)
    event_high = Fraction(event_high)
    if not 0 <= event_low < event_high <= 1:
        raise ValueError("event bounds must satisfy 0 <= low < high <= 1")
    total = event_low.denominator * event_high.denominator
    return iv.scale(event_low.numerator * event_high.denominator,
                    event_high.numerator * event_low.denominator, total)


def ceil_neg_log2(width: int, denom: int) -> int:
    """Exact ``ceil(-log2(width/denom))`` for ``0 < width <= denom``."""
    ell = max(0, denom.bit_length() - width.bit_length() - 1)
    while (width << ell) < denom:
        ell += 1
    return ell


@dataclass
class CodeOutput:
    bits: str
    declared_length: int
    interval: Optional[CodeInterval] = None
    ideal_bits: float = 0.0
    emissions: Optional[List[Emission]] = field(default=None, repr=False)

    def __len__(self):
        return len(self.bits)

    @property
    def interval_bits(self) -> Optional[int]:
        """``ceil(-log2 width)`` of the final interval."""
        if self.interval is None:
            return None
        return ceil_neg_log2(self.interval.width, self.interval.denom)


def finalize(iv: CodeInterval, declared_length: int = 0) -> CodeOutput:
    """Pick the dyadic rational c in [lo, hi) using ceil(-log2 width) bits.

    An interval of width >= 2^-l always contains a multiple of 2^-l, so no
    overhead bit is ever needed when the code length travels with the code.
    The smallest such multiple is chosen.
    """
    ell = ceil_neg_log2(iv.width, iv.denom)
    while True:
        m = -((-iv.low << ell) // iv.denom)  # ceil(low * 2^ell / denom)
        if m * iv.denom < (iv.low + iv.width) << ell:
            break
        ell += 1
    bits = format(m, "0%db" % ell) if ell else ""
    return CodeOutput(bits, declared_length, iv)


def encode(config: ModelConfig, x: str, ideal_only: bool = False,
           collect: bool = False) -> CodeOutput:
    """Compress ``x`` with a fresh model built from ``config``.

    ``ideal_only`` skips the exact interval and returns only the floating
    point sum of -log2(p); ``bits`` is then empty.
    """
    model = config.build()
    low, width, denom = 0, 1, 1
    ideal = 0.0
    log2 = math.log2
    emissions: List[Emission] = [] if collect else None
    for ch in x:
        symbol = 1 if ch == "1" else 0
        if collect:
            emissions.extend(model.emit(symbol))
        for _, c0, c1 in model.candidates():
            esc = (c0 > 0) + (c1 > 0)
            total = c0 + c1 + esc
            c = c1 if symbol else c0
            if c:
                lo_ = c0 if symbol else 0
                ideal += log2(total / c)
                if not ideal_only:
                    low = low * total + width * lo_
                    width *= c
                    denom *= total
                break
            ideal += log2(total / esc)
            if not ideal_only:
                low = low * total + width * (c0 + c1)
                width *= esc
                denom *= total
        else:
            ideal += 1.0
            if not ideal_only:
                low = low * 2 + width * symbol
                denom *= 2
        model.update(symbol)
    if ideal_only:
        return CodeOutput("", len(x), None, ideal, emissions)
    out = finalize(CodeInterval(low, width, denom), len(x))
    out.ideal_bits = ideal
    out.emissions = emissions
    return out


def _locate(tn: int, td: int, bounds: List[int], total: int) -> int:
    scaled = tn * total
    for j in range(len(bounds) - 1):
        if bounds[j] * td <= scaled < bounds[j + 1] * td:
            return j
    raise CorruptStreamError("code value lies outside every event sub-interval")


def decode(code: CodeOutput, length: int, config: ModelConfig) -> str:
    """Invert ``encode``: mirror the model and locate c in each sub-interval.

    Raises ``CorruptStreamError`` when c falls outside every event or the
    code length is not the one ``encode`` would have produced.
    """
    model: ContextModel = config.build()
    ell = len(code.bits)
    # Relative position of c inside the current interval, as tn/td.
    tn = int(code.bits, 2) if ell else 0
    td = 1 << ell
    denom = 1  # product of event totals; td / 2^ell is the product of event counts
    out = bytearray()
    for _ in range(length):
        symbol = None
        for _, c0, c1 in model.candidates():
            esc = (c0 > 0) + (c1 > 0)
            total = c0 + c1 + esc
            bounds = [0, c0, c0 + c1, total]
            j = _locate(tn, td, bounds, total)
            lo_, hi_ = bounds[j], bounds[j + 1]
            tn = tn * total - lo_ * td
            td *= hi_ - lo_
            denom *= total
            if j < 2:
                symbol = j
                break
        if symbol is None:
            j = _locate(tn, td, [0, 1, 2], 2)
            tn = tn * 2 - j * td
            denom *= 2
            symbol = j
        model.update(symbol)
        out.append(49 if symbol else 48)
    # encode always writes exactly ceil(-log2 width) bits
    if ceil_neg_log2(td >> ell, denom) != ell:
        raise CorruptStreamError("code has %d bits; the decoded interval needs %d"
                                 % (ell, ceil_neg_log2(td >> ell, denom)))
    return out.decode("ascii")


def chain_width(emissions: List[Emission]) -> Fraction:
    """Product of the emission probabilities of a chain."""
    w = Fraction(1)
    for e in emissions:
        w *= e.probability
    return w

