"""LZ78 parsing and pointer+bit phrase coding over binary strings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

FIXED = "fixed"
GAMMA = "gamma"


class CorruptStreamError(ValueError):
    pass


@dataclass(frozen=True)
class Phrase:
    parent: int  # dictionary index of the longest proper prefix (0 = λ)
    bit: int  # final bit, or -1 for an incomplete trailing phrase


@dataclass
class LZCode:
    bits: str
    phrase_count: int
    complete: bool  # False when the last phrase repeats an earlier one
    pointer_code: str = FIXED

    def __len__(self):
        return len(self.bits)


def parse_phrases(x: str) -> List[Phrase]:
    """Greedy LZ78 parse as (parent, bit) pairs; the last may be incomplete."""
    trie = [{}]
    phrases = []
    node = 0
    for ch in x:
        b = 1 if ch == "1" else 0
        child = trie[node].get(b)
        if child is None:
            trie[node][b] = len(trie)
            trie.append({})
            phrases.append(Phrase(node, b))
            node = 0
        else:
            node = child
    if node:
        phrases.append(Phrase(node, -1))
    return phrases


def parse(x: str) -> List[str]:
    """The phrase strings of the greedy LZ78 parse of ``x``."""
    words = [""]
    out = []
    for ph in parse_phrases(x):
        if ph.bit < 0:
            out.append(words[ph.parent])
        else:
            w = words[ph.parent] + str(ph.bit)
            words.append(w)
            out.append(w)
    return out


def pointer_width(j: int) -> int:
    """Bits for the j-th phrase's pointer (j >= 1): ceil(log2 j)."""
    return (j - 1).bit_length()


def _gamma(v: int) -> str:
    # Elias gamma of v + 1, so that pointer 0 is representable.
    b = bin(v + 1)[2:]
    return "0" * (len(b) - 1) + b


def encode_lz(x: str, pointer_code: str = FIXED) -> LZCode:
    """Encode each phrase as a pointer to its parent followed by its last bit.

    With the fixed code, phrase j (1-based) spends ceil(log2 j) pointer bits,
    since the dictionary then holds j entries counting λ.
    """
    if pointer_code not in (FIXED, GAMMA):
        raise ValueError("unknown pointer code %r" % pointer_code)
    out = []
    phrases = parse_phrases(x)
    for j, ph in enumerate(phrases, start=1):
        if pointer_code == FIXED:
            w = pointer_width(j)
            if w:
                out.append(format(ph.parent, "0%db" % w))
        else:
            out.append(_gamma(ph.parent))
        if ph.bit >= 0:
            out.append("1" if ph.bit else "0")
    complete = not phrases or phrases[-1].bit >= 0
    return LZCode("".join(out), len(phrases), complete, pointer_code)


def encoded_length(x: str) -> int:
    """Length of the fixed-width code without materialising it."""
    phrases = parse_phrases(x)
    total = sum(pointer_width(j) + 1 for j in range(1, len(phrases) + 1))
    if phrases and phrases[-1].bit < 0:
        total -= 1
    return total


def _read_gamma(bits: str, pos: int) -> Tuple[int, int]:
    zeros = 0
    while pos < len(bits) and bits[pos] == "0":
        zeros += 1
        pos += 1
    end = pos + zeros + 1
    if end > len(bits):
        raise CorruptStreamError("truncated gamma code")
    return int(bits[pos:end], 2) - 1, end


def decode_lz(code: LZCode) -> str:
    bits = code.bits
    words = [""]
    out = []
    pos = 0
    for j in range(1, code.phrase_count + 1):
        if code.pointer_code == GAMMA:
            parent, pos = _read_gamma(bits, pos)
        else:
            w = pointer_width(j)
            if pos + w > len(bits):
                raise CorruptStreamError("truncated pointer in phrase %d" % j)
            parent = int(bits[pos:pos + w], 2) if w else 0
            pos += w
        if parent >= len(words):
            raise CorruptStreamError(
                "pointer %d outside dictionary of size %d" % (parent, len(words)))
        last = j == code.phrase_count
        if last and not code.complete:
            out.append(words[parent])
            break
        if pos >= len(bits):
            raise CorruptStreamError("missing phrase bit in phrase %d" % j)
        w = words[parent] + bits[pos]
        pos += 1
        words.append(w)
        out.append(w)
    if pos != len(bits):
        raise CorruptStreamError("%d trailing bits" % (len(bits) - pos))
    return "".join(out)
