"""Statistical reference measures: entropy, block entropy, RLE, LZ78 cost.

These capture repetition-style regularity only, which is exactly why they
are worth keeping next to the table-based estimates: the interesting
strings are the ones where the two families disagree.
"""

from __future__ import annotations

import math
from collections import Counter

from .errors import ParseError, ValidationError

RLE_MAX_RUN = 9  # single-digit counts; longer runs split into several tokens


def shannon_entropy(s: str) -> float:
    """Empirical per-symbol entropy in bits; 0 <= H <= log2(alphabet size)."""
    if not s:
        raise ValidationError("entropy of an empty string is undefined")
    return shannon_entropy_of_tokens(s)


def block_entropy(s: str, block_len: int) -> float:
    """Entropy in bits per block over non-overlapping blocks; remainder dropped."""
    if block_len < 1:
        raise ValidationError("block_len must be >= 1")
    if len(s) < block_len:
        raise ValidationError(
            f"string of length {len(s)} is shorter than one block of {block_len}"
        )
    blocks = [s[i * block_len:(i + 1) * block_len] for i in range(len(s) // block_len)]
    return shannon_entropy_of_tokens(blocks)


def shannon_entropy_of_tokens(tokens) -> float:
    # fsum over the term multiset: equal count profiles give bit-equal
    # entropies no matter what order the tokens appeared in.
    counts = Counter(tokens)
    total = sum(counts.values())
    return -math.fsum(c / total * math.log2(c / total) for c in counts.values())


def rle_encode(s: str) -> str:
    """Runs become (count digit, symbol) pairs; runs past 9 split."""
    if not s:
        raise ValidationError("cannot RLE-encode an empty string")
    out = []
    run_sym = s[0]
    run_len = 0
    for ch in s:
        if ch == run_sym and run_len < RLE_MAX_RUN:
            run_len += 1
        else:
            out.append(f"{run_len}{run_sym}")
            run_sym = ch
            run_len = 1
    out.append(f"{run_len}{run_sym}")
    return "".join(out)


def rle_decode(s: str) -> str:
    """Inverse of rle_encode; strict about the (digit, symbol) token shape."""
    if not s:
        raise ValidationError("cannot RLE-decode an empty string")
    if len(s) % 2 != 0:
        raise ParseError("RLE text must have an even number of characters")
    out = []
    for i in range(0, len(s), 2):
        count, sym = s[i], s[i + 1]
        if not count.isdigit() or count == "0":
            raise ParseError(f"invalid run count {count!r} at position {i}")
        out.append(sym * int(count))
    return "".join(out)


def lz78_bit_length(s: str) -> int:
    """Cost in bits of a deterministic LZ78 parse of s.

    Phrases are the classic longest-known-prefix-plus-one-symbol parse.
    The i-th complete phrase costs ceil(log2(i)) + 1 bits: a reference to
    one of the i-1 earlier phrases or the empty phrase, plus one literal
    bit. When the input ends inside a phrase, the leftover is a bare
    reference among the p+1 possibilities, ceil(log2(p+1)) bits.
    """
    if not s:
        raise ValidationError("cannot compress an empty string")
    dictionary = {}
    bits = 0
    phrase = ""
    count = 0
    for ch in s:
        candidate = phrase + ch
        if candidate in dictionary:
            phrase = candidate
            continue
        count += 1
        dictionary[candidate] = count
        bits += _ceil_log2(count) + 1
        phrase = ""
    if phrase:
        bits += _ceil_log2(count + 1)
    return bits


def _ceil_log2(k: int) -> int:
    return (k - 1).bit_length()
