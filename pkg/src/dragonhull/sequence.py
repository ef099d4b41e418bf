"""The L/R folding symbol sequence.

Two equivalent definitions are implemented: the position-based inflation
rule (normative, O(log n) via bit stripping) and the palindromic
reflection rule around powers of two (kept as a cross-check).
"""

from __future__ import annotations

L = "L"
R = "R"

_COMPLEMENT = {L: R, R: L}


def complement(symbol: str) -> str:
    """The opposite symbol: L <-> R."""
    return _COMPLEMENT[symbol]


def sigma(n: int) -> str:
    """Symbol at position n >= 1 by the inflation rule.

    Positions 1 mod 4 fold L, positions 3 mod 4 fold R, and even
    positions repeat the symbol at half the index.  Implemented by
    stripping trailing zero bits and inspecting the next bit.
    """
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n!r}")
    n >>= (n & -n).bit_length() - 1
    return R if n & 2 else L


def sigma_reflection(n: int) -> str:
    """Symbol at position n by reflecting around powers of two.

    Powers of two fold L; otherwise the symbol is the complement of the
    mirror position across the largest power of two below n.  Recursion
    depth is at most log2(n) + 1.
    """
    if n < 1:
        raise ValueError(f"position must be >= 1, got {n!r}")
    if n & (n - 1) == 0:
        return L
    mirror = (1 << n.bit_length()) - n  # 2*2**k - n for 2**k < n < 2**(k+1)
    return complement(sigma_reflection(mirror))


def prefix(length: int) -> list[str]:
    """The first `length` symbols, starting L, L, R, ..."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length!r}")
    return [sigma(i) for i in range(1, length + 1)]
