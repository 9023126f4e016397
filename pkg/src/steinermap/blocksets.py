"""Block sets are plain Python ints used as bitsets over target nodes.

Bit ``i`` is set when block ``i`` is a member.  Python ints have arbitrary
width, so ``k > 64`` needs no special casing; the integer value itself is the
canonical hash key.
"""


def from_blocks(blocks):
    mask = 0
    for b in blocks:
        mask |= 1 << b
    return mask


def iter_blocks(mask):
    """Yield member block ids in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask):
    return list(iter_blocks(mask))


def size(mask):
    return mask.bit_count()


def highest(mask):
    return mask.bit_length() - 1
