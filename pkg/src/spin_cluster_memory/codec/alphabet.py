"""
Five-bit character code: space = 0, a = 1, ..., z = 26, most significant
bit first. Codes 27-31 are undefined and rejected on decode.
"""

import string

from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.core.exceptions import CodecError, DecodeError

BITS_PER_CHAR = 5
ALPHABET = " " + string.ascii_lowercase
_CODES = {ch: code for code, ch in enumerate(ALPHABET)}


def text_to_bits(text: str) -> BitArray:
    """Encode text (case-folded) as 5 bits per character."""
    folded = text.lower()
    if not folded:
        raise CodecError("cannot encode an empty string")
    bits = []
    for pos, ch in enumerate(folded):
        code = _CODES.get(ch)
        if code is None:
            raise CodecError(f"unsupported character {text[pos]!r} at position {pos}")
        bits.extend(int(b) for b in format(code, f"0{BITS_PER_CHAR}b"))
    return BitArray(tuple(bits))


def bits_to_text(bits: BitArray) -> str:
    """Inverse of text_to_bits."""
    values = bits.bits if isinstance(bits, BitArray) else tuple(bits)
    if len(values) % BITS_PER_CHAR:
        raise CodecError(f"bit length {len(values)} is not a multiple of {BITS_PER_CHAR}")
    chars = []
    for group in range(len(values) // BITS_PER_CHAR):
        chunk = values[group * BITS_PER_CHAR:(group + 1) * BITS_PER_CHAR]
        code = int("".join(str(b) for b in chunk), 2)
        if code >= len(ALPHABET):
            raise DecodeError(group, code)
        chars.append(ALPHABET[code])
    return "".join(chars)
