from typing import Optional

from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.core.exceptions import CodecError


def bits_to_number(bits: BitArray) -> int:
    """Big-endian unsigned value of the bit array (exact, arbitrary precision)."""
    return int(bits.to_string(), 2)


def number_to_bits(value: int, length: Optional[int] = None) -> BitArray:
    """
    Big-endian bits of ``value``; left-padded with zeros to ``length`` when given.
    """
    value = int(value)
    if value < 0:
        raise CodecError(f"cannot store a negative number: {value}")
    width = max(value.bit_length(), 1)
    if length is not None:
        if length < width:
            raise CodecError(f"{value} needs {width} bits, only {length} available")
        width = int(length)
    return BitArray.from_string(format(value, f"0{width}b"))
