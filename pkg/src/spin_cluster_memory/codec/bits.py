from dataclasses import dataclass
from typing import Iterable, Tuple

from spin_cluster_memory.core.exceptions import CodecError


@dataclass(frozen=True)
class BitArray:
    """Ordered, non-empty sequence of 0/1 values; bit 0 maps to harmonic 0."""

    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise CodecError("bit array must contain at least one bit")
        if any(b not in (0, 1) for b in bits):
            raise CodecError("bit array may only contain 0 and 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def of(cls, values: Iterable[int]) -> "BitArray":
        return cls(tuple(values))

    @classmethod
    def from_string(cls, text: str) -> "BitArray":
        """Parse '0101...'; spaces and underscores are ignored."""
        cleaned = text.replace(" ", "").replace("_", "")
        if any(ch not in "01" for ch in cleaned):
            raise CodecError(f"bit string may only contain '0' and '1': {text!r}")
        return cls(tuple(int(ch) for ch in cleaned))

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def flipped(self, k: int) -> "BitArray":
        """Copy with bit k inverted."""
        bits = list(self.bits)
        bits[k] ^= 1
        return BitArray(tuple(bits))

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, k: int) -> int:
        return self.bits[k]

    def __str__(self) -> str:
        return self.to_string()
