from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.codec.alphabet import ALPHABET, bits_to_text, text_to_bits
from spin_cluster_memory.codec.numbers import bits_to_number, number_to_bits

__all__ = [
    "BitArray",
    "ALPHABET",
    "text_to_bits",
    "bits_to_text",
    "bits_to_number",
    "number_to_bits",
]
