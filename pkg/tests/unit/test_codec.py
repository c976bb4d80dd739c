import unittest

from hypothesis import given
from hypothesis import strategies as st

from spin_cluster_memory.codec import (
    ALPHABET,
    BitArray,
    bits_to_number,
    bits_to_text,
    number_to_bits,
    text_to_bits,
)
from spin_cluster_memory.core.exceptions import CodecError, DecodeError

phrases = st.text(alphabet=ALPHABET, min_size=1, max_size=40)


class TestBitArray(unittest.TestCase):
    def test_string_forms(self):
        bits = BitArray.from_string("1011_0")
        self.assertEqual(bits.bits, (1, 0, 1, 1, 0))
        self.assertEqual(str(bits), "10110")

    def test_rejects_other_symbols(self):
        with self.assertRaises(CodecError):
            BitArray.from_string("10201")
        with self.assertRaises(CodecError):
            BitArray((1, 2))

    def test_rejects_empty(self):
        with self.assertRaises(CodecError):
            BitArray(())

    def test_flipped_changes_one_bit(self):
        bits = BitArray.from_string("1100")
        self.assertEqual(bits.flipped(2).to_string(), "1110")
        self.assertEqual(bits.to_string(), "1100")


class TestAlphabet(unittest.TestCase):
    def test_documented_codes(self):
        self.assertEqual(text_to_bits("a").to_string(), "00001")
        self.assertEqual(text_to_bits(" ").to_string(), "00000")
        self.assertEqual(bits_to_text(BitArray.from_string("00010")), "b")

    def test_every_symbol_round_trips(self):
        seen = set()
        for ch in ALPHABET:
            bits = text_to_bits(ch)
            self.assertEqual(bits_to_text(bits), ch)
            seen.add(bits.to_string())
        self.assertEqual(len(seen), 27)

    def test_upper_case_is_folded(self):
        self.assertEqual(text_to_bits("Hi"), text_to_bits("hi"))

    def test_unknown_character(self):
        with self.assertRaises(CodecError):
            text_to_bits("hi!")

    def test_undefined_group_names_its_index(self):
        with self.assertRaises(DecodeError) as ctx:
            bits_to_text(BitArray.from_string("00001" "11111"))
        self.assertEqual(ctx.exception.group, 1)
        self.assertEqual(ctx.exception.value, 31)

    def test_length_not_multiple_of_five(self):
        with self.assertRaises(CodecError):
            bits_to_text(BitArray.from_string("0001"))

    def test_twenty_two_characters_fill_110_bits(self):
        self.assertEqual(len(text_to_bits("store me in a spin set")), 110)

    @given(phrases)
    def test_text_round_trip(self, text):
        bits = text_to_bits(text)
        self.assertEqual(len(bits), 5 * len(text))
        self.assertEqual(bits_to_text(bits), text)


class TestNumbers(unittest.TestCase):
    def test_all_ones_110_bits(self):
        value = bits_to_number(BitArray((1,) * 110))
        self.assertEqual(value, 2 ** 110 - 1)
        # ~1.3e33: every 33-digit number fits
        self.assertGreater(value, 10 ** 33 - 1)
        self.assertEqual(len(str(value)), 34)

    def test_small_values(self):
        self.assertEqual(bits_to_number(BitArray.from_string("00001")), 1)
        self.assertEqual(number_to_bits(0).to_string(), "0")
        self.assertEqual(number_to_bits(5, 8).to_string(), "00000101")

    def test_width_too_small(self):
        with self.assertRaises(CodecError):
            number_to_bits(256, 8)

    def test_negative(self):
        with self.assertRaises(CodecError):
            number_to_bits(-1)

    @given(st.integers(min_value=0, max_value=2 ** 110 - 1))
    def test_110_bit_round_trip(self, value):
        bits = number_to_bits(value, 110)
        self.assertEqual(len(bits), 110)
        self.assertEqual(bits_to_number(bits), value)
        self.assertEqual(int(bits.to_string(), 2), value)


if __name__ == "__main__":
    unittest.main()
