"""
Deterministic 64-bit random stream (splitmix64) used by every sampler and suite.

Python's ``random`` is not used so that a (seed, label, case) triple produces the
same values on any platform and in any other implementation of the stream.
"""
from fractions import Fraction
import zlib

from config import TEST_CASE_SCALE

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed):
        self.state = int(seed) & MASK64

    def next_u64(self):
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def randint(self, lo, hi):
        """Uniform integer in [lo, hi]."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def coin(self, numerator=1, denominator=2):
        return self.next_u64() % denominator < numerator

    def choice(self, items):
        items = list(items)
        if not items:
            raise ValueError("choice from an empty sequence")
        return items[self.randint(0, len(items) - 1)]

    def fraction(self, bound=5, den_bound=3):
        return Fraction(self.randint(-bound, bound), self.randint(1, den_bound))

    def fork(self, label):
        """Independent child stream keyed by a label."""
        return SplitMix64(mix64(self.state ^ zlib.crc32(str(label).encode('utf-8'))))


def case_stream(seed, label, index):
    """Stream for one case of one labelled check; stable across runs."""
    base = mix64((int(seed) & MASK64) ^ zlib.crc32(str(label).encode('utf-8')))
    return SplitMix64(mix64(base + index * GOLDEN_GAMMA & MASK64))


def scaled_cases(count):
    """count scaled by TEST_CASE_SCALE, never below one."""
    return max(1, round(count * TEST_CASE_SCALE))
