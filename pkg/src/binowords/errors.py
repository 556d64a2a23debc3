"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so user-triggerable failure
modes get their own class instead of a bare ValueError.
"""


class BinowordsError(Exception):
    """Base class for all package errors."""


class AlphabetMismatchError(BinowordsError):
    """Two words (or a word and a morphism) disagree on their alphabet."""


class StabilizationError(BinowordsError):
    """A factor set (or window statistic) kept changing up to the prefix cap.

    Carries the two conflicting measurements so the caller can report how
    far apart the last two doublings were.
    """

    def __init__(self, what, n, cap, last, previous):
        self.what = what
        self.n = n
        self.cap = cap
        self.last = last
        self.previous = previous
        super().__init__(
            f"{what} for n={n} did not stabilize within prefix cap {cap}: "
            f"last two doublings gave {previous} and {last}"
        )


class GeneratorSpecError(BinowordsError):
    """A generator spec string or morphism file could not be parsed."""


class MorphismError(BinowordsError):
    """Invalid morphism operation (bad power, non-prolongable seed, ...)."""


class ImageCapError(MorphismError):
    """A morphism power would exceed the per-letter image length cap."""


class DecodeError(BinowordsError):
    """A word admits no factorization / decoding of the requested shape."""


class AperiodicityError(BinowordsError):
    """A computation requiring an aperiodic word detected a periodic prefix."""
