"""Exception types raised across the package.

Every hard failure named in the module contracts has its own class so that
callers (and the CLI exit codes) can tell them apart.
"""


class HeckeZetaError(Exception):
    """Base class."""


# exact algebra
class NonzeroRemainder(HeckeZetaError):
    pass


class OddHalfPower(HeckeZetaError):
    pass


# root data
class RankMismatch(HeckeZetaError):
    pass


class NotDominant(HeckeZetaError):
    pass


class InvalidRootDatum(HeckeZetaError):
    pass


# weyl engine
class NotLengthZero(HeckeZetaError):
    pass


class NotReduced(HeckeZetaError):
    pass


# satake
class NotSplit(HeckeZetaError):
    pass


class MissingEntry(HeckeZetaError):
    pass


class NotCentral(HeckeZetaError):
    pass


class NotInvariant(HeckeZetaError):
    pass


class NonTermination(HeckeZetaError):
    pass


class NotMinuscule(HeckeZetaError):
    pass


class OppositionNotMinusOne(HeckeZetaError):
    pass


# p-adic models
class Singular(HeckeZetaError):
    pass


class EmbeddingMismatch(HeckeZetaError):
    pass


class CountMismatch(HeckeZetaError):
    pass


class DuplicateCoset(HeckeZetaError):
    pass


class LevelTooLow(HeckeZetaError):
    pass


# schwartz lab
class LevelTooSmall(HeckeZetaError):
    pass


class Mismatch(HeckeZetaError):
    pass
