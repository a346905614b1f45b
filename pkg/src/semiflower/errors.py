"""Exception hierarchy shared across the package."""


class SemiflowerError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetMismatchError(SemiflowerError):
    """Two automata that must share an alphabet do not."""


class UnknownLetterError(SemiflowerError):
    """A word uses a symbol outside the declared alphabet."""


class UnknownStateError(SemiflowerError):
    """A state id does not belong to the automaton."""


class NotTrimError(SemiflowerError):
    """The automaton has inaccessible or non-coaccessible states."""


class NoUniqueBaseError(SemiflowerError):
    """The automaton lacks a single state that is both initial and final."""


class CycleAvoidsBaseError(SemiflowerError):
    """A cycle bypasses the base state; carries a witness cycle.

    The witness is a list of transitions forming the offending cycle.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = list(witness) if witness is not None else []


class EmptyWordError(SemiflowerError):
    """The empty word appeared where only nonempty generators are allowed."""


class WrongBpiCountError(SemiflowerError):
    """The operation requires a different number of branch points going in."""


class TieDistanceError(SemiflowerError):
    """Two distinct bpi's at equal distance from the base; structurally impossible."""


class NotDeterministicError(SemiflowerError):
    """The operation requires a deterministic automaton."""


class LengthMismatchError(SemiflowerError):
    """Paired sequences must have equal length."""


class TooManyBpisError(SemiflowerError):
    """The summary is only defined for automata with at most two bpi's."""


class NotPrefixCodeError(SemiflowerError):
    """A generating set contains a word that is a proper prefix of another.

    ``offender`` is the (prefix, word) pair that violates the property.
    """

    def __init__(self, message, offender=None):
        super().__init__(message)
        self.offender = offender


class EmptyGeneratorsError(SemiflowerError):
    """An analysis step needs a nonempty generating set."""


class BudgetExceededError(SemiflowerError):
    """Bounded enumeration would exceed its word budget."""
