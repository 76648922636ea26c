"""Exception hierarchy.

Each error carries an ``exit_code`` used by the command-line front end.
"""

from __future__ import annotations


class NegMultinomialError(Exception):
    exit_code = 1


class InvalidParams(NegMultinomialError, ValueError):
    exit_code = 3


class NonPositiveR(InvalidParams):
    pass


class NegativeProbability(InvalidParams):
    pass


class MassAtLeastOne(InvalidParams):
    pass


class EmptyDimension(InvalidParams):
    pass


class DimensionMismatch(InvalidParams):
    pass


class ExactModeUnsupported(NegMultinomialError):
    exit_code = 4


class NoConvergence(NegMultinomialError, RuntimeError):
    exit_code = 5


class NotInCorpus(NegMultinomialError, KeyError):
    exit_code = 3

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "not in corpus"


class CorpusFormatError(NegMultinomialError, ValueError):
    pass
