"""Exception hierarchy shared by every evolab module."""


class EvolabError(Exception):
    """Base class for all evolab errors."""


class ParallelLines(EvolabError):
    pass


class DegenerateTurning(EvolabError):
    """A turning angle is congruent to 0 mod pi (consecutive sides parallel)."""


class EvenGon(EvolabError):
    """An operation defined only for odd n received an even-sided polygon."""


class EmptyInput(EvolabError):
    pass


class IndexOutOfRange(EvolabError):
    pass


class NotEquiangular(EvolabError):
    pass


class NotConvex(EvolabError):
    pass


class NonzeroLength(EvolabError):
    """Evolvent requested for a support function with nonzero mean."""


class EigensolverFailure(EvolabError):
    pass


class NoInvariantComplement(EvolabError):
    """span{C, S} has no unique invariant complement under the evolute matrix."""


class EvoluteParallelSides(EvolabError):
    pass


class CoincidentVertices(EvolabError):
    pass


class Collapsed(EvolabError):
    """All vertices of a polygon coincide (within tolerance)."""


class NoEvolvent(EvolabError):
    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)
