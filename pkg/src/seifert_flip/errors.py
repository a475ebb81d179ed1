"""Exception hierarchy shared by every module of the package."""


class SeifertFlipError(ValueError):
    """Base class for all domain errors raised by seifert_flip."""


# invariants
class InvalidMultiplicity(SeifertFlipError):
    pass


class NonCoprimeSlope(SeifertFlipError):
    pass


class LensParameterUnknown(SeifertFlipError):
    pass


# presentations / splittings
class WrongFiberCount(SeifertFlipError):
    pass


class WrongCase(SeifertFlipError):
    pass


class ExponentCountMismatch(SeifertFlipError):
    pass


# finite groups and Nielsen search
class InvalidGroupTable(SeifertFlipError):
    pass


class UnassignedGenerator(SeifertFlipError):
    pass


class NotGenerating(SeifertFlipError):
    pass


class LengthMismatch(SeifertFlipError):
    pass


class SearchExhausted(SeifertFlipError):
    """The orbit search visited more tuples than the node cap allows."""

    def __init__(self, visited, node_cap):
        super().__init__(f"orbit search exceeded node cap {node_cap} after {visited} tuples")
        self.visited = visited
        self.node_cap = node_cap


# classifier
class InconsistentDescriptor(SeifertFlipError):
    pass


class RelatorViolation(SeifertFlipError):
    pass
