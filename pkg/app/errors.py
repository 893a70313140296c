class OAGError(Exception):
    pass


# Parsing
class ConversionError(OAGError):
    pass


class ExprSyntaxError(OAGError):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, column {col})")


# Values
class RankMismatch(OAGError):
    pass


class NotPositive(OAGError):
    pass


class NotRationallyDependent(OAGError):
    pass


# Index sets
class Empty(OAGError):
    pass


class UnboundedBelow(OAGError):
    pass


class UnboundedAbove(OAGError):
    pass


class NoSuccessor(OAGError):
    pass


class NoPredecessor(OAGError):
    pass


class TooFewElements(OAGError):
    pass


# Representation
class ValidationError(OAGError):
    pass


class OverlapError(ValidationError):
    def __init__(self, message: str, pair: tuple = ()):
        self.pair = pair
        super().__init__(message)


class EmptyPattern(ValidationError):
    pass


class NotRepresentable(OAGError):
    def __init__(self, message: str, window: list = None):
        self.window = window or []
        super().__init__(message)


class NotDiscrete(OAGError):
    pass


class NotLatticeAligned(OAGError):
    pass


# Calculus
class NotMember(OAGError):
    pass


class IsMaximal(OAGError):
    pass


class ChainEnd(IsMaximal):
    pass


class IsMinimal(OAGError):
    pass


class TooSmall(OAGError):
    pass


class Exhausted(OAGError):
    def __init__(self, message: str, stage: int):
        self.stage = stage
        super().__init__(message)


class FiniteChain(OAGError):
    pass


# Structure
class FiniteWord(OAGError):
    pass


class BoundViolated(OAGError):
    def __init__(self, message: str, k: int):
        self.k = k
        super().__init__(message)


class AlphabetMismatch(OAGError):
    pass


class NotUniformized(OAGError):
    pass


class NotPseudoArithmetic(OAGError):
    pass


class DifferentEta(OAGError):
    pass


class DifferentMin(OAGError):
    pass


# Groups
class InvalidGroup(OAGError):
    pass


class IncompatibleEtas(OAGError):
    pass


class NotNormalized(OAGError):
    pass


class NotDecomposable(OAGError):
    pass


# Witness
class HypothesisFailed(OAGError):
    def __init__(self, message: str, level: int):
        self.level = level
        super().__init__(message)


# Verification
class VerificationFailed(OAGError):
    def __init__(self, message: str, report: dict = None):
        self.report = report or {}
        super().__init__(message)
