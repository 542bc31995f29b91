"""Exception types shared across the toolkit."""


class YDKitError(Exception):
    pass


class DivisionByZero(YDKitError, ZeroDivisionError):
    pass


class ReconstructionFailed(YDKitError):
    """A numeric root could not be certified as an exact field element."""

    def __init__(self, root_index, message=""):
        self.root_index = root_index
        super().__init__(message or f"root #{root_index} not certified in the field")


class AmbientMismatch(YDKitError):
    pass


class FieldNotSplitting(YDKitError):
    """The working cyclotomic field is too small to split an algebra."""


class NonSemisimple(YDKitError):
    pass


class AxiomFailure(YDKitError):
    def __init__(self, axiom, witness=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} fails at witness {witness}")


class CheckFailed(YDKitError):
    def __init__(self, part, witness=None):
        self.part = part
        self.witness = witness
        super().__init__(f"check {part} fails at witness {witness}")


class DimensionMismatch(YDKitError):
    pass


class QuotientIllFormed(YDKitError):
    pass


class BlockMismatch(YDKitError):
    pass


class NotAGroup(YDKitError):
    pass


class ParseError(YDKitError):
    pass


class VerifyError(YDKitError):
    def __init__(self, axiom, witness=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"verification failed: {axiom} (witness {witness})")
