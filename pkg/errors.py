"""Exception hierarchy shared by every hochproj module.

All errors derive from ``ValueError`` so callers that only guard against bad
input keep working; the CLI maps any ``HochprojError`` to exit code 2, except inside ``verify``
where a block that raises one is reported as a failed check.
"""


class HochprojError(ValueError):
    """Base class for input and computation errors."""


class FieldError(HochprojError):
    """Unknown field tag, non-prime modulus or mixed-field data."""


class ShapeError(HochprojError):
    """Dimension or shape mismatch between linear-algebra operands."""


class NotInSpanError(HochprojError):
    """A vector expected to lie in a subspace does not."""


class RelationSyntaxError(HochprojError):
    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class PresentationError(HochprojError):
    """Malformed quiver, path or relation."""


class NotAdmissibleError(HochprojError):
    pass


class CapExceededError(HochprojError):
    def __init__(self, what: str, size: int, cap: int, hint: str = ""):
        self.what = what
        self.size = size
        self.cap = cap
        message = f"{what} needs {size} columns, above the configured cap {cap}"
        if hint:
            message = f"{message}; {hint}"
        super().__init__(message)


class AxiomError(HochprojError):
    """Associativity, idempotent, action or morphism axiom fails."""


class AlgebraMismatchError(HochprojError):
    pass


class NotACocycleError(HochprojError):
    pass


class NotADerivationError(HochprojError):
    pass


class NotMonomialError(HochprojError):
    pass


class NotTriangularError(HochprojError):
    pass


class ExtensionError(HochprojError):
    """Operation requires a different kind of extension (e.g. trivial)."""
