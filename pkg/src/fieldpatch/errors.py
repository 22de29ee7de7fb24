"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI prints
and maps to an exit status; precondition failures share exit code 3.
"""


class FieldPatchError(Exception):
    code = "Error"
    exit_code = 3


class IncompatibleTags(FieldPatchError):
    code = "IncompatibleTags"


class PrecisionError(FieldPatchError):
    """Not enough known digits to perform an operation soundly."""

    code = "PrecisionError"


class NotInRing(FieldPatchError):
    code = "NotInRing"


class InadmissibleExpansion(FieldPatchError):
    code = "InadmissibleExpansion"


class BranchMismatch(FieldPatchError):
    code = "BranchMismatch"


class NoSolution(FieldPatchError):
    code = "NoSolution"


class StandardPositionError(FieldPatchError):
    code = "StandardPositionError"


class NoRadiusFound(FieldPatchError):
    code = "NoRadiusFound"


class ThresholdViolation(FieldPatchError):
    code = "ThresholdViolation"


class GuardFailure(FieldPatchError):
    code = "GuardFailure"
    exit_code = 2


class SingularResidue(FieldPatchError):
    code = "SingularResidue"


class CharacteristicTwo(FieldPatchError):
    code = "CharacteristicTwo"


class SingularForm(FieldPatchError):
    code = "SingularForm"


class NonMonicModulus(FieldPatchError):
    code = "NonMonicModulus"


class TransitionNotIso(FieldPatchError):
    code = "TransitionNotIso"


class DegenerateMirror(FieldPatchError):
    code = "DegenerateMirror"


class ExactnessFailure(FieldPatchError):
    code = "ExactnessFailure"


class VerificationFailure(FieldPatchError):
    code = "VerificationFailure"
    exit_code = 1


class ParseError(FieldPatchError, ValueError):
    code = "ParseError"
