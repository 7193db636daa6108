"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RoughKleeneError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RoughKleeneError):
    """Malformed input: bad labels, bad tables, unparseable files."""


class DuplicateLabel(InputError):
    def __init__(self, label):
        super().__init__(f"duplicate label {label!r}")
        self.label = label


class UnknownLabel(InputError):
    def __init__(self, label):
        super().__init__(f"unknown label {label!r}")
        self.label = label


class InvalidOrder(InputError):
    """A table that was supposed to be a partial order is not one."""


class CycleDetected(InvalidOrder):
    def __init__(self, pair):
        super().__init__(f"antisymmetry violated by {pair[0]!r} and {pair[1]!r}")
        self.pair = pair


class NotALattice(InputError):
    def __init__(self, pair, operation="meet"):
        super().__init__(f"no unique {operation} for {pair[0]!r} and {pair[1]!r}")
        self.pair = pair
        self.operation = operation


class ParseError(InputError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class CapExceeded(RoughKleeneError):
    def __init__(self, size, cap):
        super().__init__(f"size {size} exceeds enumeration cap {cap}")
        self.size = size
        self.cap = cap


class NotPseudocomplemented(RoughKleeneError):
    def __init__(self, element):
        super().__init__(f"element {element!r} has no pseudocomplement")
        self.element = element


class NotDuallyPseudocomplemented(RoughKleeneError):
    def __init__(self, element):
        super().__init__(f"element {element!r} has no dual pseudocomplement")
        self.element = element


class NotDistributive(RoughKleeneError):
    def __init__(self, triple=None):
        msg = "lattice is not distributive"
        if triple is not None:
            msg += f" (counterexample {triple})"
        super().__init__(msg)
        self.triple = triple


class AxiomViolation(RoughKleeneError):
    def __init__(self, report, message=None):
        failed = ", ".join(v.axiom for v in report.failures())
        super().__init__(message or f"axioms failed: {failed}")
        self.report = report


class PreconditionViolated(RoughKleeneError):
    def __init__(self, condition, detail=""):
        super().__init__(f"precondition {condition} violated" + (f": {detail}" if detail else ""))
        self.condition = condition


class NotRegular(RoughKleeneError):
    def __init__(self, pair=None):
        super().__init__("algebra is not regular" + (f" (condition M fails at {pair})" if pair else ""))
        self.pair = pair


class TheoremViolation(RoughKleeneError):
    """A proved implication failed on a concrete instance: an implementation bug."""


class NotACovering(RoughKleeneError):
    pass


class NotIrredundant(RoughKleeneError):
    def __init__(self, block):
        super().__init__(f"covering is redundant: block {block} can be removed")
        self.block = block


class NotAnEquivalence(RoughKleeneError):
    pass


class NotAQuasiorder(RoughKleeneError):
    pass


class ClosureViolation(RoughKleeneError):
    def __init__(self, operation, witness):
        super().__init__(f"rough set system not closed under {operation} at {witness}")
        self.operation = operation
        self.witness = witness


class NotAnUpset(RoughKleeneError):
    pass


class InvalidSpace(RoughKleeneError):
    def __init__(self, report):
        failed = ", ".join(k for k, v in report.verdicts.items() if not v)
        super().__init__(f"not a Kleene-Varlet space: {failed} failed")
        self.report = report


class NotAPrimeFilter(RoughKleeneError):
    pass


class NoWitnessWithinBudget(RoughKleeneError):
    def __init__(self, max_universe):
        super().__init__(f"no representation witness with at most {max_universe} points")
        self.max_universe = max_universe


class KindMismatch(RoughKleeneError):
    pass


__all__ = [
    "RoughKleeneError",
    "InputError",
    "DuplicateLabel",
    "UnknownLabel",
    "InvalidOrder",
    "CycleDetected",
    "NotALattice",
    "ParseError",
    "CapExceeded",
    "NotPseudocomplemented",
    "NotDuallyPseudocomplemented",
    "NotDistributive",
    "AxiomViolation",
    "PreconditionViolated",
    "NotRegular",
    "TheoremViolation",
    "NotACovering",
    "NotIrredundant",
    "NotAnEquivalence",
    "NotAQuasiorder",
    "ClosureViolation",
    "NotAnUpset",
    "InvalidSpace",
    "NotAPrimeFilter",
    "NoWitnessWithinBudget",
    "KindMismatch",
]
