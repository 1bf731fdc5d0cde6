"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class NotAGroup(ToolkitError):
    """A multiplication table violates one of the group axioms."""


class NotAHomomorphism(ToolkitError):
    """An image sequence violates the homomorphism law."""


class InvalidParameter(ToolkitError):
    """An argument is outside the documented domain of an operation."""


class OrderCapExceeded(ToolkitError):
    """A construction would exceed the configured group-order cap."""


class NotAnAction(ToolkitError):
    """An action specification is not a homomorphism into Aut(A)."""


class NotNormal(ToolkitError):
    """The given subgroup is not normal in its parent."""


class PrimeDoesNotDivide(ToolkitError):
    """The prime does not divide the group order."""


class NotOddOrder(ToolkitError):
    """The operation requires a group of odd order."""


class TrivialGroup(ToolkitError):
    """The operation requires a non-trivial group."""


class IsElementaryAbelian(ToolkitError):
    """The operation requires a non-elementary-abelian input."""


class NotAbelian(ToolkitError):
    """The operation requires an abelian group."""


class SearchBudgetExceeded(ToolkitError):
    """A backtracking search ran out of nodes before reaching a proof."""


class BudgetExceeded(ToolkitError):
    """The automorphism search exceeded its node budget; no partial result."""


class NotInvertible(ToolkitError):
    """The matrix is singular over its prime field."""


class NotCoprime(ToolkitError):
    """The matrix group order is divisible by the field characteristic."""


class NotCommuting(ToolkitError):
    """The supplied matrices do not pairwise commute."""


class NotIrreducible(ToolkitError):
    """The matrix does not act irreducibly on the given block."""


class ConditionViolated(ToolkitError):
    """The companion bottom-row sum is congruent to 1 mod p.

    This is proved impossible for a non-trivial irreducible block, so it
    signals an internal inconsistency rather than bad user input.
    """


class NotElementaryAbelian(ToolkitError):
    """The central quotient of the normal part is not homocyclic."""


class ActionNotCoprime(ToolkitError):
    """The induced action has order divisible by the subgroup's prime."""


class NoCentralSolution(ToolkitError):
    """No central adjuster makes the basis representative of order q."""


class NoSolution(ToolkitError):
    """The central constant system has no solution (internal bug)."""


class NonUniqueSolution(ToolkitError):
    """The central constant system has several solutions (internal bug)."""


class TrivialAction(ToolkitError):
    """The complement acts trivially; use the direct-product route."""


class HypothesisViolated(ToolkitError):
    """A named hypothesis of the extension construction fails."""


class NotTrivialOnIntersection(ToolkitError):
    """The automorphism moves a point of the subgroup intersection."""


class DoesNotCommuteWithAction(ToolkitError):
    """The automorphism fails to commute with the induced action."""


class NotWellDefined(ToolkitError):
    """The assembled extension is not an automorphism (internal bug)."""


class ExponentTwo(ToolkitError):
    """Inversion is the identity on an exponent-2 group."""


class RuleSetIncomplete(ToolkitError):
    """A derived enumeration disagrees with the stored reference list."""

    def __init__(self, label, missing, extra):
        self.label = label
        self.missing = tuple(sorted(missing))
        self.extra = tuple(sorted(extra))
        super().__init__(
            f"{label}: derived list disagrees with reference "
            f"(missing {list(self.missing)}, extra {list(self.extra)})"
        )


class ParseError(ToolkitError):
    """A group file cannot be parsed; carries the offending line number."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
