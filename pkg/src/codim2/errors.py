"""Exception hierarchy.

User-facing precondition failures derive from InvalidConfiguration and carry a
message naming the violated hypothesis; they map to CLI exit code 1.  Failures
of identities that the theory guarantees derive from InternalIdentityError and
map to exit code 2.
"""


class Codim2Error(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatch(Codim2Error):
    """Operands live over different variable contexts."""


class ParseError(Codim2Error):
    """Malformed polynomial text or JSON."""


class InexactDivision(Codim2Error):
    """exact_divide was asked for a quotient that does not exist over the integers."""


class DegenerateResultant(Codim2Error):
    """Both resultant arguments are constant in the eliminated variable."""


class InvalidConfiguration(Codim2Error):
    """Input violates a stated precondition (validation errors, bad matrices)."""


class NotPrime(InvalidConfiguration):
    """The rows of B do not generate the full planar lattice: no Gale dual exists."""


class PreconditionViolated(InvalidConfiguration):
    """A theorem hypothesis required by the requested fast path does not hold."""


class UnsupportedSubstitution(InvalidConfiguration):
    """Substitution would need a rational (non-unit) coefficient raised to a negative power."""


class InternalIdentityError(Codim2Error):
    """An identity guaranteed by the theory failed; indicates a bug, not a user error."""


class ComputationCancelled(Codim2Error):
    """Cooperative cancellation: the caller's deadline expired."""
