"""Typed failure modes of the resolution engine.

Every abort the driver can produce is one of these, so callers (and the CLI
exit-code mapping) can tell a legitimate algorithmic boundary from a bug.
Each error carries enough context to say *where* the run stopped.
"""

from __future__ import annotations


class ResolutionError(RuntimeError):
    """Base class for typed aborts; the partial trace up to the abort is kept."""

    code = "resolution-error"

    def payload(self) -> dict:
        return {"error": self.code, "detail": str(self)}


class CenterNotCoordinate(ResolutionError):
    """The required center is not a coordinate subspace in the current chart.

    Raised when a codimension-one center V(h) has h neither a coordinate nor
    translatable to one (h not unit-linear in any movable variable), e.g. an
    irrational or reducible hypersurface that genuinely carries the next
    center.  The locus is mathematically a fine center; the chart model just
    cannot express the blow-up with monomial coordinate maps.
    """

    code = "center-not-coordinate"


class NoUnitLinearVariable(ResolutionError):
    """No variable of the chart works as a maximal contact coordinate.

    The derivative ideal of the companion object contains no generator that
    is unit-linear in an admissible variable, so the descent in dimension
    cannot pick a hypersurface V(z).
    """

    code = "no-unit-linear-variable"


class ZeroCoefficientIdeal(ResolutionError):
    """The coefficient ideal along the chosen contact hypersurface is zero.

    Happens when every generator is a pure power of the contact variable
    times nothing else; the singular locus would then have to be resolved
    inside V(z) with no equation left, which the descent cannot represent.
    """

    code = "zero-coefficient-ideal"


class FactorialBlowup(ResolutionError):
    """A coefficient ideal would need exponents b!/(b-i) with b too large.

    The common-denominator bound b! grows too fast to keep exact arithmetic
    tractable, so descents from objects with bound above the cap abort.
    """

    code = "factorial-blowup"

    CAP = 6


class BudgetExceeded(ResolutionError):
    """A resource budget ran out (Groebner steps or blow-up count)."""

    code = "budget-exceeded"

    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} budget of {limit} exceeded")
        self.what = what
        self.limit = limit


class InternalCheckFailed(ResolutionError):
    """A structural invariant the algorithm guarantees was observed broken.

    These are assertions about the mathematics (controlled transforms divide
    exactly, singular loci only shrink under permissible centers, invariant
    vectors drop strictly).  Seeing one means a bug, not a hard input.
    """

    code = "internal-check-failed"


class DesingNotReached(ResolutionError):
    """A desingularization run finished principalizing without the invariant
    ever hitting the smooth marker.

    For a reduced, pure-codimension input the marker must appear before the
    singular locus empties; not seeing it usually means the input ideal was
    not reduced (or not presented as the full ideal of its zero set).
    """

    code = "desing-not-reached"
