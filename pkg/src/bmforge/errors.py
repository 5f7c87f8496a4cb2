"""Exception hierarchy shared by all bmforge modules."""


class BmforgeError(Exception):
    """Base class for all bmforge errors."""


class DegenerateInput(BmforgeError):
    """Point set is collinear or has fewer than 3 distinct points."""


class OriginNotInterior(BmforgeError):
    """An operation required the origin strictly inside the polygon."""


class SingularMap(BmforgeError):
    """Affine map with |det| below tolerance."""


class Infeasible(BmforgeError):
    """No positive-area affine image fits the containment constraint."""


class NonConverged(BmforgeError):
    """Iterative solver hit its limit without a certified result."""


class NoContacts(BmforgeError):
    """Boundary coincidence enumeration found nothing (inner body strictly interior)."""


class NoCertificate(BmforgeError):
    """No recentering yields feasible John weights."""


class InfeasibleWeights(BmforgeError):
    """Contact pairs do not admit positive weights within tolerance."""


class WrongArity(BmforgeError):
    """Certificate has the wrong number of contact pairs for this check."""


class CertificateInvalid(BmforgeError):
    """Certificate failed re-verification of its residuals."""


class NotAContactPoint(BmforgeError):
    """Point is not on both boundaries required by the equality conditions."""


class ChainViolated(BmforgeError):
    """A required inclusion in a scenario's containment chain failed."""

    def __init__(self, name, slack):
        super().__init__(f"inclusion {name!r} violated (worst slack {slack:.3e})")
        self.name = name
        self.slack = slack


class EpsilonTooLarge(BmforgeError):
    """Perturbation magnitude broke a containment the scenario must preserve."""


class PreconditionViolated(BmforgeError):
    """Scenario parameters violate a stated precondition."""


class InconsistentConditions(BmforgeError):
    """Overdetermined map conditions disagree beyond tolerance."""


class UnknownScenario(BmforgeError):
    """Scenario id not recognized."""


class ParameterOutOfRange(BmforgeError):
    """Scenario parameter outside its admissible range."""


class NotSymmetric(BmforgeError):
    """Polygon has no center of symmetry within tolerance."""
