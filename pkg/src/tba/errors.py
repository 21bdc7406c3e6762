"""Exception hierarchy for the table-algebra toolkit."""


class TBAError(Exception):
    """Base class for every error raised by :mod:`tba`."""


class ShapeMismatch(TBAError):
    pass


class AxiomViolation(TBAError):
    def __init__(self, violations):
        self.violations = list(violations)
        axioms = sorted({v.axiom for v in self.violations})
        super().__init__(
            f"{len(self.violations)} axiom violation(s) in: {', '.join(axioms)}"
        )

    @property
    def axioms(self):
        return {v.axiom for v in self.violations}


class AlgebraMismatch(TBAError):
    pass


class SizeLimitExceeded(TBAError):
    pass


class NotClosed(TBAError):
    pass


class InternalInconsistency(TBAError):
    pass


class AlphaIdentityFailed(TBAError):
    pass


class RepresentativeDependence(TBAError):
    pass


class TheoremGrViolation(TBAError):
    pass


class NotNormal(TBAError):
    pass


class SplittingFailed(TBAError):
    pass


class ToleranceBreach(TBAError):
    def __init__(self, what, residual, tol):
        self.what = what
        self.residual = residual
        self.tol = tol
        super().__init__(f"{what}: residual {residual:.3e} exceeds {tol:.1e}")


class CrossCheckMismatch(TBAError):
    pass


class KernelNotClosed(TBAError):
    pass


class EmbeddingMismatch(TBAError):
    pass


class HypothesisFailed(TBAError):
    """Burnside-Brauer hypotheses do not hold; ``report`` still has coverage."""

    def __init__(self, failures, report=None):
        self.failures = list(failures)
        self.report = report
        super().__init__("hypothesis failed: " + ", ".join(self.failures))


class ParseError(TBAError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class NotAScheme(TBAError):
    def __init__(self, k, i, j, counts):
        self.k, self.i, self.j = k, i, j
        self.counts = counts
        super().__init__(
            f"intersection number p^{k}_{{{i},{j}}} depends on the base pair: "
            f"found {counts[0]} and {counts[1]}"
        )


class NotAGroup(TBAError):
    pass
