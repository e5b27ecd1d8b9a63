"""Exception types shared across the package."""


class DimerFieldError(Exception):
    """Base class for all package-specific errors."""


class GeometryError(DimerFieldError, ValueError):
    """Invalid geometric configuration (non-positive radius/gap, overlap, ...)."""


class SingularPointError(DimerFieldError, ValueError):
    """Evaluation requested at a singular point of the coordinate map.

    Raised for the two foci (+/-alpha, 0), where the bipolar map degenerates,
    and for the bipolar origin (zeta, eta) = (0, 0), which is the image of the
    point at infinity.
    """


class ContrastError(DimerFieldError, ValueError):
    """Permittivity contrast is degenerate (eps_m equal to the background)."""


class ResonanceSingularityError(DimerFieldError, ValueError):
    """The spectral parameter coincides with an operator eigenvalue.

    Carries the offending mode so callers can report which resonance was hit.
    """

    def __init__(self, order: int, sign: int, eigenvalue: complex):
        self.order = order
        self.sign = sign
        self.eigenvalue = eigenvalue
        label = "+" if sign > 0 else "-"
        super().__init__(
            f"spectral parameter hits the (n={order}, {label}) eigenvalue "
            f"{eigenvalue!r}; the resolvent series diverges"
        )


class OutOfDomainError(DimerFieldError, ValueError):
    """Evaluation point lies outside the validity region of an expansion."""


class EvaluationAccuracyError(DimerFieldError, ValueError):
    """Target too close to a boundary for the quadrature to be trustworthy."""


class NearSingularSolveError(DimerFieldError, ValueError):
    """Linear system is numerically singular (lambda too close to the spectrum)."""

    def __init__(self, lam: complex, nearest_eigenvalue: float, condition_estimate: float):
        self.lam = lam
        self.nearest_eigenvalue = nearest_eigenvalue
        self.condition_estimate = condition_estimate
        super().__init__(
            f"resolvent solve at lambda={lam!r} is near-singular "
            f"(nearest discrete eigenvalue {nearest_eigenvalue:.12g}, "
            f"condition estimate {condition_estimate:.3g})"
        )


class ConfigError(DimerFieldError, ValueError):
    """Run configuration is malformed or inconsistent."""
