"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the support of a closed-form derivation."""


class UnsupportedStrategy(ValueError):
    """Rating transition requested for a strategy the update rule does not track."""


class DegenerateChain(ValueError):
    """The rating chain has no unique stationary distribution."""


class DegenerateDenominator(ZeroDivisionError):
    """A constraint-coefficient denominator vanished (|den| < 1e-12)."""


class Infeasible(RuntimeError):
    """No protocol on the searched grid satisfies all constraints."""


class ConfigError(ValueError):
    """Malformed, incomplete, or out-of-vocabulary parameter configuration."""
