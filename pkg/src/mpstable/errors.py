"""Exception types shared across the package."""


class InvalidRootSystemType(ValueError):
    """Raised for a (family, rank) pair that names no simple root system."""


class GroupTooLarge(RuntimeError):
    """The Weyl group order exceeds the enumeration ceiling."""

    def __init__(self, order: int, ceiling: int):
        super().__init__(f"|W| = {order} exceeds ceiling {ceiling}")
        self.order = order
        self.ceiling = ceiling


class IntegralityViolation(ArithmeticError):
    """A divided power (ad e)^i / i! produced a non-integral coefficient."""


class DivisibilityViolation(ArithmeticError):
    """disc(disc(F)) was not divisible by 2^8."""


class BudgetExhausted(RuntimeError):
    """An orbit or destabilizer scan hit its element cap before completing."""

    def __init__(self, budget: int, visited: int):
        super().__init__(f"scan budget {budget} exhausted after {visited} elements")
        self.budget = budget
        self.visited = visited


class NotInAlcove(ValueError):
    """Kac coordinates requested for a point outside the closed fundamental alcove."""
