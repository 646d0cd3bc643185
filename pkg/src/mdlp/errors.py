"""Exception types shared across the package."""


class MdlpError(Exception):
    """Base class for every error raised by this package."""


class InvalidModulus(MdlpError, ValueError):
    """Modulus smaller than 2 (or otherwise unusable)."""


class NotInvertible(MdlpError, ValueError):
    """Inversion attempted on a non-unit; carries the blocking gcd."""

    def __init__(self, a, m, gcd):
        super().__init__(f"{a} is not invertible mod {m} (gcd = {gcd})")
        self.a = a
        self.m = m
        self.gcd = gcd


class NotAUnit(MdlpError, ValueError):
    """Element shares a factor with the modulus; carries the gcd."""

    def __init__(self, g, n, gcd):
        super().__init__(f"{g} is not a unit mod {n} (gcd = {gcd})")
        self.g = g
        self.n = n
        self.gcd = gcd


class BudgetExceeded(MdlpError):
    """A configured work budget ran out before the operation finished."""


class CapacityExceeded(BudgetExceeded):
    """Subgroup closure grew past the element cap; the question is
    undecidable at this cap, which is distinct from a negative answer."""


class GenerationFailed(BudgetExceeded):
    """Rejection sampling exhausted its attempt budget."""

    def __init__(self, attempts, detail=""):
        msg = f"no instance found after {attempts} attempts"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.attempts = attempts


class UnsolvableSystem(MdlpError):
    """Simultaneous congruences admit no common solution.

    ``pair`` holds the indices (i, j) of a witnessing unsolvable pair of
    input congruences.
    """

    def __init__(self, pair, c1, c2):
        super().__init__(
            f"congruences {c1} and {c2} (items {pair[0]}, {pair[1]}) conflict"
        )
        self.pair = pair


class IndependenceViolation(MdlpError, ValueError):
    """A generator power lies in the span of the other generators.

    ``witness`` is the offending (generator index, exponent).
    """

    def __init__(self, witness):
        i, v = witness
        super().__init__(f"generator {i} to the power {v} is spanned by the others")
        self.witness = witness


class RankDeficient(MdlpError):
    """The relation matrix does not pin down every base logarithm."""


class AllMethodsExhausted(MdlpError):
    """Every solver strategy was tried and none could decide the instance."""

    def __init__(self, diagnostics):
        super().__init__(f"no method could decide the instance: {diagnostics}")
        self.diagnostics = diagnostics
