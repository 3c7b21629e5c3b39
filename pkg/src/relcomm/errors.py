"""Exception types shared by all modules."""


class GroupError(Exception):
    """Base class for all errors raised by this package."""


class NotAGroup(GroupError):
    """A multiplication table fails one of the group axioms.

    For associativity failures, ``triple`` holds the first witnessing
    (a, b, c) in lexicographic order.
    """

    def __init__(self, reason, triple=None):
        self.reason = reason
        self.triple = triple
        msg = reason if triple is None else f"{reason} at triple {triple}"
        super().__init__(msg)

    def __reduce__(self):
        return (NotAGroup, (self.reason, self.triple))


class OrderCapExceeded(GroupError):
    """A construction would produce a group larger than the configured cap."""


class NotAnAutomorphism(GroupError):
    """An action image is not an automorphism; carries a witnessing pair."""

    def __init__(self, h_elem, pair):
        self.h_elem = h_elem
        self.pair = pair
        super().__init__(f"action of h-element {h_elem} is not an automorphism "
                         f"(witness pair {pair})")

    def __reduce__(self):
        return (NotAnAutomorphism, (self.h_elem, self.pair))


class NotAHomomorphism(GroupError):
    """An action map is not a homomorphism; carries the witnessing h-pair."""

    def __init__(self, pair, detail=""):
        self.pair = pair
        self.detail = detail
        msg = f"action is not a homomorphism (witness h-pair {pair})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)

    def __reduce__(self):
        return (NotAHomomorphism, (self.pair, self.detail))


class LatticeCapExceeded(GroupError):
    """Subgroup enumeration refused: group order exceeds the lattice cap."""


class NoSuchPrime(GroupError):
    """A requested prime does not divide the group order."""


class NotNested(GroupError):
    """A relative degree was requested for subgroups that are not nested."""


class NotCoprime(GroupError):
    """A coprime-order precondition failed."""


class BadParams(GroupError):
    """Case parameters violate the constraints of a spectrum formula."""


class Inapplicable(GroupError):
    """An audit's hypotheses do not hold for the given group."""


class SpecParseError(GroupError):
    """Group spec text is not valid JSON; ``position`` is the byte offset."""

    def __init__(self, message, position):
        self.message = message
        self.position = position
        super().__init__(f"{message} (at position {position})")

    def __reduce__(self):
        return (SpecParseError, (self.message, self.position))


class SpecSchemaError(GroupError):
    """Group spec JSON violates the schema; ``field`` names the offender."""

    def __init__(self, field, message):
        self.field = field
        self.message = message
        super().__init__(f"field {field!r}: {message}")

    def __reduce__(self):
        return (SpecSchemaError, (self.field, self.message))
