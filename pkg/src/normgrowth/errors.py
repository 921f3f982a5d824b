"""Exception types shared across the package."""


class NormGrowthError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(NormGrowthError):
    """An enumeration grew past its configured cap."""


class NotBijective(NormGrowthError):
    """A permutation input is not a bijection on its points."""


class NotPrimePower(NormGrowthError):
    """A field size is not a supported prime power."""


class NoCharacteristic(NormGrowthError):
    """A coprime-order census was requested on a group with no characteristic."""


class EmptyWord(NormGrowthError):
    """A group word is empty or freely reduces to the empty word."""


class DegenerateSpectrum(NormGrowthError):
    """Every random combination of class matrices had colliding eigenvalues."""


class NonIntegralDegree(NormGrowthError):
    """A recovered character degree is too far from an integer."""


class OnlyTrivial(NormGrowthError):
    """The character table has no nontrivial row."""


class EmptySubset(NormGrowthError):
    """A subset argument is empty where a nonempty one is required."""


class TrivialSubset(NormGrowthError):
    """A normal subset is empty or equal to {identity}."""


class NotNormal(NormGrowthError):
    """A subset is not a union of conjugacy classes."""


class NoConvergence(NormGrowthError):
    """Power iteration did not converge within the iteration budget."""


class NotLieType(NormGrowthError):
    """The group does not carry a defining field order."""


class SchemaError(NormGrowthError):
    """A character-table document does not match the expected schema."""


class OrthogonalityError(NormGrowthError):
    """A character table failed orthogonality certification."""


class ParseError(NormGrowthError):
    """A group spec, subset expression, or word string cannot be parsed."""
