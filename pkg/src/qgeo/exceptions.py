"""Exception types shared across the package."""


class QGeoError(Exception):
    """Base class for all package errors."""


class ShapeMismatch(QGeoError):
    """Amplitude count disagrees with the declared shape."""


class EmptyShape(QGeoError):
    """Shape is empty or has a non-positive dimension."""


class PartyCountMismatch(QGeoError):
    """Operands must have the same number of parties."""


class DimMismatch(QGeoError):
    """Operator column count does not match the party dimension."""


class BadMode(QGeoError):
    """Party index out of range."""


class BadLength(QGeoError):
    """Covector length does not match the party dimension."""


class NotAPermutation(QGeoError):
    """Sequence is not a permutation of 1..n."""


class BadPartition(QGeoError):
    """Party subset is empty, unsorted, or out of range."""


class BadEll(QGeoError):
    """Flattening level must satisfy 1 <= ell <= n-1."""


class WrongShape(QGeoError):
    """Operation is defined only for a specific tensor shape."""


class NotBipartite(QGeoError):
    """Operation requires a two-party state."""


class NotDistribution(QGeoError):
    """Vector is not a probability distribution."""


class ZeroTensor(QGeoError):
    """The zero tensor is rejected here."""


class UnknownKind(QGeoError):
    """No named-state constructor with that name."""


class BadParams(QGeoError):
    """Named-state parameters outside their valid domain."""


class UnknownRow(QGeoError):
    """No exemplar registered for that table row."""


class ExactModeOnInexactInput(QGeoError):
    """Exact arithmetic requested for a tensor without small dyadic entries."""


class WrongDim(QGeoError):
    """Matrix dimension is not the one required."""


class NotDensityMatrix(QGeoError):
    """Matrix fails the Hermitian/PSD/unit-trace checks."""


class BadDims(QGeoError):
    """Dimension list outside the formula's domain."""


class BadAlpha(QGeoError):
    """Monomial exponent list must be positive and sorted ascending."""


class BadL(QGeoError):
    """Excitation number out of range."""


class NotConcise(QGeoError):
    """Tensor does not use the full local dimension in that factor."""


class UnsupportedParams(QGeoError):
    """No explicit decomposition is available for these parameters."""


class NotCertifiedMinimalPersistent(QGeoError):
    """Multiplicativity needs a minimal-rank persistence certificate."""


class UnknownEntry(QGeoError):
    """No degeneration catalog entry with that name."""


class MixedEpsPower(QGeoError):
    """All operators of a witness must share the same epsilon power."""


class NoTransform(QGeoError):
    """Source has a rank-one cut the target does not; no rate bound exists."""


class ConstraintViolation(QGeoError):
    """A theorem-guaranteed constraint failed; indicates a rank misconfiguration."""


class UsageError(QGeoError):
    """Bad command-line arguments."""
