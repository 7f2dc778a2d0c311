"""Flattenings, multirank signatures, the 3x3x3 Koszul matrix, and Schmidt tools."""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import exact
from .exceptions import (
    BadEll,
    BadPartition,
    ExactModeOnInexactInput,
    NotBipartite,
    NotDistribution,
    WrongShape,
)
from .tensor import PureState, _check_partition, _flatten_by

DEFAULT_TOL = 1e-10


def default_tol() -> float:
    return float(os.environ.get("QGEO_TOL", DEFAULT_TOL))


@dataclass(frozen=True)
class RankBackend:
    """Rank policy: numeric SVD thresholding, exact elimination, or auto.

    `auto` uses exact arithmetic whenever all entries are small dyadic
    rationals and falls back to the numeric path otherwise.
    """

    mode: str = "auto"
    tol: float | None = None

    def resolved_tol(self) -> float:
        return default_tol() if self.tol is None else self.tol


AUTO = RankBackend("auto")
NUMERIC = RankBackend("numeric")
EXACT = RankBackend("exact")


def numerical_rank(m, backend: RankBackend = AUTO) -> int:
    """Rank of a complex matrix under the chosen backend."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        raise BadPartition("empty matrix")
    mode = backend.mode
    if mode == "auto":
        mode = "exact" if exact.is_dyadic_exact(m) else "numeric"
    if mode == "exact":
        return exact.exact_matrix_rank(m)
    if mode != "numeric":
        raise ExactModeOnInexactInput(f"unknown backend mode {backend.mode!r}")
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    cutoff = backend.resolved_tol() * sv[0] * math.sqrt(max(m.shape))
    return int(np.sum(sv > cutoff))


def enumerate_partitions(n: int, ell: int) -> list[tuple[int, ...]]:
    """All C(n, ell) ordered party subsets at level ell, lexicographically."""
    if not 1 <= ell <= n - 1:
        raise BadEll(f"need 1 <= ell <= {n - 1}, got {ell}")
    return [tuple(c) for c in combinations(range(1, n + 1), ell)]


def matricize(s: PureState, parties) -> np.ndarray:
    """Flatten the state along the given party subset (rows) vs the rest (cols)."""
    return _flatten_by(s, parties)


def partition_complement(parties, n: int) -> tuple[int, ...]:
    parties = _check_partition(parties, n)
    return tuple(i for i in range(1, n + 1) if i not in parties)


@dataclass(frozen=True)
class MultirankSignature:
    """Flattening ranks over every partition at one level."""

    ell: int
    ranks: tuple[tuple[tuple[int, ...], int], ...]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.ranks)

    def canonical(self, n: int) -> tuple[int, ...]:
        """Ranks with complement-duplicates dropped (keep subsets holding party 1)."""
        if 2 * self.ell != n:
            return tuple(r for _, r in self.ranks)
        return tuple(r for parts, r in self.ranks if 1 in parts)

    def signature_string(self, n: int) -> str:
        vals = self.canonical(n)
        if all(v < 10 for v in vals):
            return "(" + "".join(str(v) for v in vals) + ")"
        return "(" + ",".join(str(v) for v in vals) + ")"


def multirank(s: PureState, ell: int, backend: RankBackend = AUTO) -> MultirankSignature:
    """Flattening ranks for all partitions at level ell."""
    n = s.n
    if not 1 <= ell <= n - 1:
        raise BadEll(f"need 1 <= ell <= {n - 1}, got {ell}")
    if ell > n // 2:
        warnings.warn(
            f"ell={ell} exceeds n/2; ranks repeat those of the complements",
            stacklevel=2,
        )
    entries = []
    for parts in enumerate_partitions(n, ell):
        entries.append((parts, numerical_rank(matricize(s, parts), backend)))
    return MultirankSignature(ell, tuple(entries))


def one_multirank(s: PureState, backend: RankBackend = AUTO) -> tuple[int, ...]:
    return multirank(s, 1, backend).canonical(s.n)


def two_multirank(s: PureState, backend: RankBackend = AUTO) -> tuple[int, ...]:
    return multirank(s, 2, backend).canonical(s.n)


# -- the 3x3x3 exterior flattening ------------------------------------------------

def koszul_flattening_3qutrit(s: PureState) -> np.ndarray:
    """The 9x9 antisymmetrized flattening of a three-qutrit state.

    Built from the first-party slices S_i (3x3 each) in the block pattern
    [[0, -S0, S1], [S0, 0, -S2], [-S1, S2, 0]].  The overall sign fixes the
    wedge-basis orientation so that det F = 2t(1-t) on the five-secant
    test family; rank and secant index are sign-independent.
    """
    if s.shape != (3, 3, 3):
        raise WrongShape(f"need shape (3, 3, 3), got {s.shape}")
    s0, s1, s2 = s.array[0], s.array[1], s.array[2]
    z = np.zeros((3, 3), dtype=complex)
    return np.block([[z, -s0, s1], [s0, z, -s2], [-s1, s2, z]])


def koszul_rank(s: PureState, backend: RankBackend = AUTO) -> int:
    return numerical_rank(koszul_flattening_3qutrit(s), backend)


def koszul_secant_index(s: PureState, backend: RankBackend = AUTO) -> int:
    """ceil(rank F / 2): the secant family a three-qutrit state belongs to."""
    return -(-koszul_rank(s, backend) // 2)


def koszul_det(s: PureState) -> complex:
    """Determinant of the 9x9 flattening; exact when the state allows it."""
    f = koszul_flattening_3qutrit(s)
    if exact.is_dyadic_exact(f):
        return exact.exact_det(exact.qc_matrix(f)).to_complex()
    return complex(np.linalg.det(f))


# -- bipartite tools ---------------------------------------------------------------

def schmidt_coefficients(s: PureState) -> np.ndarray:
    """Squared singular values of the bipartite flattening, normalized, descending."""
    if s.n != 2:
        raise NotBipartite(f"state has {s.n} parties")
    sv = np.linalg.svd(matricize(s, (1,)), compute_uv=False)
    lam = sv**2
    total = lam.sum()
    if total == 0:
        raise NotDistribution("zero state has no Schmidt coefficients")
    return np.sort(lam / total)[::-1]


def majorizes(x, y, tol: float = 1e-9) -> bool:
    """True iff x is majorized by y (x precedes y in the majorization order)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    for v in (x, y):
        if v.min() < -tol or abs(v.sum() - 1.0) > tol:
            raise NotDistribution(f"{v} is not a probability vector")
    d = max(x.size, y.size)
    x = np.sort(np.pad(x, (0, d - x.size)))[::-1]
    y = np.sort(np.pad(y, (0, d - y.size)))[::-1]
    cx = np.cumsum(x)
    cy = np.cumsum(y)
    return bool(np.all(cx <= cy + 1e-12))


def nielsen_convertible(src: PureState, dst: PureState) -> bool:
    """Deterministic LOCC convertibility of bipartite states."""
    return majorizes(schmidt_coefficients(src), schmidt_coefficients(dst))
