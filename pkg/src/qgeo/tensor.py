"""Dense complex state tensors and the local (per-party) operations on them.

A pure n-party state is an order-n complex tensor, stored C-ordered so the
last party index varies fastest.  States are never auto-normalized: every
quantity computed downstream is scale-invariant, and the few density-matrix
based measures normalize internally.  All values are immutable after
construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .exact import is_dyadic_exact
from .exceptions import (
    BadLength,
    BadMode,
    BadPartition,
    DimMismatch,
    EmptyShape,
    NotAPermutation,
    NotDensityMatrix,
    PartyCountMismatch,
    ShapeMismatch,
)

ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    """Unnormalized pure state of an n-party system.

    `shape` lists the per-party dimensions (d1, ..., dn); `array` holds the
    amplitudes as an ndarray of that shape.
    """

    shape: tuple[int, ...]
    array: np.ndarray

    def __post_init__(self):
        if len(self.shape) == 0:
            raise EmptyShape("state needs at least one party")
        if any(d < 1 for d in self.shape):
            raise EmptyShape(f"non-positive dimension in shape {self.shape}")
        arr = np.ascontiguousarray(self.array, dtype=complex)
        if arr.shape != self.shape:
            arr = arr.reshape(self.shape)
        arr.flags.writeable = False
        object.__setattr__(self, "array", arr)
        object.__setattr__(self, "shape", tuple(int(d) for d in self.shape))

    @property
    def n(self) -> int:
        return len(self.shape)

    @property
    def amps(self) -> np.ndarray:
        """Flat amplitude vector, last party index fastest."""
        return self.array.reshape(-1)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.array))

    @property
    def is_zero(self) -> bool:
        return not np.any(self.array)

    @property
    def is_gaussian_integer(self) -> bool:
        a = self.amps
        return bool(
            np.all(a.real == np.round(a.real)) and np.all(a.imag == np.round(a.imag))
        )

    def is_dyadic(self) -> bool:
        """True when every amplitude is a small dyadic rational (exact-safe)."""
        return is_dyadic_exact(self.amps)

    def normalized(self) -> "PureState":
        nrm = self.norm
        if nrm == 0:
            return self
        return PureState(self.shape, self.array / nrm)

    def __repr__(self) -> str:
        nnz = int(np.count_nonzero(self.array))
        return f"PureState(shape={list(self.shape)}, nnz={nnz})"


@dataclass(frozen=True, eq=False)
class LocalOperator:
    """A linear map acting on a single party; need not be square or invertible."""

    rows: int
    cols: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.shape != (self.rows, self.cols):
            raise ShapeMismatch(
                f"operator entries {m.shape} do not match ({self.rows}, {self.cols})"
            )
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, m) -> "LocalOperator":
        m = np.asarray(m, dtype=complex)
        return cls(m.shape[0], m.shape[1], m)

    @classmethod
    def identity(cls, d: int) -> "LocalOperator":
        return cls(d, d, np.eye(d, dtype=complex))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian PSD matrix; trace equals the squared norm of its source state."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise NotDensityMatrix(f"expected {self.dim}x{self.dim}, got {m.shape}")
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.conj().T).max() > 1e-9 * scale:
            raise NotDensityMatrix("matrix is not Hermitian")
        evals = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if evals.min() < -1e-9 * scale:
            raise NotDensityMatrix("matrix is not positive semidefinite")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def normalized(self) -> "DensityMatrix":
        t = self.trace
        if t == 0:
            return self
        return DensityMatrix(self.dim, self.matrix / t)


# -- constructors -------------------------------------------------------------

def make_tensor(shape, amps) -> PureState:
    """Build a validated state from a dimension list and flat amplitudes."""
    shape = tuple(int(d) for d in shape)
    if len(shape) == 0:
        raise EmptyShape("empty shape")
    if any(d < 1 for d in shape):
        raise EmptyShape(f"non-positive dimension in {shape}")
    amps = np.asarray(amps, dtype=complex).reshape(-1)
    total = int(np.prod(shape))
    if amps.size != total:
        raise ShapeMismatch(f"{amps.size} amplitudes for shape {shape} (need {total})")
    return PureState(shape, amps.reshape(shape))


def basis_state(shape, index) -> PureState:
    """Computational basis vector |i1 ... in>."""
    arr = np.zeros(tuple(shape), dtype=complex)
    arr[tuple(index)] = 1.0
    return PureState(tuple(shape), arr)


def zero_state(shape) -> PureState:
    return PureState(tuple(shape), np.zeros(tuple(shape), dtype=complex))


# -- products and sums ---------------------------------------------------------

def tensor_product(a: PureState, b: PureState) -> PureState:
    """Tensor product: an (na+nb)-party state."""
    arr = np.tensordot(a.array, b.array, axes=0)
    return PureState(a.shape + b.shape, arr)


def kronecker_product(a: PureState, b: PureState) -> PureState:
    """Kronecker product: party counts align, per-party indices fuse.

    The factor with fewer parties is padded with trivial dimension-1 parties
    on the right; fused index is k = j*d' + j' (left factor major).
    """
    if a.n < b.n:
        a = tensor_product(a, PureState((1,) * (b.n - a.n),
                                        np.ones((1,) * (b.n - a.n), dtype=complex)))
    elif b.n < a.n:
        b = tensor_product(b, PureState((1,) * (a.n - b.n),
                                        np.ones((1,) * (a.n - b.n), dtype=complex)))
    n = a.n
    arr = np.tensordot(a.array, b.array, axes=0)
    # order axes as (a1, b1, a2, b2, ...) then merge adjacent pairs
    perm = [None] * (2 * n)
    perm[0::2] = range(n)
    perm[1::2] = range(n, 2 * n)
    arr = arr.transpose(perm)
    new_shape = tuple(da * db for da, db in zip(a.shape, b.shape))
    return PureState(new_shape, arr.reshape(new_shape))


def direct_sum(a: PureState, b: PureState) -> PureState:
    """Direct sum: each party dimension adds, cross blocks are zero."""
    if a.n != b.n:
        raise PartyCountMismatch(f"{a.n} parties vs {b.n}")
    shape = tuple(da + db for da, db in zip(a.shape, b.shape))
    arr = np.zeros(shape, dtype=complex)
    arr[tuple(slice(0, d) for d in a.shape)] = a.array
    arr[tuple(slice(da, da + db) for da, db in zip(a.shape, b.shape))] = b.array
    return PureState(shape, arr)


def direct_sum_block(s: PureState, split, which: int) -> PureState:
    """Project a direct-sum state back onto its leading (0) or trailing (1) block."""
    if which == 0:
        sel = tuple(slice(0, d) for d in split)
    else:
        sel = tuple(slice(d, full) for d, full in zip(split, s.shape))
    return PureState(tuple(x.stop - x.start for x in sel), s.array[sel])


# -- local actions --------------------------------------------------------------

def apply_local(ops, s: PureState) -> PureState:
    """Apply one operator per party: (A1 (x) ... (x) An) |s>."""
    ops = list(ops)
    if len(ops) != s.n:
        raise PartyCountMismatch(f"{len(ops)} operators for {s.n} parties")
    arr = s.array
    for i, op in enumerate(ops):
        mat = op.matrix if isinstance(op, LocalOperator) else np.asarray(op, dtype=complex)
        if mat.shape[1] != s.shape[i]:
            raise DimMismatch(
                f"party {i + 1}: operator has {mat.shape[1]} columns, dimension is {s.shape[i]}"
            )
        arr = np.moveaxis(np.tensordot(mat, arr, axes=([1], [i])), 0, i)
    return PureState(arr.shape, arr)


def contract_mode(mode: int, f, s: PureState) -> PureState:
    """Contract party `mode` (1-based) with the covector f: sum_j f_j slice_j."""
    if not 1 <= mode <= s.n:
        raise BadMode(f"party {mode} of {s.n}")
    f = np.asarray(f, dtype=complex).reshape(-1)
    if f.size != s.shape[mode - 1]:
        raise BadLength(f"covector length {f.size}, dimension {s.shape[mode - 1]}")
    if s.n == 1:
        val = np.tensordot(f, s.array, axes=([0], [0]))
        return PureState((1,), np.array([val], dtype=complex))
    arr = np.tensordot(f, s.array, axes=([0], [mode - 1]))
    return PureState(arr.shape, arr)


def permute_parties(perm, s: PureState) -> PureState:
    """Reorder parties; perm is 1-based, new party k is old party perm[k-1]."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(1, s.n + 1)):
        raise NotAPermutation(f"{perm} is not a permutation of 1..{s.n}")
    axes = [p - 1 for p in perm]
    arr = s.array.transpose(axes)
    return PureState(tuple(s.shape[i] for i in axes), arr)


def _check_partition(keep, n: int):
    keep = tuple(int(i) for i in keep)
    if len(keep) == 0 or len(keep) >= n + 1:
        raise BadPartition(f"bad party subset {keep}")
    if any(not 1 <= i <= n for i in keep) or list(keep) != sorted(set(keep)):
        raise BadPartition(f"party subset must be strictly increasing in 1..{n}: {keep}")
    return keep


def _flatten_by(s: PureState, keep) -> np.ndarray:
    keep = _check_partition(keep, s.n)
    rest = tuple(i for i in range(1, s.n + 1) if i not in keep)
    axes = [i - 1 for i in keep] + [i - 1 for i in rest]
    rows = int(np.prod([s.shape[i - 1] for i in keep]))
    return s.array.transpose(axes).reshape(rows, -1)


def partial_trace(s: PureState, keep) -> DensityMatrix:
    """Reduced density matrix on the kept parties (unnormalized: trace = |s|^2)."""
    m = _flatten_by(s, keep)
    rho = m @ m.conj().T
    return DensityMatrix(rho.shape[0], rho)


# -- JSON state files ------------------------------------------------------------

def _emit_number(x: float):
    return int(x) if float(x).is_integer() else float(x)


def state_to_json(s: PureState) -> str:
    payload = {
        "shape": list(s.shape),
        "amps": [[_emit_number(z.real), _emit_number(z.imag)] for z in s.amps],
    }
    return json.dumps(payload)


def save_state(s: PureState, path: str):
    with open(path, "w") as fh:
        fh.write(state_to_json(s))


def state_from_json(text: str) -> PureState:
    data = json.loads(text)
    amps = [complex(re, im) for re, im in data["amps"]]
    return make_tensor(data["shape"], amps)


def load_state(path: str) -> PureState:
    with open(path) as fh:
        return state_from_json(fh.read())


def states_allclose(a: PureState, b: PureState, tol: float = ATOL) -> bool:
    if a.shape != b.shape:
        return False
    scale = max(1.0, float(np.abs(a.array).max()), float(np.abs(b.array).max()))
    return bool(np.abs(a.array - b.array).max() <= tol * scale)
