"""Scalar entanglement measures and closed-form rank/dimension formulas."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import BadAlpha, BadDims, BadL, BadPartition, WrongDim, WrongShape
from .flatten import matricize
from .tensor import DensityMatrix, PureState, partial_trace

_SY2 = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
                dtype=complex)  # sigma_y (x) sigma_y


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Two-qubit mixed-state concurrence max(0, sqrt(l1)-sqrt(l2)-sqrt(l3)-sqrt(l4))."""
    if rho.dim != 4:
        raise WrongDim(f"need a 4x4 density matrix, got dim {rho.dim}")
    r = rho.normalized().matrix
    r_tilde = _SY2 @ r.conj() @ _SY2
    evals = np.linalg.eigvals(r @ r_tilde)
    evals = np.sort(np.abs(evals.real))[::-1]
    roots = np.sqrt(evals)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def generalized_concurrence(s: PureState, cut) -> float:
    """sqrt(2 (1 - tr rho_cut^2)) for the normalized state."""
    if s.is_zero:
        raise BadPartition("zero state")
    sn = s.normalized()
    rho = partial_trace(sn, cut).matrix
    purity = float(np.trace(rho @ rho).real)
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity)))


def concurrence_vector(s: PureState) -> tuple[float, float, float]:
    """(C_AB, C_AC, C_BC) of a three-qubit state; C_AB traces out party 3."""
    if s.shape != (2, 2, 2):
        raise WrongShape(f"need shape (2, 2, 2), got {s.shape}")
    sn = s.normalized()
    out = []
    for keep in ((1, 2), (1, 3), (2, 3)):
        out.append(wootters_concurrence(partial_trace(sn, keep)))
    return tuple(out)


def tangle_3qubit(s: PureState) -> float:
    """tau = C^2_{A(BC)} - C^2_AB - C^2_AC, clamped to [0, 1]."""
    if s.shape != (2, 2, 2):
        raise WrongShape(f"need shape (2, 2, 2), got {s.shape}")
    c_a_bc = generalized_concurrence(s, (1,))
    c_ab, c_ac, _ = concurrence_vector(s)
    tau = c_a_bc**2 - c_ab**2 - c_ac**2
    return float(min(1.0, max(0.0, tau)))


def hyperdeterminant_2x2x2(s: PureState) -> complex:
    """Cayley hyperdeterminant of a 2x2x2 tensor (tau = 4|Det| on unit states)."""
    if s.shape != (2, 2, 2):
        raise WrongShape(f"need shape (2, 2, 2), got {s.shape}")
    c = s.array
    d1 = (c[0, 0, 0] ** 2 * c[1, 1, 1] ** 2 + c[0, 0, 1] ** 2 * c[1, 1, 0] ** 2
          + c[0, 1, 0] ** 2 * c[1, 0, 1] ** 2 + c[0, 1, 1] ** 2 * c[1, 0, 0] ** 2)
    d2 = (c[0, 0, 0] * c[0, 0, 1] * c[1, 1, 0] * c[1, 1, 1]
          + c[0, 0, 0] * c[0, 1, 0] * c[1, 0, 1] * c[1, 1, 1]
          + c[0, 0, 0] * c[0, 1, 1] * c[1, 0, 0] * c[1, 1, 1]
          + c[0, 0, 1] * c[0, 1, 0] * c[1, 0, 1] * c[1, 1, 0]
          + c[0, 0, 1] * c[0, 1, 1] * c[1, 1, 0] * c[1, 0, 0]
          + c[0, 1, 0] * c[0, 1, 1] * c[1, 0, 1] * c[1, 0, 0])
    d3 = (c[0, 0, 0] * c[0, 1, 1] * c[1, 0, 1] * c[1, 1, 0]
          + c[0, 0, 1] * c[0, 1, 0] * c[1, 0, 0] * c[1, 1, 1])
    return complex(d1 - 2 * d2 + 4 * d3)


# -- counting formulas -------------------------------------------------------------

@dataclass(frozen=True)
class FormulaResult:
    """Integer formula output plus, when applicable, the exception branch taken."""

    value: int
    exceptional: bool = False
    note: str = ""
    conjecture: bool = False

    def __int__(self):
        return self.value


def generic_rank(dims) -> FormulaResult:
    """Expected generic tensor rank ceil(prod d / (sum (d-1) + 1)), with exceptions."""
    dims = tuple(int(d) for d in dims)
    if len(dims) < 3 or any(d < 2 for d in dims):
        raise BadDims(f"need n >= 3 parties of dimension >= 2, got {dims}")
    expected = -(-int(np.prod(dims)) // (sum(d - 1 for d in dims) + 1))
    key = tuple(sorted(dims, reverse=True))
    exceptional = None
    if key == (4, 4, 3):
        exceptional = "4x4x3"
    elif len(key) == 3 and key[2] == 3 and key[0] == key[1] and key[0] % 2 == 1:
        exceptional = f"{key[0]}x{key[0]}x3"
    elif (len(key) == 4 and key[2] == 2 and key[3] == 2 and key[0] == key[1]
          and key[0] >= 3):
        exceptional = f"{key[0]}x{key[0]}x2x2"
    if exceptional:
        return FormulaResult(expected + 1, True, exceptional, conjecture=True)
    return FormulaResult(expected, False, "", conjecture=True)


def tripartite_generic_rank(d: int) -> FormulaResult:
    """ceil(d^3 / (3d - 2)); d = 3 is the defective case with rank five."""
    if d < 2:
        raise BadDims(f"need d >= 2, got {d}")
    if d == 3:
        return FormulaResult(5, True, "3x3x3 defective")
    return FormulaResult(-(-d**3 // (3 * d - 2)))


def qubit_family_count(n: int) -> int:
    """Number of secant families for n qubits: ceil(2^n / (n+1))."""
    if n < 2:
        raise BadDims(f"need n >= 2, got {n}")
    return -(-(2**n) // (n + 1))


def expected_secant_dim(k: int, dims) -> FormulaResult:
    """Projective dimension min(ks + k - 1, prod d - 1) of the k-th secant."""
    dims = tuple(int(d) for d in dims)
    if k < 1:
        raise BadDims(f"need k >= 1, got {k}")
    s = sum(d - 1 for d in dims)
    ambient = int(np.prod(dims)) - 1
    if k == 3 and dims == (2, 2, 2, 2):
        return FormulaResult(13, True, "sigma_3 of four qubits is defective")
    return FormulaResult(min(k * s + k - 1, ambient))


def symmetric_generic_rank(n: int, d: int) -> FormulaResult:
    """Generic symmetric rank in Sym^n C^d (degree-n forms in d variables)."""
    if n < 2 or d < 2:
        raise BadDims(f"need n, d >= 2, got n={n}, d={d}")
    if n == 2:
        return FormulaResult(d, True, "quadrics")
    expected = -(-math.comb(n + d - 1, n) // d)
    if (n, d) in {(3, 5), (4, 3), (4, 4), (4, 5)}:
        return FormulaResult(expected + 1, True, f"defective pair (n, d)=({n}, {d})")
    return FormulaResult(expected)


def _check_alpha(alpha):
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) < 2 or any(a < 1 for a in alpha) or list(alpha) != sorted(alpha):
        raise BadAlpha(f"exponents must be >= 1 and ascending, got {alpha}")
    return alpha


def waring_rank_monomial(alpha) -> int:
    """Waring rank of x0^a0 ... x_{d-1}^a_{d-1}: prod_(i >= 1) (a_i + 1)."""
    alpha = _check_alpha(alpha)
    out = 1
    for a in alpha[1:]:
        out *= a + 1
    return out


def waring_brank_monomial(alpha) -> FormulaResult:
    """Symmetric border rank of a monomial: prod_(i <= d-2) (a_i + 1); conjectural."""
    alpha = _check_alpha(alpha)
    out = 1
    for a in alpha[:-1]:
        out *= a + 1
    return FormulaResult(out, conjecture=True)


def dicke_rank_brank(n: int, l: int) -> tuple[int, int]:
    """(rank, border rank) of the n-qubit Dicke state with l excitations."""
    if not 1 <= l <= n - 1:
        raise BadL(f"need 1 <= l <= n-1, got l={l}, n={n}")
    if l > n // 2:
        l = n - l
    return (n - l + 1, l + 1)


def schmidt_coefficients_cut(s: PureState, cut) -> np.ndarray:
    """Squared singular values across an arbitrary bipartition, normalized."""
    m = matricize(s, cut)
    sv = np.linalg.svd(m, compute_uv=False)
    lam = sv**2
    return np.sort(lam / lam.sum())[::-1]
