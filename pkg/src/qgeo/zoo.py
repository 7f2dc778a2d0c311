"""Constructors for the named states used throughout the package.

Everything here is emitted with exact small-integer (or half-integer)
amplitudes so that the exact rank backend applies; normalization prefactors
are dropped on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from .exceptions import BadParams, UnknownKind, UnknownRow
from .tensor import PureState, make_tensor, permute_parties, tensor_product


def _empty(shape) -> np.ndarray:
    return np.zeros(tuple(shape), dtype=complex)


def ghz(d: int, n: int) -> PureState:
    """|0...0> + |1...1> + ... + |d-1 ... d-1> on n parties."""
    if d < 2 or n < 2:
        raise BadParams("ghz needs d >= 2, n >= 2")
    arr = _empty([d] * n)
    for j in range(d):
        arr[(j,) * n] = 1
    return PureState((d,) * n, arr)


def ghz_excited(d: int, n: int, zeta: int, levels=None) -> PureState:
    """Superposition of zeta+1 distinct product powers |a_i>^n inside dimension d."""
    if not 1 <= zeta <= d - 1:
        raise BadParams(f"need 1 <= zeta <= d-1, got zeta={zeta}, d={d}")
    if levels is None:
        levels = tuple(range(zeta + 1))
    levels = tuple(int(a) for a in levels)
    if len(set(levels)) != zeta + 1 or any(not 0 <= a < d for a in levels):
        raise BadParams(f"levels {levels} must be zeta+1 distinct values in 0..d-1")
    arr = _empty([d] * n)
    for a in levels:
        arr[(a,) * n] = 1
    return PureState((d,) * n, arr)


def w(n: int, d: int = 2, alpha: int = 0, beta: int = 1) -> PureState:
    """Sum of the n strings with one `beta` among `alpha`s (the W pattern)."""
    if n < 2 or d < 2 or alpha == beta or not (0 <= alpha < d and 0 <= beta < d):
        raise BadParams("w needs n >= 2 and distinct levels inside 0..d-1")
    arr = _empty([d] * n)
    for pos in range(n):
        idx = [alpha] * n
        idx[pos] = beta
        arr[tuple(idx)] = 1
    return PureState((d,) * n, arr)


def dicke(n: int, l: int) -> PureState:
    """Qubit Dicke state with l excitations, one unit amplitude per string."""
    if not 0 <= l <= n:
        raise BadParams(f"need 0 <= l <= n, got l={l}, n={n}")
    arr = _empty([2] * n)
    for ones in combinations(range(n), l):
        idx = [0] * n
        for p in ones:
            idx[p] = 1
        arr[tuple(idx)] = 1
    return PureState((2,) * n, arr)


def dicke_qudit(n: int, excitations) -> PureState:
    """Qudit Dicke state: excitations = (j_1, ..., j_d) with sum n."""
    js = tuple(int(j) for j in excitations)
    if any(j < 0 for j in js) or sum(js) != n:
        raise BadParams(f"excitations {js} must be non-negative and sum to {n}")
    d = len(js)
    word = []
    for level, j in enumerate(js):
        word.extend([level] * j)
    arr = _empty([d] * n)
    for perm in set(permutations(word)):
        arr[perm] = 1
    return PureState((d,) * n, arr)


def bell(kind: str = "phi+") -> PureState:
    pairs = {
        "phi+": [(0, 0, 1), (1, 1, 1)],
        "phi-": [(0, 0, 1), (1, 1, -1)],
        "psi+": [(0, 1, 1), (1, 0, 1)],
        "psi-": [(0, 1, 1), (1, 0, -1)],
    }
    if kind not in pairs:
        raise BadParams(f"unknown Bell state {kind!r}")
    arr = _empty([2, 2])
    for i, j, c in pairs[kind]:
        arr[i, j] = c
    return PureState((2, 2), arr)


def cluster4(i: int = 1) -> PureState:
    """The three four-qubit cluster states (half-integer amplitudes)."""
    terms = {
        1: ["0000", "0011", "1100"],
        2: ["0000", "0101", "1010"],
        3: ["0000", "0110", "1001"],
    }
    if i not in terms:
        raise BadParams("cluster index must be 1, 2 or 3")
    arr = _empty([2] * 4)
    for word in terms[i]:
        arr[tuple(int(c) for c in word)] = 0.5
    arr[(1, 1, 1, 1)] = -0.5
    return PureState((2,) * 4, arr)


def l_state(d: int, n: int) -> PureState:
    """All basis strings whose levels sum to d-1."""
    if d < 2 or n < 2:
        raise BadParams("l needs d >= 2, n >= 2")
    arr = _empty([d] * n)
    for idx in np.ndindex(*([d] * n)):
        if sum(idx) == d - 1:
            arr[idx] = 1
    return PureState((d,) * n, arr)


def y_state(n: int) -> PureState:
    """The symmetric qutrit family member: y(n) = l(3, n)."""
    return l_state(3, n)


def m_state(d: int, n: int) -> PureState:
    """W-type top-level terms plus all (j, d-1-j) middle pairs."""
    if d < 2 or n < 2:
        raise BadParams("m needs d >= 2, n >= 2")
    arr = _empty([d] * n)
    for pos in range(n):
        idx = [0] * n
        idx[pos] = d - 1
        arr[tuple(idx)] = 1
    for a in range(n):
        for b in range(a + 1, n):
            for j in range(1, d - 1):
                idx = [0] * n
                idx[a] = j
                idx[b] = d - 1 - j
                arr[tuple(idx)] = 1
    return PureState((d,) * n, arr)


def mprime_state(d: int, n: int) -> PureState:
    """Basis-rotated version of m: middle pairs sit at equal levels (j, j)."""
    if d < 3 or n < 2:
        raise BadParams("mprime needs d >= 3, n >= 2")
    arr = _empty([d] * n)
    for pos in range(n):
        idx = [0] * n
        idx[pos] = d - 1
        arr[tuple(idx)] = 1
    for a in range(n):
        for b in range(a + 1, n):
            for j in range(1, d - 1):
                idx = [0] * n
                idx[a] = j
                idx[b] = j
                arr[tuple(idx)] = 1
    return PureState((d,) * n, arr)


def m_basis_change(d: int) -> np.ndarray:
    """Single-party map sending m(d, n) to mprime(d, n) when applied to all parties."""
    b = np.eye(d, dtype=complex)
    for j in range(1, (d - 2) // 2 + 1):
        k = d - 1 - j
        b[:, j] = 0
        b[:, k] = 0
        b[j, j] = 1 / np.sqrt(2)
        b[k, j] = 1j / np.sqrt(2)
        b[j, k] = 1 / np.sqrt(2)
        b[k, k] = -1j / np.sqrt(2)
    return b


def n_state(d: int, n: int) -> PureState:
    """Asymmetric family: pairs (j, d-1-j) always end on the last party."""
    if d < 2 or n < 2:
        raise BadParams("n-state needs d >= 2, n >= 2")
    arr = _empty([d] * n)
    idx = [0] * n
    idx[-1] = d - 1
    arr[tuple(idx)] = 1
    for pos in range(n - 1):
        for j in range(1, d):
            idx = [0] * n
            idx[pos] = j
            idx[-1] = d - 1 - j
            arr[tuple(idx)] = 1
    return PureState((d,) * n, arr)


def nprime_state(d: int, n: int) -> PureState:
    """n-state after the level flip j -> d-1-j on the last party."""
    s = n_state(d, n)
    flip = np.zeros((d, d), dtype=complex)
    for j in range(d):
        flip[d - 1 - j, j] = 1
    arr = np.tensordot(s.array, flip.T, axes=([s.n - 1], [0]))
    return PureState(s.shape, arr)


def x3(alpha: int = 0, beta: int = 1, gamma: int = 2) -> PureState:
    """Qutrit W plus an independent cube: w + |ggg>."""
    if len({alpha, beta, gamma}) != 3 or not all(0 <= v < 3 for v in (alpha, beta, gamma)):
        raise BadParams("x3 needs three distinct levels in 0..2")
    s = w(3, d=3, alpha=alpha, beta=beta)
    arr = s.array.copy()
    arr[(gamma,) * 3] += 1
    return PureState(s.shape, arr)


def g3() -> PureState:
    """Full three-level diagonal plus the all-ones cube."""
    arr = ghz(3, 3).array.copy()
    omega = np.ones((3, 3, 3), dtype=complex)
    return PureState((3, 3, 3), arr + omega)


def g3_t(t: complex) -> PureState:
    """g3 plus t (|1>+|2>)(|0>+|2>)(|0>+|1>); five-secant iff t not in {0, 1}."""
    u1 = np.array([0, 1, 1], dtype=complex)
    u2 = np.array([1, 0, 1], dtype=complex)
    u3 = np.array([1, 1, 0], dtype=complex)
    extra = t * np.einsum("i,j,k->ijk", u1, u2, u3)
    return PureState((3, 3, 3), g3().array + extra)


def m_general(n: int, r: int, coeffs=(1, 1, 1)) -> PureState:
    """GHZ_n plus a single mixed word |0^r 1^(n-r)> (three-secant family)."""
    if not 2 <= r <= n - 2:
        raise BadParams(f"need 2 <= r <= n-2, got r={r}")
    a, b, c = coeffs
    arr = _empty([2] * n)
    arr[(0,) * n] = a
    arr[(1,) * n] = c
    arr[tuple([0] * r + [1] * (n - r))] = b
    return PureState((2,) * n, arr)


def n_general(n: int, t: int, word=None) -> PureState:
    """W_n plus a single weight-t word (tangent of the three-secant family)."""
    if not 2 <= t <= n:
        raise BadParams(f"need 2 <= t <= n, got t={t}")
    if word is None:
        word = [1] * t + [0] * (n - t)
    if len(word) != n or sum(word) != t:
        raise BadParams(f"word {word} must have length {n} and weight {t}")
    s = w(n)
    arr = s.array.copy()
    arr[tuple(word)] += 1
    return PureState(s.shape, arr)


def g_general(n: int, r: int, coeffs=(1, 1, 1, 2)) -> PureState:
    """Four-point superposition generalizing a|00>+b|01>+c|10>+d|11>."""
    if not 2 <= r <= n - 2:
        raise BadParams(f"need 2 <= r <= n-2, got r={r}")
    a, b, c, d = coeffs
    arr = _empty([2] * n)
    arr[(0,) * n] += a
    arr[tuple([0] * r + [1] * (n - r))] += b
    arr[tuple([1] * r + [0] * (n - r))] += c
    arr[(1,) * n] += d
    return PureState((2,) * n, arr)


def nonsymmetric_persistent(alpha: complex = 1, beta: complex = 1, sign: int = 1) -> PureState:
    """Four-qubit state whose generic first-party contractions are all W-class."""
    if alpha == 0 or beta == 0:
        raise BadParams("alpha and beta must be non-zero")
    arr = _empty([2] * 4)
    arr[0, 0, 1, 1] = alpha**2
    arr[0, 1, 0, 1] = beta**2
    arr[0, 1, 1, 0] = (alpha + sign * beta) ** 2
    arr[1, 0, 0, 1] = 1
    arr[1, 0, 1, 0] = 1
    arr[1, 1, 0, 0] = 1
    return PureState((2,) * 4, arr)


def separable_ramp(n: int, eps: complex) -> PureState:
    """(|0> + eps |1>)^n, the curve whose expansion walks the Dicke ladder."""
    vec = np.array([1, eps], dtype=complex)
    arr = vec
    for _ in range(n - 1):
        arr = np.tensordot(arr, vec, axes=0)
    return PureState((2,) * n, arr.reshape((2,) * n))


def product_state(vectors) -> PureState:
    """Tensor product of single-party vectors."""
    vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    arr = vecs[0]
    for v in vecs[1:]:
        arr = np.tensordot(arr, v, axes=0)
    return PureState(tuple(v.size for v in vecs), arr)


@dataclass(frozen=True)
class StateKind:
    """A named-state request: constructor key plus its parameters."""

    name: str
    params: dict = field(default_factory=dict)


_KINDS = {
    "ghz": lambda p: ghz(p.get("d", 2), p["n"]),
    "ghz_excited": lambda p: ghz_excited(p["d"], p["n"], p["zeta"], p.get("levels")),
    "w": lambda p: w(p["n"], p.get("d", 2), p.get("alpha", 0), p.get("beta", 1)),
    "dicke": lambda p: dicke(p["n"], p["l"]),
    "dicke_qudit": lambda p: dicke_qudit(p["n"], p["excitations"]),
    "bell": lambda p: bell(p.get("kind", "phi+")),
    "cluster4": lambda p: cluster4(p.get("i", 1)),
    "l": lambda p: l_state(p["d"], p["n"]),
    "y": lambda p: y_state(p["n"]),
    "m": lambda p: m_state(p["d"], p["n"]),
    "mprime": lambda p: mprime_state(p["d"], p["n"]),
    "n": lambda p: n_state(p["d"], p["n"]),
    "nprime": lambda p: nprime_state(p["d"], p["n"]),
    "x3": lambda p: x3(p.get("alpha", 0), p.get("beta", 1), p.get("gamma", 2)),
    "g3": lambda p: g3(),
    "g3_t": lambda p: g3_t(p["t"]),
    "m_general": lambda p: m_general(p["n"], p["r"], p.get("coeffs", (1, 1, 1))),
    "n_general": lambda p: n_general(p["n"], p["t"], p.get("word")),
    "g_general": lambda p: g_general(p["n"], p["r"], p.get("coeffs", (1, 1, 1, 2))),
    "nonsymmetric_persistent": lambda p: nonsymmetric_persistent(
        p.get("alpha", 1), p.get("beta", 1), p.get("sign", 1)
    ),
    "separable_ramp": lambda p: separable_ramp(p["n"], p["eps"]),
}


def make_named(kind: StateKind | str, **params) -> PureState:
    """Dispatch to a named constructor; raises UnknownKind / BadParams."""
    if isinstance(kind, StateKind):
        name, params = kind.name, dict(kind.params)
    else:
        name = kind
    name = name.lower()
    if name not in _KINDS:
        raise UnknownKind(f"no constructor named {name!r}")
    try:
        return _KINDS[name](params)
    except KeyError as exc:
        raise BadParams(f"missing parameter {exc} for kind {name!r}") from exc


def kind_names() -> list[str]:
    return sorted(_KINDS)


# -- table exemplars ------------------------------------------------------------

def _qubit_word(word: str, coeff=1) -> PureState:
    arr = _empty([2] * len(word))
    arr[tuple(int(c) for c in word)] = coeff
    return PureState((2,) * len(word), arr)


def _sum_words(n: int, d: int, words, coeffs=None) -> PureState:
    arr = _empty([d] * n)
    for k, word in enumerate(words):
        arr[tuple(int(c) for c in word)] += 1 if coeffs is None else coeffs[k]
    return PureState((d,) * n, arr)


def _biseparable(n: int, i: int, inner: PureState) -> PureState:
    """Party i in |0>, the rest carrying `inner`; parties re-ordered back."""
    single = make_tensor([2], [1, 0])
    s = tensor_product(single, inner)
    order = list(range(2, i + 1)) + [1] + list(range(i + 1, n + 1))
    return permute_parties(order, s)


def _t2_rows():
    return {
        "Sep": lambda: _qubit_word("000"),
        "B1": lambda: _sum_words(3, 2, ["000", "011"]),
        "B2": lambda: _sum_words(3, 2, ["000", "101"]),
        "B3": lambda: _sum_words(3, 2, ["000", "110"]),
        "W": lambda: w(3),
        "GHZ": lambda: ghz(2, 3),
    }


def _t4_rows():
    rows = {
        "Sep": lambda: _qubit_word("0000"),
        "GHZ4": lambda: ghz(2, 4),
        "W4": lambda: w(4),
        "D42": lambda: dicke(4, 2),
        "(333)": lambda: dicke(4, 2),
        "(333)'": lambda: _sum_words(4, 2, ["1000", "0100", "0010", "0001", "1111"]),
        "X4": lambda: _sum_words(4, 2, ["1000", "0100", "0010", "0001", "1111"]),
        "M4": lambda: m_general(4, 2),
        "(233)": lambda: m_general(4, 2),
        "(323)": lambda: _sum_words(4, 2, ["0000", "1111", "0101"]),
        "(332)": lambda: _sum_words(4, 2, ["0000", "1111", "0110"]),
        "N42": lambda: n_general(4, 2, [1, 1, 0, 0]),
        "(233)'": lambda: n_general(4, 2, [1, 1, 0, 0]),
        "(323)'": lambda: n_general(4, 2, [1, 0, 1, 0]),
        "(332)'": lambda: n_general(4, 2, [1, 0, 0, 1]),
        "Cl1": lambda: cluster4(1),
        "Cl2": lambda: cluster4(2),
        "Cl3": lambda: cluster4(3),
        "(244)": lambda: cluster4(1),
        "(424)": lambda: cluster4(2),
        "(442)": lambda: cluster4(3),
        "Cl1+": lambda: _plus_word(cluster4(1), "0101"),
        "Cl2+": lambda: _plus_word(cluster4(2), "0110"),
        "Cl3+": lambda: _plus_word(cluster4(3), "0011"),
        "(344)": lambda: _plus_word(cluster4(1), "0101"),
        "(434)": lambda: _plus_word(cluster4(2), "0110"),
        "(443)": lambda: _plus_word(cluster4(3), "0011"),
        "(444)": lambda: _four_product_sum(),
        "G42": lambda: g_general(4, 2),
    }
    for i in range(1, 4):
        j, k = {1: (1, 2), 2: (1, 3), 3: (1, 4)}[i]
        rest = [p for p in range(1, 5) if p not in (j, k)]
        order_src = [j, k] + rest

        def bb(order_src=order_src):
            s = tensor_product(bell(), bell())
            inverse = [0] * 4
            for newpos, oldparty in enumerate(order_src, start=1):
                inverse[oldparty - 1] = newpos
            return permute_parties(inverse, s)

        rows[f"BB{i}"] = bb
    for i in range(1, 5):
        rows[f"B{i}_GHZ3"] = (lambda i=i: _biseparable(4, i, ghz(2, 3)))
        rows[f"B{i}_W3"] = (lambda i=i: _biseparable(4, i, w(3)))
    for k, (a, b) in enumerate([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], start=1):
        def tri(a=a, b=b):
            s = tensor_product(bell(), product_state([[1, 0], [1, 0]]))
            rest = [p for p in range(1, 5) if p not in (a, b)]
            inverse = [0] * 4
            for newpos, oldparty in enumerate([a, b] + rest, start=1):
                inverse[oldparty - 1] = newpos
            return permute_parties(inverse, s)

        rows[f"T{k}"] = tri
    return rows


def _plus_word(s: PureState, word: str) -> PureState:
    arr = s.array.copy()
    arr[tuple(int(c) for c in word)] += 1
    return PureState(s.shape, arr)


def _four_product_sum() -> PureState:
    """Sum of four independent integer product states; all two-flattenings full."""
    points = [
        ([1, 0], [1, 0], [1, 0], [1, 0]),
        ([0, 1], [0, 1], [0, 1], [0, 1]),
        ([1, 1], [1, 1], [1, 1], [1, 1]),
        ([1, -1], [1, 2], [1, -2], [1, 3]),
    ]
    arr = sum(product_state(p).array for p in points)
    return PureState((2,) * 4, arr)


def _t51_rows():
    return {
        "Sep": lambda: make_tensor([3, 3, 3], np.eye(27, 1).reshape(-1)),
        "GHZ1": lambda: ghz_excited(3, 3, 1),
        "W3": lambda: w(3, d=3),
        "GHZ2": lambda: ghz(3, 3),
        "X3": lambda: x3(),
        "Y3": lambda: y_state(3),
        "(333)'3": lambda: x3(),
        "(333)4": lambda: _sum_words(3, 3, ["000", "011", "122", "221"]),
        "(333)'4": lambda: _sum_words(3, 3, ["010", "100", "112", "201", "222"]),
        "(333)5": lambda: g3_t(2),
        "G3": lambda: g3(),
        "(332)": lambda: _sum_words(3, 3, ["000", "111", "022"]),
        "(323)": lambda: _sum_words(3, 3, ["000", "111", "202"]),
        "(233)": lambda: _sum_words(3, 3, ["000", "111", "220"]),
        "(322)": lambda: _sum_words(3, 3, ["000", "111", "012"]),
        "(232)": lambda: _sum_words(3, 3, ["000", "111", "102"]),
        "(223)": lambda: _sum_words(3, 3, ["000", "111", "120"]),
        "(332)'": lambda: _sum_words(3, 3, ["001", "010", "100", "022"]),
        "(323)'": lambda: _sum_words(3, 3, ["001", "010", "100", "202"]),
        "(233)'": lambda: _sum_words(3, 3, ["001", "010", "100", "220"]),
        "B1(1)": lambda: _qutrit_bisep(1, 1),
        "B2(1)": lambda: _qutrit_bisep(2, 1),
        "B3(1)": lambda: _qutrit_bisep(3, 1),
        "B1(2)": lambda: _qutrit_bisep(1, 2),
        "B2(2)": lambda: _qutrit_bisep(2, 2),
        "B3(2)": lambda: _qutrit_bisep(3, 2),
    }


def _qutrit_bisep(i: int, zeta: int) -> PureState:
    single = make_tensor([3], [1, 0, 0])
    inner = ghz_excited(3, 2, zeta)
    s = tensor_product(single, inner)
    order = list(range(2, i + 1)) + [1] + list(range(i + 1, 4))
    return permute_parties(order, s)


def _t52_rows():
    return {
        "Sep": lambda: make_tensor([3, 3], np.eye(9, 1).reshape(-1)),
        "GHZ1": lambda: ghz_excited(3, 2, 1),
        "GHZ2": lambda: ghz(3, 2),
    }


def _t5qubit_rows():
    rows = {
        "Sep": lambda: _qubit_word("00000"),
        "GHZ5": lambda: ghz(2, 5),
        "W5": lambda: w(5),
        "D52": lambda: dicke(5, 2),
        "M52": lambda: m_general(5, 2),
        "N52": lambda: n_general(5, 2),
        "G52": lambda: g_general(5, 2),
        "W5+11111": lambda: _plus_word(w(5), "11111"),
    }
    for i in range(1, 6):
        rows[f"B{i}_GHZ4"] = (lambda i=i: _biseparable(5, i, ghz(2, 4)))
        rows[f"B{i}_W4"] = (lambda i=i: _biseparable(5, i, w(4)))
    rows["Q1"] = lambda: tensor_product(
        bell(), product_state([[1, 0], [1, 0], [1, 0]])
    )
    rows["T1_GHZ3"] = lambda: tensor_product(ghz(2, 3), product_state([[1, 0], [1, 0]]))
    rows["T1_W3"] = lambda: tensor_product(w(3), product_state([[1, 0], [1, 0]]))
    rows["BellGHZ3"] = lambda: tensor_product(bell(), ghz(2, 3))
    rows["BellW3"] = lambda: tensor_product(bell(), w(3))
    rows["Cl1q"] = lambda: tensor_product(cluster4(1), product_state([[1, 0]]))
    rows["D42q"] = lambda: tensor_product(dicke(4, 2), product_state([[1, 0]]))
    return rows


_TABLES = {
    "T2.1": _t2_rows,
    "T4.1": _t4_rows,
    "T5.1": _t51_rows,
    "T5.2": _t52_rows,
    "T5qubit": _t5qubit_rows,
}


def exemplar(table: str, row_key: str) -> PureState:
    """A representative state for a classification-table row."""
    if table not in _TABLES:
        raise UnknownRow(f"unknown table {table!r}; have {sorted(_TABLES)}")
    rows = _TABLES[table]()
    if row_key not in rows:
        raise UnknownRow(
            f"unknown row {row_key!r} in {table}; have {sorted(rows)}"
        )
    return rows[row_key]()


def exemplar_rows(table: str) -> list[str]:
    if table not in _TABLES:
        raise UnknownRow(f"unknown table {table!r}")
    return sorted(_TABLES[table]())
