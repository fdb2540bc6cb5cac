"""Log-monodromy normal forms and nilpotency indices on explicit modules.

The standard module V-bar of so(b2) carries a split form: basis
e_1..e_r, e'_1..e'_r (and e_{r+1} when b2 is odd) with q(e_i, e'_j) = delta_ij
and q(e_{r+1}, e_{r+1}) = 1.  Matrices act on column vectors in that order.

The index on an irreducible V-bar_lambda is measured on the reducible module
W = Sym^{a_1} V-bar (x) Sym^{a_2}(wedge^2 V-bar) (x) ... whose a_i are the
differences of consecutive lambda_i; W contains V-bar_lambda and its
nilpotency index is attained there.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from .charring import decompose, mukai_grade
from .hodge import nagai_check
from .weightlab import Decomposition, Weight, WeightError

__all__ = [
    "NilpotentOperator",
    "Factor",
    "ExplicitModule",
    "ModuleTooLarge",
    "normal_form",
    "split_gram",
    "blueprint",
    "induced_matrix",
    "induced_index",
    "index_formula",
    "top_vector",
    "apply_power",
    "NagaiReport",
    "nagai_verdict",
    "MAX_MODULE_DIM",
]

MAX_MODULE_DIM = 10**5
_ENTRY_LIMIT = 2**62


class ModuleTooLarge(ValueError):
    pass


def split_gram(b2: int) -> np.ndarray:
    r = b2 // 2
    g = np.zeros((b2, b2), dtype=np.int64)
    for i in range(r):
        g[i, r + i] = g[r + i, i] = 1
    if b2 % 2:
        g[2 * r, 2 * r] = 1
    return g


@dataclass(frozen=True)
class NilpotentOperator:
    b2: int
    nu2: int
    matrix: np.ndarray = field(compare=False)

    @property
    def gram(self) -> np.ndarray:
        return split_gram(self.b2)

    def is_skew(self) -> bool:
        g, m = self.gram, self.matrix
        return not np.any(m.T @ g + g @ m)

    def index(self) -> int:
        return _matrix_index(sparse.csr_matrix(self.matrix))

    def image_rank(self, power: int = 1) -> int:
        p = np.linalg.matrix_power(self.matrix, power)
        return int(np.linalg.matrix_rank(p.astype(float)))

    def column(self, j: int) -> dict[int, int]:
        col = self.matrix[:, j]
        return {int(i): int(col[i]) for i in np.nonzero(col)[0]}


def normal_form(b2: int, nu2: int) -> NilpotentOperator:
    """nu2 = 1: e_1 -> e'_2, e_2 -> -e'_1.  nu2 = 2: e_1 -> e_2 + e'_2, e_2 and e'_2 -> -e'_1."""
    if b2 < 4:
        raise WeightError("normal forms need b2 >= 4; for b2 = 3 use index_formula directly")
    if nu2 not in (1, 2):
        raise WeightError("nu2 must be 1 or 2")
    r = b2 // 2
    e = lambda i: i - 1  # noqa: E731
    ep = lambda i: r + i - 1  # noqa: E731
    m = np.zeros((b2, b2), dtype=np.int64)
    if nu2 == 1:
        m[ep(2), e(1)] = 1
        m[ep(1), e(2)] = -1
    else:
        m[e(2), e(1)] = 1
        m[ep(2), e(1)] = 1
        m[ep(1), e(2)] = -1
        m[ep(1), ep(2)] = -1
    op = NilpotentOperator(b2, nu2, m)
    assert op.is_skew()
    return op


# ------------------------------------------------------------ modules


@dataclass(frozen=True)
class Factor:
    """Sym^sym (wedge^wedge V-bar)."""

    wedge: int
    sym: int

    def dim(self, b2: int) -> int:
        w = math.comb(b2, self.wedge)
        return math.comb(w + self.sym - 1, self.sym)


@dataclass(frozen=True)
class ExplicitModule:
    b2: int
    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        for f in self.factors:
            if not 1 <= f.wedge <= self.b2 or f.sym < 0:
                raise WeightError(f"bad factor {f} for b2={self.b2}")

    @property
    def dimension(self) -> int:
        return math.prod(f.dim(self.b2) for f in self.factors)

    @cached_property
    def factor_bases(self) -> tuple[tuple[tuple, ...], ...]:
        out = []
        for f in self.factors:
            wedges = list(itertools.combinations(range(self.b2), f.wedge))
            out.append(tuple(itertools.combinations_with_replacement(range(len(wedges)), f.sym)))
        return tuple(out)

    def basis(self):
        """Monomials as tuples (one multiset of wedge indices per factor), in matrix order."""
        return itertools.product(*self.factor_bases)


def blueprint(lam: Weight | tuple[int, ...], b2: int) -> ExplicitModule:
    """The module W containing V-bar_lambda for an integral dominant lambda over so(b2)."""
    r = b2 // 2
    w = lam if isinstance(lam, Weight) else Weight.of(*lam)
    w = w.padded(r)
    if not w.is_integral:
        raise WeightError("blueprints exist only for integral weights")
    v = [x // 2 for x in w.doubled]
    if any(v[i] < v[i + 1] for i in range(r - 2)) or (r > 1 and v[r - 2] < abs(v[r - 1])) or (r == 1 and v[0] < 0):
        raise WeightError(f"{w} is not dominant for so({b2})")
    if b2 % 2 and v[r - 1] < 0:
        raise WeightError(f"{w} is not dominant for so({b2})")
    a = [v[i] - v[i + 1] for i in range(r - 2)]
    if r >= 2:
        a += [v[r - 2] - abs(v[r - 1]), abs(v[r - 1])]
    else:
        a = [v[0]]
    return ExplicitModule(b2, tuple(Factor(i + 1, ai) for i, ai in enumerate(a) if ai))


def _wedge_action(op: NilpotentOperator, k: int) -> list[dict[int, int]]:
    """Columns of the derivation action on wedge^k, basis = sorted k-subsets."""
    subsets = list(itertools.combinations(range(op.b2), k))
    index = {s: i for i, s in enumerate(subsets)}
    cols = [op.column(j) for j in range(op.b2)]
    out = []
    for s in subsets:
        col: dict[int, int] = {}
        for pos, j in enumerate(s):
            for i, c in cols[j].items():
                if i in s and i != j:
                    continue
                t = list(s)
                t[pos] = i
                # sign of the permutation sorting t
                sign = (-1) ** sum(1 for x in s if (x < i) != (x < j) and x != j)
                t.sort()
                key = index[tuple(t)]
                col[key] = col.get(key, 0) + sign * c
        out.append({i: c for i, c in col.items() if c})
    return out


def _sym_action(cols: list[dict[int, int]], a: int) -> list[dict[int, int]]:
    """Columns of the derivation action on Sym^a, basis = sorted multisets of size a."""
    monos = list(itertools.combinations_with_replacement(range(len(cols)), a))
    index = {m: i for i, m in enumerate(monos)}
    out = []
    for m in monos:
        col: dict[int, int] = {}
        for pos, j in enumerate(m):
            for i, c in cols[j].items():
                t = m[:pos] + (i,) + m[pos + 1:]
                key = index[tuple(sorted(t))]
                col[key] = col.get(key, 0) + c
        out.append({i: c for i, c in col.items() if c})
    return out


def _to_csr(cols: list[dict[int, int]]) -> sparse.csr_matrix:
    rows, cs, data = [], [], []
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows.append(i)
            cs.append(j)
            data.append(c)
    n = len(cols)
    return sparse.csr_matrix((np.array(data, dtype=np.int64), (rows, cs)), shape=(n, n), dtype=np.int64)


def induced_matrix(op: NilpotentOperator, m: ExplicitModule) -> sparse.csr_matrix:
    if m.b2 != op.b2:
        raise WeightError("operator and module are built over different b2")
    if m.dimension > MAX_MODULE_DIM:
        raise ModuleTooLarge(f"module dimension {m.dimension} exceeds {MAX_MODULE_DIM}")
    total = sparse.csr_matrix(np.zeros((1, 1), dtype=np.int64))
    for f in m.factors:
        mat = _to_csr(_sym_action(_wedge_action(op, f.wedge), f.sym))
        eye_l = sparse.identity(total.shape[0], dtype=np.int64, format="csr")
        eye_r = sparse.identity(mat.shape[0], dtype=np.int64, format="csr")
        total = (sparse.kron(total, eye_r) + sparse.kron(eye_l, mat)).tocsr()
    return total


def _matrix_index(mat: sparse.csr_matrix) -> int:
    colsum = abs(mat).sum(axis=0).max() if mat.nnz else 0
    p = mat.copy()
    k = 0
    while p.count_nonzero():
        k += 1
        if abs(p).max() * colsum >= _ENTRY_LIMIT:
            raise OverflowError("matrix power entries would overflow int64")
        p = (p @ mat).tocsr()
        p.eliminate_zeros()
    return k


def induced_index(op: NilpotentOperator, m: ExplicitModule) -> int:
    """Largest k with N^k != 0 on m, by repeated exact multiplication."""
    return _matrix_index(induced_matrix(op, m))


def top_vector(m: ExplicitModule) -> int:
    """Matrix index of x = e_1^{a_1} (x) (e_1 ^ e_2)^{a_2} (x) ...

    In every factor the first wedge basis element is e_1 ^ ... ^ e_i and the
    first monomial is its a-th power, so x is basis vector 0.
    """
    return 0


def apply_power(op: NilpotentOperator, m: ExplicitModule, vec: int, k: int) -> np.ndarray:
    mat = induced_matrix(op, m)
    v = np.zeros(mat.shape[0], dtype=np.int64)
    v[vec] = 1
    for _ in range(k):
        v = mat @ v
    return v


def index_formula(lam: Weight | tuple, nu2: int, b2: int) -> int:
    """nu2 = 1: lambda_1 + |lambda_2|; nu2 = 2: 2 lambda_1; b2 = 3: lambda * nu2."""
    w = lam if isinstance(lam, Weight) else Weight.of(*lam)
    if not w.is_integral:
        raise WeightError("no index formula for half-integral weights")
    v = [x // 2 for x in w.doubled]
    if b2 == 3:
        return v[0] * nu2
    if b2 < 3:
        raise WeightError("b2 must be at least 3")
    if nu2 == 0:
        return 0
    if nu2 == 1:
        return v[0] + (abs(v[1]) if len(v) > 1 else 0)
    if nu2 == 2:
        return 2 * v[0]
    raise WeightError("nu2 must be 0, 1 or 2")


# ------------------------------------------------------------ verdicts


@dataclass(frozen=True)
class NagaiReport:
    n: int
    nu2: int
    indices: tuple[int, ...]  # nu_{2k} for k = 0..n
    holds: bool
    odd_degrees: str = "unspecified"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "nu2": self.nu2,
            "nu_2k": list(self.indices),
            "holds": self.holds,
            "odd_degrees": self.odd_degrees,
        }


def nagai_verdict(d: Decomposition, n: int, nu2: int) -> NagaiReport:
    """Per-degree nilpotency indices nu_{2k} of a log monodromy with index nu2 on H^2."""
    if n < 1:
        raise WeightError("n must be at least 1")
    if nu2 not in (0, 1, 2):
        raise WeightError("nu2 must be 0, 1 or 2")
    for w, _ in d.parts:
        if w.doubled[0] > 2 * n:
            raise WeightError(f"{w.short()} has mu_0 > n = {n}")
    if nu2 == 0:
        return NagaiReport(n, 0, (0,) * (n + 1), True)
    if nu2 == 2:
        return NagaiReport(n, 2, tuple(2 * k for k in range(n + 1)), True)
    b2 = d.algebra.m - 2
    grades = mukai_grade(d.character(), n)
    idx = []
    for k in range(n + 1):
        piece = grades[2 * k]
        best = 0
        if piece.orbits:
            for lam, _ in decompose(piece).parts:
                best = max(best, index_formula(lam, nu2, b2))
        idx.append(best)
    holds = all(v == k * nu2 for k, v in enumerate(idx))
    return NagaiReport(n, nu2, tuple(idx), holds)


def nagai_equivalence(d: Decomposition, n: int) -> bool:
    """Both sides of the Nagai criterion for type II degenerations, computed independently."""
    return nagai_verdict(d, n, 1).holds == nagai_check(d, n)
