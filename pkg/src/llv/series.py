"""q-expansions of LLV characters for Hilbert schemes of K3 surfaces and generalized Kummers.

Both product formulas are exponentials of sums of Adams operations, so the
coefficients come from the Newton-type recursion

    N c_N = sum_{k=1}^N g_k c_{N-k},   g_k = sum_{j | k} (k/j) * (log-derivative data at p_j)

which only ever multiplies a large coefficient by a small, fully expanded g_k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterator

import sympy

from .charring import (
    _exact_scale,
    change_family,
    exact_divide,
    ext_power,
    mul,
    power_sum,
    sym_power,
)
from .hodge import euler, hodge_deligne, poincare
from .weightlab import Algebra, Character

__all__ = [
    "CharSeries",
    "K3_ALGEBRA",
    "KUM_ALGEBRA",
    "k3n_series",
    "kumn_series",
    "kum_b_series",
    "jordan_totient4",
    "partitions",
    "gs_k3",
    "gs_kum_identity_check",
    "euler_series",
    "poincare_series",
    "hd_series",
    "k3_euler_oracle",
    "kum_b1",
]

K3_ALGEBRA = Algebra("B", 12)
KUM_ALGEBRA = Algebra("B", 4)
_KUM_D = Algebra("D", 4)


@dataclass(frozen=True)
class CharSeries:
    algebra: Algebra
    coefficients: tuple[Character, ...]

    def __post_init__(self) -> None:
        for c in self.coefficients:
            if c.algebra != self.algebra:
                raise ValueError("all coefficients must share one algebra")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> Character:
        return self.coefficients[n]

    def __iter__(self) -> Iterator[Character]:
        return iter(self.coefficients)

    def __mul__(self, other: "CharSeries") -> "CharSeries":
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = Character(self.algebra)
            for i in range(k + 1):
                acc = acc + mul(self[i], other[k - i])
            out.append(acc)
        return CharSeries(self.algebra, tuple(out))


def _exp_recursion(a: Algebra, g: list[Character], order: int) -> list[Character]:
    c = [Character.trivial(a)]
    for n in range(1, order + 1):
        acc = Character(a)
        for k in range(1, n + 1):
            acc = acc + mul(g[k], c[n - k])
        c.append(_exact_scale(acc, n))
    return c


def _k3_lattice(a: Algebra) -> Character:
    """The 24 weights +-e_i (no zero weight), invariant for both B12 and D12."""
    return Character(a, {(2,) + (0,) * (a.rank - 1): 1})


def k3n_series(order: int) -> CharSeries:
    """prod_{m>=1} prod_i 1/((1 - x_i q^m)(1 - x_i^-1 q^m)) over B12, truncated at q^order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return _k3n_cached(order)


@lru_cache(maxsize=None)
def _k3n_cached(order: int) -> CharSeries:
    a = K3_ALGEBRA
    w = _k3_lattice(a)
    g = [Character(a)]
    for k in range(1, order + 1):
        acc = Character(a)
        for j in sympy.divisors(k):
            acc = acc + power_sum(w, j).scale(k // j)
        g.append(acc)
    return CharSeries(a, tuple(_exp_recursion(a, g, order)))


def _kum_pieces() -> tuple[Character, Character]:
    """(W, U) over D4: the 8 weights +-e_i and the 8 spin weights with an even number of +1/2."""
    a = _KUM_D
    return Character(a, {(2, 0, 0, 0): 1}), Character(a, {(1, 1, 1, 1): 1})


def kum_b1() -> Character:
    w, u = _kum_pieces()
    return w + u


@lru_cache(maxsize=None)
def kum_b_series(order: int) -> CharSeries:
    """B(q) = prod_m prod_i 1/((1 - x_i q^m)(1 - x_i^-1 q^m)) prod_j (1 + x^j q^m), over D4."""
    a = _KUM_D
    w, u = _kum_pieces()
    g = [Character(a)]
    for k in range(1, order + 1):
        acc = Character(a)
        for j in sympy.divisors(k):
            term = power_sum(w, j) + power_sum(u, j).scale(1 if j % 2 else -1)
            acc = acc + term.scale(k // j)
        g.append(acc)
    return CharSeries(a, tuple(_exp_recursion(a, g, order)))


def jordan_totient4(d: int) -> int:
    if d < 1:
        raise ValueError("d must be positive")
    out = d**4
    for p in sympy.primefactors(d):
        out = out // p**4 * (p**4 - 1)
    return out


def kum_numerator(n: int) -> Character:
    """Coefficient of q^(n+1) in sum_d J_4(d) (B(q^d) - 1), over D4."""
    b = kum_b_series(n + 1)
    acc = Character(_KUM_D)
    for d in sympy.divisors(n + 1):
        acc = acc + b[(n + 1) // d].scale(jordan_totient4(d))
    return acc


def kumn_series(order: int) -> CharSeries:
    """Characters of H^*(Kum_n) over B4 for n = 0..order (n = 0, 1 are formal)."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return _kumn_cached(order)


@lru_cache(maxsize=None)
def _kumn_cached(order: int) -> CharSeries:
    b1 = kum_b1()
    out = [Character.trivial(KUM_ALGEBRA)]
    for n in range(1, order + 1):
        q = exact_divide(kum_numerator(n), b1)
        out.append(change_family(q, KUM_ALGEBRA))
    return CharSeries(KUM_ALGEBRA, tuple(out))


# ------------------------------------------------------- partition sums


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as exponent tuples (a_1, ..., a_n), a_i = number of parts equal to i."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []
    for p in sympy.utilities.iterables.partitions(n):
        out.append(tuple(p.get(i, 0) for i in range(1, n + 1)))
    return sorted(out, reverse=True)


def gs_k3(n: int) -> Character:
    """Sum over partitions of n of the tensor products of Sym^{a_i} W, W the 24-weight D12 module."""
    a = Algebra("D", 12)
    w = _k3_lattice(a)
    syms: dict[int, Character] = {}
    acc = Character(a)
    for alpha in partitions(n):
        term = Character.trivial(a)
        for ai in alpha:
            if ai:
                if ai not in syms:
                    syms[ai] = sym_power(w, ai)
                term = mul(term, syms[ai])
        acc = acc + term
    return acc


def _gcd_of_parts(alpha: tuple[int, ...]) -> int:
    return reduce(math.gcd, (i + 1 for i, ai in enumerate(alpha) if ai), 0)


def gs_kum_rhs(n: int) -> Character:
    """sum over partitions alpha of n+1 of g(alpha)^4 prod_i (sum_j Sym^{a_i - j} W x wedge^j U)."""
    w, u = _kum_pieces()
    blocks: dict[int, Character] = {}

    def block(k: int) -> Character:
        if k not in blocks:
            acc = Character(_KUM_D)
            for j in range(k + 1):
                acc = acc + mul(sym_power(w, k - j), ext_power(u, j))
            blocks[k] = acc
        return blocks[k]

    acc = Character(_KUM_D)
    for alpha in partitions(n + 1):
        term = Character.trivial(_KUM_D)
        for ai in alpha:
            if ai:
                term = mul(term, block(ai))
        acc = acc + term.scale(_gcd_of_parts(alpha) ** 4)
    return acc


def gs_kum_identity_check(n: int) -> bool:
    """H^*(Kum_n) (x) (W + U) against the partition-sum side, as D4 characters."""
    if n < 1:
        raise ValueError("n must be at least 1")
    lhs = mul(change_family(kumn_series(n)[n], _KUM_D), kum_b1())
    return lhs == gs_kum_rhs(n)


# ------------------------------------------------------ specializations


def _family_series(family: str, order: int) -> tuple[CharSeries, int]:
    if family == "k3n":
        return k3n_series(order), 0
    if family == "kumn":
        return kumn_series(order), 0
    raise ValueError(f"unknown family {family!r}")


def euler_series(family: str, order: int) -> list[int]:
    s, _ = _family_series(family, order)
    return [euler(c) for c in s]


def poincare_series(family: str, order: int) -> list[dict[int, int]]:
    """Centered Poincare polynomials {exponent of t: coefficient} for n = 0..order."""
    s, _ = _family_series(family, order)
    return [poincare(c, n) for n, c in enumerate(s)]


def hd_series(family: str, order: int) -> list[dict[tuple[int, int], int]]:
    """Centered Hodge-Deligne polynomials {(exp s, exp t): coefficient}."""
    s, _ = _family_series(family, order)
    return [hodge_deligne(c, n) for n, c in enumerate(s)]


def k3_euler_oracle(order: int) -> list[int]:
    """Coefficients of prod_m (1 - q^m)^-24 by convolving the partition counts p(n)."""
    p = [0] * (order + 1)
    p[0] = 1
    for part in range(1, order + 1):
        for k in range(part, order + 1):
            p[k] += p[k - part]
    out = [1] + [0] * order
    for _ in range(24):
        out = [sum(out[i] * p[k - i] for i in range(k + 1)) for k in range(order + 1)]
    return out
