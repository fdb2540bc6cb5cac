"""Hodge-theoretic invariants read off g-characters.

Coordinate 0 carries the degree operator and coordinate 1 the Hodge
operator: a weight theta contributes to h^{p,q} with p = theta_0 + theta_1 + n
and q = theta_0 - theta_1 + n, hence to degree k = 2 theta_0 + 2n.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .charring import _completions
from .weightlab import Algebra, Character, Decomposition, Doubled, Weight, WeightError, is_dominant_integral

__all__ = [
    "HodgeDiamond",
    "BettiVector",
    "prefix_marginal",
    "hodge_diamond",
    "betti",
    "euler",
    "hodge_deligne",
    "poincare",
    "salamon_check",
    "salamon_weight",
    "nagai_check",
    "conjecture_check",
    "polytope_check",
    "odd_vanishing_bound",
]


def prefix_marginal(x: Character, k: int) -> dict[Doubled, int]:
    """Total multiplicity of the weights of ``x`` by their first ``k`` coordinates."""
    a = x.algebra
    if k > a.rank:
        raise WeightError(f"{a} has fewer than {k} coordinates")
    out: dict[Doubled, int] = {}
    for mu, m in x.orbits.items():
        absmu = Counter(abs(v) for v in mu)
        for picks in _ordered_picks(Counter(absmu), k):
            rest = absmu - Counter(picks)
            for signs in itertools.product(*[(1, -1) if v else (1,) for v in picks]):
                prefix = tuple(s * v for s, v in zip(signs, picks))
                c = _completions(a, mu, prefix, rest)
                if c:
                    out[prefix] = out.get(prefix, 0) + c * m
    return out


def _ordered_picks(counter: Counter, k: int):
    if k == 0:
        yield ()
        return
    for v in list(counter):
        if counter[v]:
            counter[v] -= 1
            for tail in _ordered_picks(counter, k - 1):
                yield (v,) + tail
            counter[v] += 1


@dataclass(frozen=True)
class HodgeDiamond:
    n: int
    grid: tuple[tuple[int, ...], ...]

    def __getitem__(self, pq: tuple[int, int]) -> int:
        p, q = pq
        if not (0 <= p <= 2 * self.n and 0 <= q <= 2 * self.n):
            return 0
        return self.grid[p][q]

    def total(self) -> int:
        return sum(map(sum, self.grid))

    def betti(self) -> "BettiVector":
        b = [0] * (4 * self.n + 1)
        for p, row in enumerate(self.grid):
            for q, h in enumerate(row):
                b[p + q] += h
        return BettiVector(self.n, tuple(b))

    def is_symmetric(self) -> bool:
        N = 2 * self.n
        return all(
            self[p, q] == self[q, p] == self[N - p, N - q]
            for p in range(N + 1)
            for q in range(N + 1)
        )

    def quadrant_rows(self) -> list[list[int]]:
        """Row d lists h^{p,q} with p + q = d and p >= q, from the middle outwards to h^{d,0}."""
        rows = []
        for d in range(2 * self.n + 1):
            rows.append([self[p, d - p] for p in range((d + 1) // 2, d + 1)])
        return rows

    def render(self) -> str:
        rows = [r for d, r in enumerate(self.quadrant_rows()) if d % 2 == 0 or any(r)]
        cells = [[f"{v:,}" for v in r] for r in rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("  ".join(c.rjust(width) for c in r) for r in cells)

    def to_json(self) -> dict:
        return {"n": self.n, "grid": [list(r) for r in self.grid]}


@dataclass(frozen=True)
class BettiVector:
    n: int
    b: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.b[k] if 0 <= k < len(self.b) else 0

    @property
    def euler(self) -> int:
        return sum((-1) ** k * v for k, v in enumerate(self.b))

    @property
    def has_odd(self) -> bool:
        return any(self.b[1::2])

    def to_json(self) -> dict:
        return {"n": self.n, "b": list(self.b)}


def _check_range(x: Character, n: int, pref: dict[Doubled, int]) -> None:
    for w in pref:
        if abs(w[0]) > 2 * n:
            raise WeightError(f"weight with theta_0 = {Weight((w[0],))} is outside the range for n={n}")


def hodge_diamond(x: Character, n: int) -> HodgeDiamond:
    pref = prefix_marginal(x, 2)
    _check_range(x, n, pref)
    N = 2 * n
    grid = [[0] * (N + 1) for _ in range(N + 1)]
    for (t0, t1), m in pref.items():
        # doubled coordinates: p = (t0 + t1)/2 + n
        p, q = (t0 + t1) // 2 + n, (t0 - t1) // 2 + n
        if not (0 <= p <= N and 0 <= q <= N):
            raise WeightError(f"weight lands outside the diamond: p={p}, q={q}")
        grid[p][q] += m
    return HodgeDiamond(n, tuple(tuple(r) for r in grid))


def betti(x: Character, n: int) -> BettiVector:
    pref = prefix_marginal(x, 1)
    _check_range(x, n, pref)
    b = [0] * (4 * n + 1)
    for (t0,), m in pref.items():
        b[t0 + 2 * n] += m
    return BettiVector(n, tuple(b))


def euler(x: Character) -> int:
    """sum of multiplicities with sign (-1)^(2 theta_0)."""
    return sum(m * (-1 if t0 % 2 else 1) for (t0,), m in prefix_marginal(x, 1).items())


def hodge_deligne(x: Character, n: int) -> dict[tuple[int, int], int]:
    """Centered Hodge-Deligne polynomial: {(p - n, q - n): h^{p,q}} from x_0 = st, x_1 = s/t."""
    pref = prefix_marginal(x, 2)
    _check_range(x, n, pref)
    out: dict[tuple[int, int], int] = {}
    for (t0, t1), m in pref.items():
        key = ((t0 + t1) // 2, (t0 - t1) // 2)
        out[key] = out.get(key, 0) + m
    return out


def poincare(x: Character, n: int) -> dict[int, int]:
    """Centered Poincare polynomial {k - 2n: b_k} from x_0 = t^2, other variables 1."""
    pref = prefix_marginal(x, 1)
    _check_range(x, n, pref)
    return {t0: m for (t0,), m in sorted(pref.items())}


# -------------------------------------------------------------- Salamon


def salamon_weight(b: BettiVector) -> int:
    """sum_k (n - k)^2 b_{2k} for k = 0..n."""
    return sum((b.n - k) ** 2 * b[2 * k] for k in range(b.n + 1))


def _salamon_general(b: BettiVector) -> bool:
    n = b.n
    lhs = 2 * sum((-1) ** i * (3 * i * i - n) * b[2 * n - i] for i in range(1, 2 * n + 1))
    return lhs == n * b[2 * n]


def _salamon_even(b: BettiVector) -> bool:
    return Fraction(salamon_weight(b)) == Fraction(b.n, 24) * b.euler


def salamon_check(b: BettiVector) -> bool:
    """Salamon's linear relation among Betti numbers, plus Poincare duality.

    Without odd cohomology both the alternating form and the even-only rewrite
    are evaluated; disagreement is an internal error.
    """
    if len(b.b) != 4 * b.n + 1 or any(v < 0 for v in b.b):
        return False
    if any(b[k] != b[4 * b.n - k] for k in range(4 * b.n + 1)):
        return False
    general = _salamon_general(b)
    if b.has_odd:
        return general
    even = _salamon_even(b)
    if even != general:
        raise AssertionError("the two forms of Salamon's relation disagree")
    return general


# -------------------------------------------------------- inequalities


def _weights_of(d: Decomposition) -> list[Doubled]:
    return [w.doubled for w, _ in d.parts]


def nagai_check(d: Decomposition, n: int) -> bool:
    """theta_0 + theta_1 + |theta_2| <= n for every integral highest weight."""
    for w in _weights_of(d):
        if any(v % 2 for v in w):
            continue
        s = w[0] + (w[1] if len(w) > 1 else 0) + (abs(w[2]) if len(w) > 2 else 0)
        if s > 2 * n:
            return False
    return True


def conjecture_check(d: Decomposition, n: int) -> bool:
    """sum_{i<r} mu_i + |mu_r| <= n for every highest weight."""
    return all(sum(w[:-1]) + abs(w[-1]) <= 2 * n for w in _weights_of(d))


def polytope_check(w: Weight, n: int) -> bool:
    """The l1-norm of w is at most n (equivalently its orbit sits in the Verbitsky polytope)."""
    return sum(abs(v) for v in w.doubled) <= 2 * n


def odd_vanishing_bound(b2: int, n: int) -> bool:
    """b2 >= 4n: then (rank g)/2 > n and no half-integral weight passes the l1 bound."""
    return b2 >= 4 * n


def verbitsky_weight(a: Algebra, n: int) -> Weight:
    return Weight((2 * n,) + (0,) * (a.rank - 1))


def assert_dominant(a: Algebra, w: Weight) -> None:
    if not is_dominant_integral(a, w):
        raise WeightError(f"{w} is not dominant integral for {a}")
