"""Recover LLV decompositions from numerical invariants.

Unknown multiplicities are found by exhaustive depth-first search.  All
constraints are linear with non-negative coefficients (dimension, Betti and
Hodge numbers, Salamon weight), which gives three kinds of pruning: residuals
stay non-negative, a variable that is the last one touching some constraint
is determined, and each residual must lie between the extreme
constraint-to-dimension ratios of the remaining pool.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .charring import decompose, mukai_grade, restrict_with_trivials
from .hodge import BettiVector, HodgeDiamond, betti, conjecture_check, hodge_diamond, nagai_check, salamon_check, salamon_weight
from .weightlab import (
    Algebra,
    Decomposition,
    Doubled,
    Weight,
    WeightError,
    fundamental_weights,
    irreducible_character,
    sort_key,
    weyl_dim,
)

__all__ = [
    "HKProfile",
    "Candidate",
    "CandidateSet",
    "DisambiguationError",
    "enumerate_weights",
    "solve_constraints",
    "profile_pool",
    "og10_profile",
    "og6_profile",
    "OG6_HODGE_ROWS",
    "OG6_H4_FIXTURE",
    "og6_h4",
    "og6_restricted_h4",
    "diamond_from_rows",
    "load_profile",
    "og6_disambiguate",
    "solve_named",
]


class DisambiguationError(RuntimeError):
    pass


@dataclass(frozen=True)
class HKProfile:
    n: int
    b2: int
    euler: int
    known_betti: Mapping[int, int] = field(default_factory=dict)
    odd_vanishes: bool = True
    hodge: HodgeDiamond | None = None

    def __post_init__(self) -> None:
        if self.b2 < 3:
            raise WeightError("b2 must be at least 3")
        if self.euler <= 0:
            raise WeightError("the Euler number must be positive")

    @property
    def algebra(self) -> Algebra:
        return Algebra.so(self.b2 + 2)

    @classmethod
    def from_json(cls, obj: Mapping) -> "HKProfile":
        hodge = None
        if obj.get("hodge") is not None:
            h = obj["hodge"]
            hodge = HodgeDiamond(int(h["n"]), tuple(tuple(int(v) for v in r) for r in h["grid"]))
        return cls(
            n=int(obj["n"]),
            b2=int(obj["b2"]),
            euler=int(obj["euler"]),
            known_betti={int(k): int(v) for k, v in obj.get("known_betti", {}).items()},
            odd_vanishes=bool(obj.get("odd_vanishes", True)),
            hodge=hodge,
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "b2": self.b2,
            "euler": self.euler,
            "known_betti": {str(k): v for k, v in self.known_betti.items()},
            "odd_vanishes": self.odd_vanishes,
            "hodge": self.hodge.to_json() if self.hodge else None,
        }


@dataclass(frozen=True)
class Candidate:
    decomposition: Decomposition
    betti: BettiVector
    salamon: bool
    nagai: bool
    conjecture: bool

    def to_json(self) -> dict:
        return {
            "decomposition": self.decomposition.to_json(),
            "text": str(self.decomposition),
            "betti": list(self.betti.b),
            "salamon": self.salamon,
            "nagai": self.nagai,
            "conjecture": self.conjecture,
        }


@dataclass(frozen=True)
class CandidateSet:
    profile: HKProfile
    candidates: tuple[Candidate, ...]

    def __len__(self) -> int:
        return len(self.candidates)

    def decompositions(self) -> list[Decomposition]:
        return [c.decomposition for c in self.candidates]

    def to_json(self) -> dict:
        return {"profile": self.profile.to_json(), "candidates": [c.to_json() for c in self.candidates]}


def enumerate_weights(a: Algebra, dim_bound: int, integer_only: bool = True) -> list[Weight]:
    """Dominant weights with Weyl dimension at most ``dim_bound``.

    Frontier search adding fundamental weights; since dim V_{l+m} >= dim V_l
    for dominant l, m, a weight over the bound never needs extending.
    """
    if dim_bound < 1:
        raise ValueError("dim_bound must be at least 1")
    fund = [w.doubled for w in fundamental_weights(a)]
    zero = (0,) * a.rank
    seen = {zero}
    stack = [zero]
    while stack:
        w = stack.pop()
        for f in fund:
            v = tuple(x + y for x, y in zip(w, f))
            if v not in seen and weyl_dim(a, v) <= dim_bound:
                seen.add(v)
                stack.append(v)
    out = [w for w in seen if not integer_only or all(x % 2 == 0 for x in w)]
    return [Weight(w) for w in sorted(out, key=lambda w: sort_key(a, w))]


def profile_pool(p: HKProfile) -> list[Weight]:
    """Candidate highest weights for a profile.

    Kept: dimension within the budget left after the Verbitsky piece, and every
    orbit point inside the Hodge diamond (mu_0 + mu_1 <= n).
    """
    a = p.algebra
    top = _verbitsky(p)
    bound = p.euler - weyl_dim(a, top) if p.odd_vanishes else 10 * p.euler
    pool = enumerate_weights(a, max(bound, 1), integer_only=p.odd_vanishes)
    return [w for w in pool if _fits(w.doubled, p.n) and w.doubled != top]


def _fits(w: Doubled, n: int) -> bool:
    return w[0] + (w[1] if len(w) > 1 else 0) <= 2 * n


def _verbitsky(p: HKProfile) -> Doubled:
    return (2 * p.n,) + (0,) * (p.algebra.rank - 1)


def _features(p: HKProfile, w: Doubled) -> list[int]:
    """Constraint coefficients of one irreducible: dim, Salamon weight, b_2, known b_k, Hodge entries."""
    a = p.algebra
    ch = irreducible_character(a, w)
    b = betti(ch, p.n)
    row = [ch.dim(), salamon_weight(b), b[2]]
    row += [b[k] for k in sorted(p.known_betti)]
    if p.hodge is not None:
        h = hodge_diamond(ch, p.n)
        row += [h[i, j] for i, j in _hodge_keys(p.n)]
    return row


def _hodge_keys(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(2 * n + 1) for j in range(i + 1) if i + j <= 2 * n]


def _targets(p: HKProfile) -> list[int]:
    sal = Fraction(p.n * p.euler, 24)
    if sal.denominator != 1:
        raise WeightError("Salamon's relation forces 24 | n * e")
    row = [p.euler, int(sal), p.b2]
    row += [p.known_betti[k] for k in sorted(p.known_betti)]
    if p.hodge is not None:
        row += [p.hodge[i, j] for i, j in _hodge_keys(p.n)]
    return row


def solve_constraints(p: HKProfile, pool: Sequence[Weight] | None = None) -> CandidateSet:
    """All non-negative multiplicity vectors over ``pool`` meeting the profile exactly.

    The Verbitsky weight (n) is forced with multiplicity one.  The even-only
    Salamon form is used, so the profile must have vanishing odd cohomology.
    """
    if not p.odd_vanishes:
        raise WeightError("the constraint solver needs vanishing odd cohomology")
    a = p.algebra
    if pool is None:
        pool = profile_pool(p)
    top = _verbitsky(p)
    ws = [w.doubled for w in pool if w.doubled != top]
    if not ws:
        raise WeightError("empty weight pool")
    ws.sort(key=lambda w: -weyl_dim(a, w))
    feats = [_features(p, w) for w in ws]
    resid0 = [t - f for t, f in zip(_targets(p), _features(p, top))]
    ncons = len(resid0)
    nvar = len(ws)
    # last variable index touching each constraint
    last = [max((i for i in range(nvar) if feats[i][c]), default=-1) for c in range(ncons)]
    if any(r != 0 and last[c] < 0 for c, r in enumerate(resid0)):
        return CandidateSet(p, ())
    determined_by = [[c for c in range(ncons) if last[c] == i] for i in range(nvar)]
    # extreme ratios of each constraint to dimension over the tail of the pool
    lo_ratio = [[None] * ncons for _ in range(nvar + 1)]
    hi_ratio = [[None] * ncons for _ in range(nvar + 1)]
    for i in range(nvar - 1, -1, -1):
        for c in range(ncons):
            r = Fraction(feats[i][c], feats[i][0])
            lo, hi = lo_ratio[i + 1][c], hi_ratio[i + 1][c]
            lo_ratio[i][c] = r if lo is None else min(lo, r)
            hi_ratio[i][c] = r if hi is None else max(hi, r)

    solutions: list[list[int]] = []
    mult = [0] * nvar

    def feasible(i: int, resid: list[int]) -> bool:
        if any(r < 0 for r in resid):
            return False
        if i == nvar:
            return not any(resid)
        d = resid[0]
        for c in range(1, ncons):
            if resid[c] > hi_ratio[i][c] * d or resid[c] < lo_ratio[i][c] * d:
                return False
        return True

    def dfs(i: int, resid: list[int]) -> None:
        if not feasible(i, resid):
            return
        if i == nvar:
            solutions.append(list(mult))
            return
        f = feats[i]
        forced = None
        for c in determined_by[i]:
            q, r = divmod(resid[c], f[c])
            if r or (forced is not None and forced != q):
                return
            forced = q
        if forced is not None:
            choices = [forced]
        else:
            ub = min(resid[c] // f[c] for c in range(ncons) if f[c])
            choices = range(ub, -1, -1)
        for m in choices:
            mult[i] = m
            dfs(i + 1, [r - m * x for r, x in zip(resid, f)])
        mult[i] = 0

    dfs(0, resid0)
    cands = []
    for sol in solutions:
        parts = [(Weight(top), 1)] + [(Weight(w), m) for w, m in zip(ws, sol) if m]
        d = Decomposition(a, tuple(parts))
        ch = d.character()
        b = betti(ch, p.n)
        cands.append(Candidate(d, b, salamon_check(b), nagai_check(d, p.n), conjecture_check(d, p.n)))
    cands.sort(key=lambda c: [(sort_key(a, w.doubled), -m) for w, m in c.decomposition.parts])
    return CandidateSet(p, tuple(cands))


# ------------------------------------------------------------- profiles


def og10_profile() -> HKProfile:
    return HKProfile(n=5, b2=24, euler=176904, odd_vanishes=True)


# Hodge numbers h^{p,q} of OG6 by rows p + q = 0, 2, 4, 6, each listed from h^{k,k} to h^{2k,0}
OG6_HODGE_ROWS = ((1,), (6, 1), (173, 12, 1), (1144, 173, 6, 1))

# H^4 of OG6 over so(5), taken as geometric input: W(2) + W(1,1) + 6 W + 145 R
OG6_H4_FIXTURE = {(2,): 1, (1, 1): 1, (1,): 6, (): 145}


def diamond_from_rows(n: int, rows: Sequence[Sequence[int]]) -> HodgeDiamond:
    N = 2 * n
    grid = [[0] * (N + 1) for _ in range(N + 1)]
    for k, row in enumerate(rows):
        for j, h in enumerate(row):
            p, q = k + j, k - j
            for pp, qq in {(p, q), (q, p), (N - p, N - q), (N - q, N - p)}:
                grid[pp][qq] = h
    return HodgeDiamond(n, tuple(tuple(r) for r in grid))


def og6_profile() -> HKProfile:
    h = diamond_from_rows(3, OG6_HODGE_ROWS)
    return HKProfile(n=3, b2=8, euler=h.betti().euler, odd_vanishes=True, hodge=h)


def og6_h4(d: Decomposition) -> Decomposition:
    """Degree-4 piece of a g = so(10) decomposition, as an so(8)-decomposition."""
    return decompose(mukai_grade(d.character(), 3)[4])


def og6_restricted_h4(d: Decomposition) -> Decomposition:
    """H^4 restricted along so(5) in so(8), where the so(8) standard module splits as W + 3R."""
    return decompose(restrict_with_trivials(mukai_grade(d.character(), 3)[4], 3))


def og6_disambiguate(candidates: CandidateSet | Sequence[Decomposition]) -> Decomposition:
    decs = candidates.decompositions() if isinstance(candidates, CandidateSet) else list(candidates)
    target = Decomposition.of(Algebra("B", 2), OG6_H4_FIXTURE)
    hits = [d for d in decs if og6_restricted_h4(d) == target]
    if len(hits) != 1:
        raise DisambiguationError(f"{len(hits)} candidates match the H^4 fixture")
    return hits[0]


def solve_named(name: str) -> CandidateSet:
    if name == "og10":
        return solve_constraints(og10_profile())
    if name == "og6":
        return solve_constraints(og6_profile())
    raise ValueError(f"unknown profile {name!r}")


def load_profile(path: str) -> HKProfile:
    with open(path, encoding="utf-8") as fh:
        return HKProfile.from_json(json.load(fh))
