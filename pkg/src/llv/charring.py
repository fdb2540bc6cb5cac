"""Representation-ring arithmetic on orbit-compressed characters.

Products only ever expand one factor into its full weight support; the other
is walked through its dominant representatives.  Restrictions to smaller
orthogonal algebras are variable specializations, done orbit by orbit with
closed-form completion counts instead of materializing orbits.
"""
from __future__ import annotations

import heapq
import itertools
import math
from collections import Counter
from typing import Iterator, Mapping

from .weightlab import (
    Algebra,
    Character,
    Decomposition,
    Doubled,
    Weight,
    WeightError,
    canonical,
    irreducible_character,
    is_dominant_integral,
    rho_height,
)

__all__ = [
    "NotACharacterError",
    "IndivisibleError",
    "add",
    "sub",
    "mul",
    "power_sum",
    "sym_power",
    "ext_power",
    "decompose",
    "reconstruct",
    "exact_divide",
    "laurent_divide",
    "branch_so",
    "restrict_with_trivials",
    "change_family",
    "mukai_grade",
    "interleaving_branch",
    "standard_character",
]


class NotACharacterError(ArithmeticError):
    """The greedy decomposition met a negative or non-invariant residue."""


class IndivisibleError(ArithmeticError):
    """Exact Laurent division left a nonzero remainder."""


def add(x: Character, y: Character) -> Character:
    return x + y


def sub(x: Character, y: Character) -> Character:
    return x - y


def mul(x: Character, y: Character) -> Character:
    """Product of invariant characters.

    Every dominant weight of ``x*y`` is ``canonical(a + b)`` for a dominant ``a``
    in ``x`` and some ``b`` in the full support of ``y``; its coefficient is
    ``sum_b y[b] * x[nu - b]``.  The factor with the smaller support is expanded.
    """
    if x.algebra != y.algebra:
        raise WeightError(f"algebra mismatch: {x.algebra} vs {y.algebra}")
    if not x or not y:
        return Character(x.algebra)
    if x.support_size() < y.support_size():
        x, y = y, x
    a = x.algebra
    xo = x.orbits
    full = list(y.weights().items())
    cands = set()
    for w in xo:
        for b, _ in full:
            cands.add(canonical(a, tuple(p + q for p, q in zip(w, b))))
    out = {}
    for nu in cands:
        tot = 0
        for b, m in full:
            c = xo.get(canonical(a, tuple(p - q for p, q in zip(nu, b))))
            if c:
                tot += c * m
        if tot:
            out[nu] = tot
    return Character(a, out)


def power_sum(x: Character, j: int) -> Character:
    """Adams operation: every weight scaled by ``j``."""
    return Character(x.algebra, {tuple(j * v for v in w): m for w, m in x.orbits.items()})


def _newton(x: Character, k: int, sign: int) -> Character:
    a = x.algebra
    h = [Character.trivial(a)]
    powers = [None] + [power_sum(x, j) for j in range(1, k + 1)]
    for n in range(1, k + 1):
        acc = Character(a)
        for j in range(1, n + 1):
            term = mul(powers[j], h[n - j])
            if sign < 0 and j % 2 == 0:
                term = term.scale(-1)
            acc = acc + term
        h.append(_exact_scale(acc, n))
    return h[k]


def _exact_scale(x: Character, n: int) -> Character:
    out = {}
    for w, m in x.orbits.items():
        q, r = divmod(m, n)
        if r:
            raise ArithmeticError("Newton recursion produced a non-integral coefficient")
        out[w] = q
    return Character(x.algebra, out)


def sym_power(x: Character, k: int) -> Character:
    """Character of Sym^k via k h_k = sum_j p_j h_{k-j}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _newton(x, k, +1)


def ext_power(x: Character, k: int) -> Character:
    """Character of the k-th exterior power via k e_k = sum_j (-1)^(j-1) p_j e_{k-j}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _newton(x, k, -1)


def decompose(x: Character) -> Decomposition:
    """Greedy peel-off of irreducible characters, highest rho-height first."""
    a = x.algebra
    rest = dict(x.orbits)
    parts = []
    while rest:
        top = max(rest, key=lambda w: (rho_height(a, w), w))
        c = rest[top]
        if c < 0 or not is_dominant_integral(a, top):
            raise NotACharacterError(f"coefficient {c} at {Weight(top)} while decomposing over {a}")
        parts.append((Weight(top), c))
        for w, m in irreducible_character(a, top).orbits.items():
            v = rest.get(w, 0) - c * m
            if v:
                rest[w] = v
            else:
                rest.pop(w, None)
    return Decomposition(a, tuple(parts))


def reconstruct(d: Decomposition) -> Character:
    return d.character()


def standard_character(a: Algebra) -> Character:
    """Weights +-e_i, plus the zero weight for type B."""
    out = {(2,) + (0,) * (a.rank - 1): 1}
    if a.family == "B":
        out[(0,) * a.rank] = 1
    return Character(a, out)


# --------------------------------------------------------------- division


def _lex_divide(num: Mapping[Doubled, int], den: Mapping[Doubled, int]) -> dict[Doubled, int]:
    num = {w: m for w, m in num.items() if m}
    den = {w: m for w, m in den.items() if m}
    if not den:
        raise ZeroDivisionError("division by the zero character")
    if not num:
        return {}
    lead = max(den)
    lc = den[lead]
    r = len(lead)
    lo = [min(w[i] for w in num) - min(w[i] for w in den) for i in range(r)]
    hi = [max(w[i] for w in num) - max(w[i] for w in den) for i in range(r)]
    rest = dict(num)
    heap = [tuple(-v for v in w) for w in rest]
    heapq.heapify(heap)
    quot: dict[Doubled, int] = {}
    while heap:
        top = tuple(-v for v in heapq.heappop(heap))
        c = rest.get(top)
        if not c:
            continue
        shift = tuple(p - q for p, q in zip(top, lead))
        if c % lc or any(s < l or s > h for s, l, h in zip(shift, lo, hi)):
            raise IndivisibleError(f"remainder term {c}*x^{Weight(top)} cannot be cancelled")
        qc = c // lc
        quot[shift] = qc
        for w, m in den.items():
            t = tuple(p + q for p, q in zip(shift, w))
            v = rest.get(t, 0) - qc * m
            if v:
                if t not in rest or rest[t] == 0:
                    heapq.heappush(heap, tuple(-u for u in t))
                rest[t] = v
            else:
                rest.pop(t, None)
    return quot


def laurent_divide(num: Mapping[Doubled, int], den: Mapping[Doubled, int]) -> dict[Doubled, int]:
    """Exact division of Laurent polynomials (maps weight -> coefficient), lex order, x_0 first."""
    return _lex_divide(num, den)


def exact_divide(num: Character, den: Character) -> Character:
    if num.algebra != den.algebra:
        raise WeightError("algebra mismatch")
    quot = _lex_divide(num.weights(), den.weights())
    return Character.from_weights(num.algebra, quot)


# ------------------------------------------------------------ restriction


def _perms(counter: Counter) -> int:
    n = math.factorial(sum(counter.values()))
    for c in counter.values():
        n //= math.factorial(c)
    return n


def _completions(a: Algebra, mu: Doubled, prefix: Doubled, rest: Counter) -> int:
    """Number of orbit points of ``mu`` that start with ``prefix`` (rest = unused |values|)."""
    k = sum(rest.values())
    nz = k - rest.get(0, 0)
    if a.family == "B" or 0 in mu:
        return _perms(rest) << nz
    if k == 0:
        return int(sum(v < 0 for v in prefix) % 2 == sum(v < 0 for v in mu) % 2)
    return _perms(rest) << (nz - 1)


def _sub_multisets(counter: Counter, k: int) -> Iterator[Counter]:
    items = sorted(counter.items())

    def rec(i: int, left: int, acc: dict):
        if left == 0:
            yield Counter(acc)
            return
        if i == len(items):
            return
        v, c = items[i]
        for t in range(min(c, left), -1, -1):
            if t:
                acc[v] = t
            yield from rec(i + 1, left - t, acc)
            acc.pop(v, None)

    yield from rec(0, k, {})


def _target_reps(target: Algebra, absvals: list[int]) -> list[Doubled]:
    base = tuple(sorted(absvals, reverse=True))
    if target.family == "D" and base and base[-1] != 0:
        return [base, base[:-1] + (-base[-1],)]
    return [base]


def _drop_suffix(x: Character, target: Algebra) -> Character:
    """Set the trailing variables to 1, viewing the result over ``target``."""
    a = x.algebra
    drop = a.rank - target.rank
    if drop < 0:
        raise WeightError(f"cannot restrict {a} to larger {target}")
    out: dict[Doubled, int] = {}
    for mu, m in x.orbits.items():
        absmu = Counter(abs(v) for v in mu)
        for dropped in _sub_multisets(absmu, drop):
            kept = list((absmu - dropped).elements())
            for nu in _target_reps(target, kept):
                c = _completions(a, mu, nu, dropped)
                if c:
                    out[nu] = out.get(nu, 0) + c * m
    return Character(target, out)


def change_family(x: Character, target: Algebra) -> Character:
    """Reinterpret a character over the same-rank algebra of the other family.

    B to D always works; D to B requires invariance under one sign flip.
    """
    if target.rank != x.algebra.rank:
        raise WeightError("change_family keeps the rank")
    if target == x.algebra:
        return x
    if target.family == "D":
        return _drop_suffix(x, target)
    out: dict[Doubled, int] = {}
    for w, m in x.orbits.items():
        if w[-1] != 0 and x.orbits.get(w[:-1] + (-w[-1],)) != m:
            raise NotACharacterError(f"not invariant under the odd sign flip at {Weight(w)}")
        if w[-1] >= 0:
            out[w] = m
    return Character(target, out)


def restrict_with_trivials(x: Character, t: int) -> Character:
    """Restrict from so(m) to so(m - t) along a nondegenerate subspace (t variables become 1)."""
    a = x.algebra
    if t < 0 or a.m - t < 3:
        raise WeightError(f"cannot drop {t} dimensions from so({a.m})")
    target = Algebra.so(a.m - t)
    if target.rank == a.rank:
        return change_family(x, target)
    return _drop_suffix(x, target)


def branch_so(x: Character) -> Character:
    """Restriction along so(m) inside so(m+1)."""
    return restrict_with_trivials(x, 1)


def mukai_grade(x: Character, n: int) -> list[Character]:
    """Split a character of g = so(b2+2) by the eigenvalue of coordinate 0.

    Weight theta sits in cohomological degree 2*theta_0 + 2n; the remaining
    coordinates give a character of gbar = so(b2).  Returns the list of pieces
    for degrees 0..4n (odd degrees come from half-integer weights).
    """
    a = x.algebra
    target = Algebra(a.family, a.rank - 1)
    pieces: list[dict[Doubled, int]] = [{} for _ in range(4 * n + 1)]
    for mu, m in x.orbits.items():
        absmu = Counter(abs(v) for v in mu)
        parity = sum(v < 0 for v in mu) % 2
        for v0 in absmu:
            rest = list((absmu - Counter({v0: 1})).elements())
            for a0 in {v0, -v0}:
                deg = a0 + 2 * n
                if not 0 <= deg <= 4 * n:
                    raise WeightError(f"weight {Weight(mu)} leaves the cohomological range for n={n}")
                for nu in _target_reps(target, rest):
                    if a.family == "D" and 0 not in mu:
                        if (int(a0 < 0) + sum(v < 0 for v in nu)) % 2 != parity:
                            continue
                    pieces[deg][nu] = pieces[deg].get(nu, 0) + m
    return [Character(target, p) for p in pieces]


# ----------------------------------------------------------- rule oracle


def interleaving_branch(a: Algebra, lam: Weight | Doubled) -> Decomposition:
    """Branching of an irreducible along so(m) in so(m+1) by the interleaving rule.

    B_r to D_r: lam_1 >= l_1 >= lam_2 >= ... >= l_{r-1} >= lam_r >= |l_r|.
    D_r to B_{r-1}: lam_1 >= l_1 >= lam_2 >= ... >= l_{r-1} >= |lam_r|.
    """
    lam = lam.doubled if isinstance(lam, Weight) else tuple(lam)
    r = a.rank
    if a.family == "B":
        target = Algebra("D", r)
        bounds = [(lam[i + 1], lam[i]) for i in range(r - 1)]
        ranges = [range(lo, hi + 1, 2) for lo, hi in bounds] + [range(-lam[-1], lam[-1] + 1, 2)]
    else:
        target = Algebra("B", r - 1)
        bounds = [(lam[i + 1], lam[i]) for i in range(r - 2)] + [(abs(lam[-1]), lam[-2])]
        ranges = [range(lo, hi + 1, 2) for lo, hi in bounds]
    parts = [(Weight(c), 1) for c in itertools.product(*ranges)]
    return Decomposition(target, tuple(parts))
