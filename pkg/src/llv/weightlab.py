"""Root data, weights and irreducible characters for so(m) of types B and D.

Weights live in the epsilon basis and are stored as doubled integers, so the
half-integer point (1/2, 1/2) is kept as ``(1, 1)``.  A :class:`Character` is
Weyl-invariant by construction and is stored through one representative per
Weyl orbit (the dominant one), which keeps characters of rank-12 algebras with
millions of weights down to a few dozen dictionary entries.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np
from scipy import sparse

__all__ = [
    "Algebra",
    "Weight",
    "Character",
    "Decomposition",
    "WeightError",
    "parse_algebra",
    "canonical",
    "is_dominant_integral",
    "weyl_orbit",
    "orbit_size",
    "rho",
    "rho_height",
    "weyl_dim",
    "irreducible_character",
    "fundamental_weights",
    "positive_roots",
    "mukai_bracket_check",
]

Doubled = tuple[int, ...]


class WeightError(ValueError):
    """Raised for malformed weights, rank mismatches and failed preconditions."""


@dataclass(frozen=True, order=True)
class Algebra:
    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in ("B", "D"):
            raise WeightError(f"unknown family {self.family!r}")
        if self.family == "B" and self.rank < 1:
            raise WeightError("type B needs rank >= 1")
        if self.family == "D" and self.rank < 2:
            raise WeightError("type D needs rank >= 2")

    @property
    def m(self) -> int:
        """Dimension of the standard module."""
        return 2 * self.rank + (1 if self.family == "B" else 0)

    @classmethod
    def so(cls, m: int) -> "Algebra":
        if m % 2:
            return cls("B", (m - 1) // 2)
        return cls("D", m // 2)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def parse_algebra(text: str) -> Algebra:
    text = text.strip().upper()
    if len(text) < 2 or text[0] not in "BD" or not text[1:].isdigit():
        raise WeightError(f"cannot parse algebra {text!r}; expected e.g. B12 or D13")
    return Algebra(text[0], int(text[1:]))


@dataclass(frozen=True, order=True)
class Weight:
    doubled: Doubled

    def __post_init__(self) -> None:
        object.__setattr__(self, "doubled", tuple(int(v) for v in self.doubled))
        if len({v % 2 for v in self.doubled}) > 1:
            raise WeightError(f"mixed parity in {self.doubled}: coordinates must be all integers or all half-integers")

    @classmethod
    def of(cls, *coords) -> "Weight":
        """Build from plain values: ints, Fractions or strings such as ``"3/2"``."""
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
            coords = tuple(coords[0])
        out = []
        for c in coords:
            v = Fraction(c) * 2
            if v.denominator != 1:
                raise WeightError(f"{c} is not a half-integer")
            out.append(int(v))
        return cls(tuple(out))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            return cls.of(*parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise WeightError(f"cannot parse weight {text!r}") from exc

    @property
    def rank(self) -> int:
        return len(self.doubled)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.doubled)

    @property
    def is_integral(self) -> bool:
        return all(v % 2 == 0 for v in self.doubled)

    def padded(self, rank: int) -> "Weight":
        if self.rank > rank:
            raise WeightError(f"weight {self} has more than {rank} coordinates")
        return Weight(self.doubled + (0,) * (rank - self.rank))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.doubled, other.doubled, strict=True)))

    def __str__(self) -> str:
        return "(" + ",".join(_fmt_half(v) for v in self.doubled) + ")"

    def short(self) -> str:
        """Trailing zeros stripped, as in ``(2,2)`` for a rank-13 weight."""
        d = list(self.doubled)
        while d and d[-1] == 0:
            d.pop()
        return "(" + ",".join(_fmt_half(v) for v in d) + ")" if d else "(0)"

    def to_json(self) -> dict:
        return {"doubled": list(self.doubled)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Weight":
        return cls(tuple(obj["doubled"]))


def _fmt_half(v: int) -> str:
    return str(v // 2) if v % 2 == 0 else f"{v}/2"


def _check_rank(a: Algebra, w: Doubled) -> None:
    if len(w) != a.rank:
        raise WeightError(f"dimension mismatch: {a} needs {a.rank} coordinates, got {len(w)}")


def _raw(w: Weight | Doubled) -> Doubled:
    return w.doubled if isinstance(w, Weight) else tuple(w)


# ---------------------------------------------------------------- Weyl group


def canonical(a: Algebra, w: Doubled) -> Doubled:
    """The dominant representative of the Weyl orbit of ``w`` (doubled coordinates)."""
    s = sorted((abs(v) for v in w), reverse=True)
    if a.family == "D" and s[-1] != 0 and sum(v < 0 for v in w) % 2:
        s[-1] = -s[-1]
    return tuple(s)


def _is_dominant(a: Algebra, w: Doubled) -> bool:
    for x, y in zip(w, w[1:-1] if a.family == "D" else w[1:]):
        if x < y:
            return False
    if a.family == "B":
        return w[-1] >= 0
    return a.rank < 2 or w[-2] >= abs(w[-1])


def is_dominant_integral(a: Algebra, w: Weight | Doubled) -> bool:
    w = _raw(w)
    _check_rank(a, w)
    if len({v % 2 for v in w}) > 1:
        return False
    return _is_dominant(a, w)


def orbit_size(a: Algebra, w: Doubled) -> int:
    """Size of the Weyl orbit through ``w``."""
    counts = Counter(abs(v) for v in w)
    n = math.factorial(len(w))
    for c in counts.values():
        n //= math.factorial(c)
    nonzero = len(w) - counts.get(0, 0)
    n <<= nonzero
    if a.family == "D" and counts.get(0, 0) == 0:
        n //= 2
    return n


def weyl_orbit(a: Algebra, w: Weight | Doubled) -> set[Weight]:
    """All Weyl conjugates of ``w``: signed permutations, even sign changes for type D."""
    from sympy.utilities.iterables import multiset_permutations

    raw = _raw(w)
    _check_rank(a, raw)
    return {Weight(p) for p in _orbit_points(a, raw, multiset_permutations)}


def _orbit_points(a: Algebra, w: Doubled, perms=None) -> Iterator[Doubled]:
    if perms is None:
        from sympy.utilities.iterables import multiset_permutations as perms
    has_zero = 0 in w
    parity = sum(v < 0 for v in w) % 2
    for p in perms(sorted(abs(v) for v in w)):
        nz = [i for i, v in enumerate(p) if v]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            if a.family == "D" and not has_zero and signs.count(-1) % 2 != parity:
                continue
            q = list(p)
            for i, s in zip(nz, signs):
                q[i] *= s
            yield tuple(q)


def rho(a: Algebra) -> Doubled:
    r = a.rank
    if a.family == "B":
        return tuple(2 * (r - i) - 1 for i in range(r))
    return tuple(2 * (r - 1 - i) for i in range(r))


def rho_height(a: Algebra, w: Doubled) -> int:
    return sum(x * y for x, y in zip(rho(a), w))


def sort_key(a: Algebra, w: Doubled) -> tuple:
    """Canonical order: descending rho-height, then descending lexicographic."""
    return (-rho_height(a, w), tuple(-v for v in w))


@lru_cache(maxsize=None)
def positive_roots(a: Algebra) -> tuple[Doubled, ...]:
    r = a.rank
    roots = []
    for i, j in itertools.combinations(range(r), 2):
        for s in (1, -1):
            v = [0] * r
            v[i], v[j] = 2, 2 * s
            roots.append(tuple(v))
    if a.family == "B":
        for i in range(r):
            v = [0] * r
            v[i] = 2
            roots.append(tuple(v))
    return tuple(roots)


def weyl_dim(a: Algebra, w: Weight | Doubled) -> int:
    raw = _raw(w)
    if not is_dominant_integral(a, raw):
        raise WeightError(f"{Weight(raw)} is not dominant integral for {a}")
    return _weyl_dim(a, raw)


@lru_cache(maxsize=4096)
def _weyl_dim(a: Algebra, w: Doubled) -> int:
    rh = rho(a)
    lr = [x + y for x, y in zip(w, rh)]
    num, den = 1, 1
    for i, j in itertools.combinations(range(a.rank), 2):
        num *= lr[i] * lr[i] - lr[j] * lr[j]
        den *= rh[i] * rh[i] - rh[j] * rh[j]
    if a.family == "B":
        for x, y in zip(lr, rh):
            num *= x
            den *= y
    q = Fraction(num, den)
    assert q.denominator == 1
    return int(q)


def fundamental_weights(a: Algebra) -> list[Weight]:
    r = a.rank
    out = [Weight((2,) * i + (0,) * (r - i)) for i in range(1, r + 1)]
    if a.family == "B":
        out[-1] = Weight((1,) * r)
    else:
        out[-2] = Weight((1,) * (r - 1) + (-1,))
        out[-1] = Weight((1,) * r)
    return out


# ---------------------------------------------------------------- characters


@dataclass(frozen=True)
class Character:
    """A Weyl-invariant integer combination of weights.

    ``orbits`` maps each dominant representative to the multiplicity shared by
    every weight in its orbit.  Multiplicities may be negative (virtual
    characters); zeros are never stored.
    """

    algebra: Algebra
    orbits: Mapping[Doubled, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for w, m in self.orbits.items():
            w = tuple(w)
            if m:
                clean[w] = clean.get(w, 0) + m
        object.__setattr__(self, "orbits", {w: m for w, m in clean.items() if m})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Character) and self.algebra == other.algebra and self.orbits == other.orbits

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self.orbits.items())))

    @classmethod
    def trivial(cls, a: Algebra, mult: int = 1) -> "Character":
        return cls(a, {(0,) * a.rank: mult})

    @classmethod
    def orbit_sum(cls, a: Algebra, w: Weight | Doubled, mult: int = 1) -> "Character":
        raw = _raw(w)
        _check_rank(a, raw)
        return cls(a, {canonical(a, raw): mult})

    @classmethod
    def from_weights(cls, a: Algebra, weights: Mapping[Doubled, int]) -> "Character":
        """Build from a full weight-multiplicity map, rejecting non-invariant input."""
        orbits: dict[Doubled, int] = {}
        for w, m in weights.items():
            if not m:
                continue
            _check_rank(a, tuple(w))
            c = canonical(a, tuple(w))
            if c in orbits and orbits[c] != m:
                raise WeightError(f"not Weyl-invariant: {Weight(tuple(w))} has {m}, orbit has {orbits[c]}")
            orbits[c] = m
        ch = cls(a, orbits)
        if ch.support_size() != sum(1 for m in weights.values() if m):
            raise WeightError("not Weyl-invariant: some orbits are incomplete")
        return ch

    def __bool__(self) -> bool:
        return bool(self.orbits)

    def __getitem__(self, w: Weight | Doubled) -> int:
        raw = _raw(w)
        return self.orbits.get(canonical(self.algebra, raw), 0)

    def _same(self, other: "Character") -> None:
        if self.algebra != other.algebra:
            raise WeightError(f"algebra mismatch: {self.algebra} vs {other.algebra}")

    def __add__(self, other: "Character") -> "Character":
        self._same(other)
        out = dict(self.orbits)
        for w, m in other.orbits.items():
            out[w] = out.get(w, 0) + m
        return Character(self.algebra, out)

    def __sub__(self, other: "Character") -> "Character":
        return self + other.scale(-1)

    def __neg__(self) -> "Character":
        return self.scale(-1)

    def scale(self, c: int) -> "Character":
        return Character(self.algebra, {w: c * m for w, m in self.orbits.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        from .charring import mul

        return mul(self, other)

    __rmul__ = __mul__

    def dominant_items(self) -> list[tuple[Doubled, int]]:
        return sorted(self.orbits.items(), key=lambda kv: sort_key(self.algebra, kv[0]))

    def weights(self) -> dict[Doubled, int]:
        """Full weight-multiplicity map (every orbit expanded)."""
        out = {}
        for w, m in self.orbits.items():
            for p in _orbit_points(self.algebra, w):
                out[p] = m
        return out

    def support_size(self) -> int:
        return sum(orbit_size(self.algebra, w) for w in self.orbits)

    def dim(self) -> int:
        """Evaluation at x_i = 1."""
        return sum(m * orbit_size(self.algebra, w) for w, m in self.orbits.items())

    @property
    def is_genuine(self) -> bool:
        return all(m > 0 for m in self.orbits.values())

    def to_json(self) -> list[dict]:
        return [{"w": list(w), "m": m} for w, m in sorted(self.weights().items(), key=lambda kv: sort_key(self.algebra, kv[0]))]

    @classmethod
    def from_json(cls, a: Algebra, items: Iterable[Mapping]) -> "Character":
        weights = {}
        for it in items:
            w = it["w"]["doubled"] if isinstance(it["w"], Mapping) else it["w"]
            weights[tuple(w)] = weights.get(tuple(w), 0) + int(it["m"])
        return cls.from_weights(a, weights)

    def __repr__(self) -> str:
        body = " + ".join(f"{m}*{Weight(w).short()}" for w, m in self.dominant_items()[:8])
        more = "" if len(self.orbits) <= 8 else " + ..."
        return f"Character[{self.algebra}]({body}{more})"


def _dominant_weights_below(a: Algebra, lam: Doubled) -> list[Doubled]:
    """Dominant weights of the irreducible module with highest weight ``lam``."""
    roots = positive_roots(a)
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for al in roots:
            ip = sum(x * y for x, y in zip(mu, al))
            if ip <= 0:
                continue
            # mu - k*al stays a weight for 1 <= k <= <mu, al^vee>
            steps = 2 * ip // sum(x * x for x in al)
            for k in range(1, steps + 1):
                nu = canonical(a, tuple(x - k * y for x, y in zip(mu, al)))
                if nu not in seen:
                    seen.add(nu)
                    stack.append(nu)
    return sorted(seen, key=lambda w: sort_key(a, w))


@lru_cache(maxsize=512)
def _freudenthal(a: Algebra, lam: Doubled) -> dict[Doubled, int]:
    rh = rho(a)
    roots = positive_roots(a)

    def norm(v):
        return sum(x * x for x in v)

    top = norm([x + y for x, y in zip(lam, rh)])
    mult: dict[Doubled, int] = {}
    for mu in _dominant_weights_below(a, lam):
        if mu == lam:
            mult[mu] = 1
            continue
        total = 0
        for al in roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, al))
                m = mult.get(canonical(a, nu))
                if m is None:
                    break
                total += m * sum(x * y for x, y in zip(nu, al))
                k += 1
        den = top - norm([x + y for x, y in zip(mu, rh)])
        val, rem = divmod(2 * total, den)
        if rem:
            raise ArithmeticError(f"non-integral multiplicity at {mu} in V{lam}")
        if val:
            mult[mu] = val
    return mult


def irreducible_character(a: Algebra, w: Weight | Doubled) -> Character:
    """Formal character of the irreducible module with dominant highest weight ``w``."""
    raw = _raw(w)
    if not is_dominant_integral(a, raw):
        raise WeightError(f"{Weight(raw)} is not dominant integral for {a}")
    return Character(a, _freudenthal(a, raw))


@dataclass(frozen=True)
class Decomposition:
    algebra: Algebra
    parts: tuple[tuple[Weight, int], ...]

    def __post_init__(self) -> None:
        merged: dict[Doubled, int] = {}
        for w, m in self.parts:
            raw = _raw(w)
            if not is_dominant_integral(self.algebra, raw):
                raise WeightError(f"{Weight(raw)} is not dominant integral for {self.algebra}")
            if m <= 0:
                raise WeightError("multiplicities in a decomposition must be positive")
            merged[raw] = merged.get(raw, 0) + m
        parts = tuple((Weight(w), m) for w, m in sorted(merged.items(), key=lambda kv: sort_key(self.algebra, kv[0])))
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, a: Algebra, spec: Mapping) -> "Decomposition":
        """``spec`` maps weights (Weight, tuples of values, or strings) to multiplicities."""
        parts = []
        for w, m in spec.items():
            if isinstance(w, str):
                w = Weight.parse(w)
            elif not isinstance(w, Weight):
                w = Weight.of(*w) if w else Weight(())
            parts.append((w.padded(a.rank), m))
        return cls(a, tuple(parts))

    def as_dict(self) -> dict[Doubled, int]:
        return {w.doubled: m for w, m in self.parts}

    def character(self) -> Character:
        out = Character(self.algebra)
        for w, m in self.parts:
            out = out + irreducible_character(self.algebra, w).scale(m)
        return out

    def dim(self) -> int:
        return sum(m * weyl_dim(self.algebra, w) for w, m in self.parts)

    def __str__(self) -> str:
        return " ".join(f"{w.short()}:{m}" for w, m in self.parts)

    def to_json(self) -> dict:
        return {"algebra": str(self.algebra), "parts": [{"w": w.to_json(), "m": m} for w, m in self.parts]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Decomposition":
        a = parse_algebra(obj["algebra"])
        return cls(a, tuple((Weight.from_json(p["w"]), int(p["m"])) for p in obj["parts"]))


# ---------------------------------------------------------- Mukai completion


def _mukai_basis(b2: int):
    """Basis labels of so(b2+2) graded as wedge^2 Vbar + Q h + Vbar_{-2} + Vbar_{2}."""
    pairs = list(itertools.combinations(range(b2), 2))
    labels = [("e", p) for p in pairs] + [("h", None)] + [("a", i) for i in range(b2)] + [("b", i) for i in range(b2)]
    return labels, {lab: k for k, lab in enumerate(labels)}


def mukai_structure_constants(b2: int, wedge_scale: Fraction = Fraction(2)) -> dict[tuple[int, int], dict[int, Fraction]]:
    """Brackets of basis elements from the graded rules, with qbar the identity form.

    ``e_i ^ e_j`` acts on Vbar as ``v -> wedge_scale * (qbar(e_i, v) e_j - qbar(e_j, v) e_i)``;
    ``[a_i, b_j] = e_i ^ e_j + qbar(e_i, e_j) h`` and ``[h, a] = -2a``, ``[h, b] = 2b``.
    """
    labels, index = _mukai_basis(b2)
    c = Fraction(wedge_scale)

    def wedge(i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return {index[("e", (i, j))]: Fraction(1)}
        return {index[("e", (j, i))]: Fraction(-1)}

    def act(p: tuple[int, int], k: int) -> dict[int, Fraction]:
        # (e_i ^ e_j).e_k = c (delta_ik e_j - delta_jk e_i)
        i, j = p
        out: dict[int, Fraction] = {}
        if k == i:
            out[j] = out.get(j, 0) + c
        if k == j:
            out[i] = out.get(i, 0) - c
        return out

    def unit(p: tuple[int, int]) -> np.ndarray:
        # e_i ^ e_j acts as c * unit(p)
        m = np.zeros((b2, b2), dtype=np.int64)
        m[p[1], p[0]], m[p[0], p[1]] = 1, -1
        return m

    units = {p: unit(p) for p in itertools.combinations(range(b2), 2)}

    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for x, lx in enumerate(labels):
        for y, ly in enumerate(labels):
            kx, vx = lx
            ky, vy = ly
            res: dict[int, Fraction] = {}
            if kx == "e" and ky == "e":
                if set(vx).isdisjoint(vy):
                    continue
                ux, uy = units[vx], units[vy]
                com = ux @ uy - uy @ ux
                # [c ux, c uy] = c * (c com), read back in the basis c * unit
                for j, i in zip(*np.nonzero(np.tril(com))):
                    res[index[("e", (int(i), int(j)))]] = c * int(com[j, i])
            elif kx == "e" and ky in "ab":
                res = {index[(ky, t)]: v for t, v in act(vx, vy).items()}
            elif ky == "e" and kx in "ab":
                res = {index[(kx, t)]: -v for t, v in act(vy, vx).items()}
            elif kx == "h" and ky in "ab":
                res = {y: Fraction(-2 if ky == "a" else 2)}
            elif ky == "h" and kx in "ab":
                res = {x: Fraction(2 if kx == "a" else -2)}
            elif kx == "a" and ky == "b":
                res = dict(wedge(vx, vy))
                if vx == vy:
                    res[index[("h", None)]] = Fraction(1)
            elif kx == "b" and ky == "a":
                res = {k: -v for k, v in wedge(vy, vx).items()}
                if vx == vy:
                    res[index[("h", None)]] = Fraction(-1)
            res = {k: v for k, v in res.items() if v}
            if res:
                out[(x, y)] = res
    return out


def _jacobi_holds(d: int, sc: dict[tuple[int, int], dict[int, Fraction]]) -> bool:
    """Every basis element acts as a derivation of the bracket (Jacobi on a basis)."""
    vals = [v for r in sc.values() for v in r.values()]
    scale = math.lcm(*(Fraction(v).denominator for v in vals)) if vals else 1
    rows, cols, data = [], [], []
    for (x, y), res in sc.items():
        for z, v in res.items():
            iv = v * scale
            if iv.denominator != 1:
                return False
            rows.append(z)
            cols.append(x * d + y)
            data.append(int(iv))
    # bracket as a (d, d*d) matrix, scaled to integers; scale cancels in the identity
    br = sparse.csr_matrix((np.array(data, dtype=np.int64), (rows, cols)), shape=(d, d * d))
    eye = sparse.identity(d, dtype=np.int64, format="csr")
    for x in range(d):
        ad = br[:, x * d:(x + 1) * d]
        lhs = ad @ br
        rhs = br @ (sparse.kron(ad, eye, format="csr") + sparse.kron(eye, ad, format="csr"))
        diff = (lhs - rhs).tocsr()
        diff.eliminate_zeros()
        if diff.nnz:
            return False
    return True


def _matrix_realization(b2: int) -> list[np.ndarray]:
    """Basis elements as matrices on Q e_+ + Vbar + Q e_- with q = qbar + hyperbolic plane."""
    labels, _ = _mukai_basis(b2)
    m = b2 + 2
    P, M = 0, b2 + 1  # positions of e_+ and e_-
    mats = []
    for kind, v in labels:
        x = np.zeros((m, m), dtype=np.int64)
        if kind == "e":
            i, j = v
            x[1 + j, 1 + i] += 2
            x[1 + i, 1 + j] -= 2
        elif kind == "h":
            x[P, P], x[M, M] = 2, -2
        elif kind == "a":
            # lowers degree: e_+ -> a, v -> -qbar(a, v) e_-
            x[1 + v, P] = 1
            x[M, 1 + v] = -1
        else:
            x[1 + v, M] = 2
            x[P, 1 + v] = -2
        mats.append(x)
    return mats


def mukai_bracket_check(b2: int, wedge_scale: Fraction | int = 2) -> bool:
    """Check the graded bracket rules define so(b2+2).

    Verifies the Jacobi identity on the full basis and closure: the explicit
    matrix model on the Mukai-completed quadratic space is an injective bracket
    homomorphism into so(q), hence onto by dimension count.
    """
    if b2 < 3:
        raise WeightError("b2 must be at least 3")
    labels, _ = _mukai_basis(b2)
    d = len(labels)
    if d != (b2 + 2) * (b2 + 1) // 2:
        return False
    sc = mukai_structure_constants(b2, Fraction(wedge_scale))
    if not _jacobi_holds(d, sc):
        return False
    mats = _matrix_realization(b2)
    m = b2 + 2
    gram = np.zeros((m, m), dtype=np.int64)
    gram[1:-1, 1:-1] = np.eye(b2, dtype=np.int64)
    gram[0, -1] = gram[-1, 0] = 1
    for x in mats:
        if np.any(x.T @ gram + gram @ x):
            return False
    stack = np.array(mats)
    if np.linalg.matrix_rank(stack.reshape(d, -1).astype(float)) != d:
        return False
    rows, cols, data = [], [], []
    for (x, y), res in sc.items():
        for z, v in res.items():
            if Fraction(v).denominator != 1:
                return False
            rows.append(x * d + y)
            cols.append(z)
            data.append(int(v))
    table = sparse.csr_matrix((np.array(data, dtype=np.int64), (rows, cols)), shape=(d * d, d))
    flat = stack.reshape(d, -1)
    for x in range(d):
        com = (np.matmul(stack[x], stack) - np.matmul(stack, stack[x])).reshape(d, -1)
        img = table[x * d:(x + 1) * d] @ flat
        if np.any(com != img):
            return False
    return True
