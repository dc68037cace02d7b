"""Rational Ext tables between tensor, symmetric and exterior powers.

Over Q, ``Ext(F^n o a, G^m o a)`` is the space of coinvariants of
``Q[Surj(m, n)]`` (degree m - n) under S_n x S_m, with the exterior
powers twisting their side by the sign character.  Coinvariants of a
monomial action are counted orbit by orbit: an orbit survives iff its
stabilizer acts with sign +1.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

from .surjections import (
    Surjection,
    enumerate_surjections,
    left_action_sign,
    perm_inverse,
    perm_sign,
    right_action_sign,
    transposition,
)


class CocycleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# counting


@lru_cache(maxsize=None)
def stirling(m: int, n: int) -> int:
    """Set partitions of an m-set into n nonempty blocks."""
    if m < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if m == n:
        return 1
    if n == 0 or n > m:
        return 0
    return n * stirling(m - 1, n) + stirling(m - 1, n - 1)


@lru_cache(maxsize=None)
def partitions_into_parts(m: int, n: int) -> int:
    """Partitions of the integer m into exactly n positive parts."""
    if m < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if m == n:
        return 1
    if n == 0 or n > m:
        return 0
    # either some part is 1, or subtract 1 from every part
    return partitions_into_parts(m - 1, n - 1) + partitions_into_parts(m - n, n)


def distinct_partitions_into_parts(m: int, n: int) -> int:
    """Partitions of m into exactly n pairwise distinct positive parts."""
    if m < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    shift = n * (n - 1) // 2
    if m < shift:
        return 0
    return partitions_into_parts(m - shift, n)


def compositions(m: int, n: int) -> int:
    """Ordered sequences of n positive integers summing to m."""
    if m < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if n == 0:
        return 1 if m == 0 else 0
    if m < n:
        return 0
    return math.comb(m - 1, n - 1)


def bell(d: int) -> int:
    if d < 0:
        raise ValueError("argument must be nonnegative")
    return sum(stirling(d, l) for l in range(d + 1))


def partitions(d: int) -> int:
    if d < 0:
        raise ValueError("argument must be nonnegative")
    return sum(partitions_into_parts(d, n) for n in range(d + 1))


# ---------------------------------------------------------------------------
# signed actions


@dataclass
class SignedGroupAction:
    """Monomial action ``g.[e] = alpha(g, e) [g.e]`` of a group on Q[carrier].

    ``act(g, e)`` returns ``(alpha(g, e), g.e)``.  ``generators`` must
    generate the group; ``multiply(g, h)`` (g after h) is only needed for
    :meth:`check_cocycle`.
    """

    carrier: list
    generators: list
    act: Callable[[Hashable, Hashable], tuple[int, Hashable]]
    multiply: Callable | None = None

    def check_cocycle(self, elements: Iterable | None = None, max_points: int | None = None) -> None:
        """alpha(gh, e) = alpha(g, h.e) alpha(h, e) over the given group
        elements (default: the generators) and carrier points (default: all,
        or ``max_points`` evenly spaced ones)."""
        if self.multiply is None:
            return
        elems = list(self.generators if elements is None else elements)
        points = self.carrier
        if max_points is not None and len(points) > max_points:
            step = len(points) / max_points
            points = [points[int(i * step)] for i in range(max_points)]
        for g, h in itertools.product(elems, repeat=2):
            gh = self.multiply(g, h)
            for e in points:
                a_h, he = self.act(h, e)
                a_g, ghe = self.act(g, he)
                a_gh, ghe2 = self.act(gh, e)
                if ghe != ghe2 or a_gh != a_g * a_h:
                    raise CocycleError(f"cocycle fails at g={g}, h={h}, e={e}")


COCYCLE_SAMPLE = 64


def coinvariants_dimension(action: SignedGroupAction, check: bool = True) -> int:
    """dim Q[E]_G: orbits on which the stabilizer acts with sign +1.

    Each orbit is explored along generator edges, recording the sign with
    which every point is identified to the base point in the coinvariants.
    Reaching a point twice with opposite signs exhibits a stabilizer
    element acting by -1, and the orbit dies.
    """
    if check:
        action.check_cocycle(max_points=COCYCLE_SAMPLE)
    seen: dict = {}
    dim = 0
    for start in action.carrier:
        if start in seen:
            continue
        seen[start] = 1
        alive = True
        queue = deque([start])
        while queue:
            e = queue.popleft()
            for g in action.generators:
                a, ge = action.act(g, e)
                # [g.e] = alpha(g,e)^-1 [e] in the coinvariants
                s = seen[e] * a
                if ge not in seen:
                    seen[ge] = s
                    queue.append(ge)
                elif seen[ge] != s:
                    alive = False
        dim += alive
    return dim


# ---------------------------------------------------------------------------
# functor kinds


class Kind(str, Enum):
    TENSOR = "T"
    SYMMETRIC = "S"
    EXTERIOR = "L"


_NAMES = {"T": Kind.TENSOR, "S": Kind.SYMMETRIC, "L": Kind.EXTERIOR, "Λ": Kind.EXTERIOR}


@dataclass(frozen=True)
class FunctorKind:
    kind: Kind
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "FunctorKind":
        """``T^3``, ``S^2``, ``L^4`` or ``Λ^4``."""
        text = text.strip()
        head, sep, tail = text.partition("^")
        if not sep or head not in _NAMES or not tail.isdigit():
            raise ValueError(f"cannot parse functor {text!r}; expected T^n, S^n or L^n")
        return cls(_NAMES[head], int(tail))

    def __str__(self) -> str:
        return f"{self.kind.value}^{self.exponent}"


@dataclass(frozen=True)
class ExtTableEntry:
    source: FunctorKind
    target: FunctorKind
    degree: int
    dimension: int

    def to_json_obj(self) -> dict:
        return {
            "source": str(self.source),
            "target": str(self.target),
            "degree": self.degree,
            "dimension": self.dimension,
        }


def _product_multiply(g, h):
    return (tuple(g[0][x - 1] for x in h[0]), tuple(g[1][x - 1] for x in h[1]))


def surjection_action(source: FunctorKind, target: FunctorKind) -> SignedGroupAction:
    """S_n x S_m acting on Surj(m, n) by f -> sigma' o f o sigma''^-1, with
    the signed actions on Ext(T^n, T^m) and sign twists for exterior sides.
    A tensor-power side contributes no group."""
    n, m = source.exponent, target.exponent
    carrier = enumerate_surjections(m, n)
    ident_n, ident_m = tuple(range(1, n + 1)), tuple(range(1, m + 1))
    gens = []
    if source.kind is not Kind.TENSOR:
        gens += [(transposition(n, j, j + 1), ident_m) for j in range(1, n)]
    if target.kind is not Kind.TENSOR:
        gens += [(ident_n, transposition(m, j, j + 1)) for j in range(1, m)]
    twist_n = source.kind is Kind.EXTERIOR
    twist_m = target.kind is Kind.EXTERIOR

    def act(g, f: Surjection):
        left, right = g
        a, h = right_action_sign(f, perm_inverse(right))
        b, h = left_action_sign(left, h)
        sign = a * b
        if twist_n:
            sign *= perm_sign(left)
        if twist_m:
            sign *= perm_sign(right)
        return sign, h

    return SignedGroupAction(carrier, gens, act, _product_multiply)


@lru_cache(maxsize=None)
def rational_ext(source: FunctorKind, target: FunctorKind) -> ExtTableEntry:
    """Rational Ext between power functors of the abelianization, counted
    as signed coinvariants of Q[Surj(m, n)]."""
    dim = coinvariants_dimension(surjection_action(source, target))
    return ExtTableEntry(source, target, target.exponent - source.exponent, dim)


def closed_form_ext(source: FunctorKind, target: FunctorKind) -> ExtTableEntry:
    """The closed-form table; the degree is always m - n."""
    n, m = source.exponent, target.exponent
    a, b = source.kind, target.kind
    T, S, L = Kind.TENSOR, Kind.SYMMETRIC, Kind.EXTERIOR
    if m < n:
        dim = 0
    elif (a, b) == (T, T):
        dim = math.factorial(n) * stirling(m, n)
    elif (a, b) == (L, L):
        dim = partitions_into_parts(m, n)
    elif (a, b) == (S, S):
        dim = 1 if n == m else 0
    elif (a, b) == (L, S):
        dim = 1 if n == m <= 1 else 0
    elif (a, b) == (S, L):
        dim = 1 if (n == m == 0 or (n == 1 and m >= 1)) else 0
    elif b is T:
        dim = stirling(m, n)
    elif b is S:
        dim = compositions(m, n) if n == m else 0
    else:
        dim = compositions(m, n)
    return ExtTableEntry(source, target, m - n, dim)


def transcribed_ext(source: FunctorKind, target: FunctorKind) -> ExtTableEntry:
    """Orbit count using the stabilizer generators (block transpositions of
    equal-size fibers, transpositions inside a fiber) and their tabulated
    signs, instead of evaluating the action."""
    n, m = source.exponent, target.exponent
    a, b = source.kind, target.kind
    T, S, L = Kind.TENSOR, Kind.SYMMETRIC, Kind.EXTERIOR

    def block_sign(size):
        if (a, b) == (S, S):
            return -1 if (size * size + 1) % 2 else 1
        if (a, b) == (S, L):
            return -1
        if (a, b) == (L, S):
            return -1 if (size * size) % 2 else 1
        return 1

    def fiber_sign():
        return -1 if b is S else 1

    def good(f):
        sizes = f.fiber_sizes()
        if a is not T and b is not T:
            for i, j in itertools.combinations(range(n), 2):
                if sizes[i] == sizes[j] and block_sign(sizes[i]) == -1:
                    return False
        if b is not T and any(s >= 2 for s in sizes) and fiber_sign() == -1:
            return False
        return True

    def orbit_key(f):
        if a is not T and b is not T:
            return tuple(sorted(f.fiber_sizes()))
        if a is not T:
            return frozenset(frozenset(f.fiber(k)) for k in range(1, n + 1))
        if b is not T:
            return f.fiber_sizes()
        return f

    keys = {orbit_key(f) for f in enumerate_surjections(m, n) if good(f)}
    return ExtTableEntry(source, target, m - n, len(keys))


def rational_tor(source: FunctorKind, target: FunctorKind) -> ExtTableEntry:
    """Rational Tor, dual to Ext; the dimensions agree."""
    return rational_ext(source, target)


PAIRS = [
    (Kind.EXTERIOR, Kind.EXTERIOR),
    (Kind.SYMMETRIC, Kind.SYMMETRIC),
    (Kind.EXTERIOR, Kind.SYMMETRIC),
    (Kind.SYMMETRIC, Kind.EXTERIOR),
    (Kind.EXTERIOR, Kind.TENSOR),
    (Kind.SYMMETRIC, Kind.TENSOR),
    (Kind.TENSOR, Kind.SYMMETRIC),
    (Kind.TENSOR, Kind.EXTERIOR),
]


@dataclass
class TableRow:
    source: FunctorKind
    target: FunctorKind
    degree: int
    dimension: int
    closed_form: int

    @property
    def match(self) -> bool:
        return self.dimension == self.closed_form

    def to_json_obj(self) -> dict:
        return {
            "source": str(self.source),
            "target": str(self.target),
            "degree": self.degree,
            "dimension": self.dimension,
            "closed_form": self.closed_form,
            "match": self.match,
        }


def ext_table(max_size: int, pairs: Sequence = PAIRS, compute=rational_ext) -> list[TableRow]:
    rows = []
    for a, b in pairs:
        for n in range(max_size + 1):
            for m in range(max_size + 1):
                src, tgt = FunctorKind(a, n), FunctorKind(b, m)
                e = compute(src, tgt)
                rows.append(TableRow(src, tgt, e.degree, e.dimension, closed_form_ext(src, tgt).dimension))
    return rows


def stable_homology_cells(functor: Kind, d: int) -> list[tuple[int, int, int]]:
    """Nonzero cells (k, l, dim Ext^k(L^l, F^d)) feeding stable homology."""
    target = FunctorKind(functor, d)
    cells = []
    for l in range(d + 1):
        e = rational_ext(FunctorKind(Kind.EXTERIOR, l), target)
        if e.dimension:
            cells.append((e.degree, l, e.dimension))
    return cells


def stable_homology(functor: Kind, d: int) -> list[tuple[int, int]]:
    """(degree i, dim) for i = 0 .. d + 1, assembled as the sum over
    k + l = i of dim Ext^k(L^l, F^d)."""
    dims = [0] * (d + 2)
    for k, l, dim in stable_homology_cells(Kind(functor), d):
        dims[k + l] += dim
    return list(enumerate(dims))


def stable_homology_prediction(functor: Kind, d: int) -> list[tuple[int, int]]:
    functor = Kind(functor)
    dims = [0] * (d + 2)
    if functor is Kind.TENSOR:
        dims[d] = bell(d)
    elif functor is Kind.EXTERIOR:
        dims[d] = partitions(d)
    elif d <= 1:
        dims[d] = 1
    return list(enumerate(dims))


# ---------------------------------------------------------------------------
# rendering


def render_csv(rows: Sequence, columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        obj = r if isinstance(r, dict) else r.to_json_obj()
        w.writerow([obj[c] for c in columns])
    return buf.getvalue()


def render_json(rows: Sequence) -> str:
    objs = [r if isinstance(r, dict) else r.to_json_obj() for r in rows]
    return json.dumps(objs, indent=2, sort_keys=False) + "\n"


def render_markdown_grid(rows: Sequence[TableRow]) -> str:
    """One n-by-m grid per (source kind, target kind), cells 'dim@degree';
    cells that disagree with the closed form show both as 'got/expected'."""
    out = []
    groups: dict = {}
    for r in rows:
        groups.setdefault((r.source.kind, r.target.kind), []).append(r)
    for (a, b), rs in groups.items():
        ns = sorted({r.source.exponent for r in rs})
        ms = sorted({r.target.exponent for r in rs})
        cell = {(r.source.exponent, r.target.exponent): r for r in rs}
        out.append(f"### Ext({a.value}^n, {b.value}^m)\n")
        out.append("| n \\ m | " + " | ".join(map(str, ms)) + " |")
        out.append("|---" * (len(ms) + 1) + "|")
        for n in ns:
            items = []
            for m in ms:
                r = cell[(n, m)]
                if not r.match:
                    items.append(f"**{r.dimension}/{r.closed_form}**")
                elif r.dimension:
                    items.append(f"{r.dimension}@{r.degree}")
                else:
                    items.append("0")
            out.append(f"| {n} | " + " | ".join(items) + " |")
        out.append("")
    return "\n".join(out)
