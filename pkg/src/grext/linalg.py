"""Exact integer and rational linear algebra.

Matrices are sparse maps ``(row, col) -> int`` over Python's arbitrary
precision integers.  Cohomology of integer cochain complexes is read off
from elementary divisors; induced maps on rational cohomology use exact
:class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class ComplexError(ValueError):
    """A complex or chain map violates its defining identities."""


class WindowError(ValueError):
    """Cohomology was requested outside the degrees a complex can answer."""


# ---------------------------------------------------------------------------
# Integer matrices


class IntegerMatrix:
    """Sparse exact integer matrix.  Zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = int(v)
                if v:
                    clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def _trusted(cls, rows, cols, entries):
        # skips validation; callers guarantee nonzero, in-range entries
        m = cls.__new__(cls)
        m.rows, m.cols, m.entries = rows, cols, entries
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls._trusted(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, data, cols: int | None = None) -> "IntegerMatrix":
        data = [list(row) for row in data]
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = int(v)
        return cls._trusted(rows, cols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix._trusted(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return IntegerMatrix._trusted(self.rows, self.cols, out)

    def __neg__(self) -> "IntegerMatrix":
        return self.scale(-1)

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + (-other)

    def scale(self, k: int) -> "IntegerMatrix":
        if k == 0:
            return IntegerMatrix(self.rows, self.cols)
        return IntegerMatrix._trusted(
            self.rows, self.cols, {key: k * v for key, v in self.entries.items()}
        )

    def row_dicts(self) -> list[dict[int, int]]:
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def col_dicts(self) -> list[dict[int, int]]:
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = other.row_dicts()
        out: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in other_rows[k].items():
                key = (r, c)
                s = out.get(key, 0) + v * w
                if s:
                    out[key] = s
                else:
                    del out[key]
        return IntegerMatrix._trusted(self.rows, other.cols, out)

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Multiply a sparse column vector ``{index: value}``."""
        cols = self.col_dicts()
        out: dict = {}
        for c, x in vec.items():
            for r, v in cols[c].items():
                s = out.get(r, 0) + v * x
                if s:
                    out[r] = s
                else:
                    del out[r]
        return out

    def kron(self, other: "IntegerMatrix") -> "IntegerMatrix":
        out = {}
        orows, ocols = other.rows, other.cols
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                out[(r1 * orows + r2, c1 * ocols + c2)] = v1 * v2
        return IntegerMatrix._trusted(self.rows * orows, self.cols * ocols, out)

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self.to_dense())

    # serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, v] for (r, c), v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "IntegerMatrix":
        return cls(obj["rows"], obj["cols"], {(r, c): v for r, c, v in obj["entries"]})

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "IntegerMatrix":
        return cls.from_json_obj(json.loads(text))


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank`` plus cyclic torsion ``Z/d_1 + Z/d_2 + ...`` with d_1 | d_2 | ..."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_divisors(cls, free_rank: int, divisors: Iterable[int]) -> "FgAbelianGroup":
        """Build from arbitrary positive invariant factors, dropping units."""
        return cls(free_rank, _normalize_divisors(divisors))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json_obj(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _normalize_divisors(divisors: Iterable[int]) -> tuple[int, ...]:
    # regroup arbitrary cyclic factors into a divisibility chain (via primes)
    from math import gcd

    ds = sorted(abs(int(d)) for d in divisors if abs(int(d)) > 1)
    ok = all(b % a == 0 for a, b in zip(ds, ds[1:]))
    if ok:
        return tuple(ds)
    # Z/a + Z/b = Z/gcd + Z/lcm; repeat until sorted chain
    ds = list(ds)
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                g = gcd(a, b)
                lcm = a * b // g
                if (g, lcm) != (a, b):
                    ds[i], ds[j] = g, lcm
                    changed = True
        ds = sorted(d for d in ds if d > 1)
    return tuple(ds)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: IntegerMatrix):
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and U, V unimodular.

    D is diagonal with nonnegative entries d_1 | d_2 | ... .  Pivots are
    chosen by smallest absolute value, ties broken by the smallest row and
    column support.
    """
    rows, cols = m.rows, m.cols
    a = m.to_dense()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row_dst += k * row_src
        ra, rs = a[dst], a[src]
        for c in range(cols):
            if rs[c]:
                ra[c] += k * rs[c]
        ua, us = u[dst], u[src]
        for c in range(rows):
            if us[c]:
                ua[c] += k * us[c]

    def add_col(src, dst, k):
        for row in a:
            if row[src]:
                row[dst] += k * row[src]
        for row in v:
            if row[src]:
                row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                x = row[j]
                if x:
                    key = (abs(x), _support(a, i, j, t, rows, cols))
                    if best is None or key < best[0]:
                        best = (key, i, j)
                        if abs(x) == 1 and key[1] == 0:
                            break
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(t, i, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(t, j, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/col t into the pivot
                cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # divisibility: pivot must divide every entry of the remaining block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (
        IntegerMatrix.from_dense(u, rows),
        IntegerMatrix.from_dense(a, cols),
        IntegerMatrix.from_dense(v, cols),
    )


def _support(a, i, j, t, rows, cols):
    return sum(1 for c in range(t, cols) if a[i][c]) + sum(
        1 for r in range(t, rows) if a[r][j]
    )


def diagonal(d: IntegerMatrix) -> list[int]:
    return [d[i, i] for i in range(min(d.rows, d.cols))]


def elementary_divisors(m: IntegerMatrix) -> list[int]:
    """Nonzero invariant factors of ``m`` in divisibility order.

    Sparse unimodular elimination on unit pivots first (Markowitz order),
    then a dense Smith reduction of whatever core survives.  No transforms
    are kept, so this scales to the large differentials of the engine.
    """
    rows = m.row_dicts()
    cols: dict[int, set[int]] = {}
    for (r, c) in m.entries:
        cols.setdefault(c, set()).add(r)
    alive = {r for r, row in enumerate(rows) if row}
    units = 0
    heap = [(len(rs), c) for c, rs in cols.items()]
    heapq.heapify(heap)

    while heap:
        clen, pc = heapq.heappop(heap)
        rs = cols.get(pc)
        if not rs or len(rs) != clen:
            continue
        pr = None
        for r in rs:
            if abs(rows[r][pc]) == 1 and (pr is None or len(rows[r]) < len(rows[pr])):
                pr = r
        if pr is None:
            continue
        prow = rows[pr]
        pv = prow[pc]
        touched = set()
        # clear column pc with row pr; pv = +-1 so quotients are exact
        for r in list(rs):
            if r == pr:
                continue
            row = rows[r]
            q = row[pc] * pv
            for c, x in prow.items():
                s = row.get(c, 0) - q * x
                if s:
                    if c not in row:
                        cols.setdefault(c, set()).add(r)
                    row[c] = s
                elif c in row:
                    del row[c]
                    cols[c].discard(r)
            touched.update(row)
            if not row:
                alive.discard(r)
        # row pr and column pc now form an isolated unit block
        for c in prow:
            cols[c].discard(pr)
        touched.update(prow)
        del cols[pc]
        rows[pr] = {}
        alive.discard(pr)
        units += 1
        touched.discard(pc)
        for c in touched:
            if cols.get(c):
                heapq.heappush(heap, (len(cols[c]), c))

    core_rows = sorted(alive)
    core_cols = sorted(c for c, rs in cols.items() if rs)
    divisors = [1] * units
    if core_rows and core_cols:
        cindex = {c: k for k, c in enumerate(core_cols)}
        dense = [[0] * len(core_cols) for _ in core_rows]
        for i, r in enumerate(core_rows):
            for c, x in rows[r].items():
                dense[i][cindex[c]] = x
        divisors += _dense_invariants(dense)
    return divisors


def _dense_invariants(a: list[list[int]]) -> list[int]:
    """Invariant factors of a dense integer matrix (no transforms)."""
    from math import gcd

    a = [row[:] for row in a]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, cols):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            if row[t]:
                                row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, i, j = min(cand)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            break
        out.append(abs(a[t][t]))
        t += 1
    # the diagonal may not yet be a divisibility chain; fix via gcd/lcm
    out.sort()
    changed = True
    while changed:
        changed = False
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                g = gcd(out[i], out[j])
                lcm = out[i] * out[j] // g
                if (g, lcm) != (out[i], out[j]):
                    out[i], out[j] = g, lcm
                    changed = True
        out.sort()
    return out


def rank(m: IntegerMatrix) -> int:
    return len(elementary_divisors(m))


# ---------------------------------------------------------------------------
# Cochain complexes


@dataclass
class ComplexZ:
    """Cochain complex of free abelian groups.

    ``ranks[i]`` is the rank in degree ``lo + i``; ``diffs[i]`` maps degree
    ``lo + i`` to ``lo + i + 1``.  Terms outside ``lo .. lo+len(ranks)-1``
    are zero.  ``window`` is the inclusive range of degrees whose cohomology
    the (possibly truncated) complex determines.
    """

    ranks: list[int]
    diffs: list[IntegerMatrix]
    lo: int = 0
    window: tuple[int, int] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.diffs) != max(len(self.ranks) - 1, 0):
            raise ComplexError("need exactly one differential between adjacent terms")
        for i, d in enumerate(self.diffs):
            if d.shape != (self.ranks[i + 1], self.ranks[i]):
                raise ComplexError(
                    f"differential from degree {self.lo + i} has shape {d.shape}, "
                    f"expected {(self.ranks[i + 1], self.ranks[i])}"
                )
        if self.window is None:
            self.window = (self.lo, self.hi)

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    def rank_at(self, k: int) -> int:
        if self.lo <= k <= self.hi:
            return self.ranks[k - self.lo]
        return 0

    def diff(self, k: int) -> IntegerMatrix:
        """Differential from degree k to k+1 (zero matrix outside the range)."""
        if self.lo <= k < self.hi:
            return self.diffs[k - self.lo]
        return IntegerMatrix(self.rank_at(k + 1), self.rank_at(k))

    def check_square_zero(self, k: int | None = None) -> None:
        ks = range(self.lo, self.hi - 1) if k is None else [k]
        for j in ks:
            if not (self.diff(j + 1) @ self.diff(j)).is_zero():
                raise ComplexError(f"d o d != 0 from degree {j}")

    def in_window(self, k: int) -> bool:
        a, b = self.window
        return a <= k <= b

    def divisors(self, k: int) -> list[int]:
        key = ("div", k)
        if key not in self._cache:
            self._cache[key] = elementary_divisors(self.diff(k))
        return self._cache[key]


def cohomology(c: ComplexZ, k: int) -> FgAbelianGroup:
    """``ker d_k / im d_{k-1}`` as free rank plus torsion chain."""
    if not c.in_window(k):
        raise WindowError(f"degree {k} outside valid window {c.window}")
    c.check_square_zero(k - 1)
    incoming = c.divisors(k - 1)
    outgoing = c.divisors(k)
    free = c.rank_at(k) - len(outgoing) - len(incoming)
    return FgAbelianGroup.from_divisors(free, incoming)


# ---------------------------------------------------------------------------
# Rational cohomology and induced maps


def _frac_rows(m: IntegerMatrix) -> list[dict[int, Fraction]]:
    return [{c: Fraction(v) for c, v in row.items()} for row in m.row_dicts()]


class _Echelon:
    """Incrementally built reduced echelon basis of a subspace of Q^n."""

    def __init__(self):
        self.rows: list[tuple[int, dict[int, Fraction]]] = []

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(vec)
        for p, row in self.rows:
            x = v.get(p)
            if x:
                for c, y in row.items():
                    s = v.get(c, 0) - x * y
                    if s:
                        v[c] = s
                    else:
                        v.pop(c, None)
        return v

    def add(self, vec: dict[int, Fraction], full: bool = True):
        """Insert ``vec``; returns the normalized new row or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        p = min(v)
        inv = 1 / v[p]
        v = {c: y * inv for c, y in v.items()}
        if full:
            for _, row in self.rows:
                x = row.get(p)
                if x:
                    for c, y in v.items():
                        s = row.get(c, 0) - x * y
                        if s:
                            row[c] = s
                        else:
                            row.pop(c, None)
        self.rows.append((p, v))
        self.rows.sort(key=lambda t: t[0])
        return v

    def __len__(self):
        return len(self.rows)


def rational_kernel(m: IntegerMatrix) -> list[dict[int, Fraction]]:
    """Basis of ker(m) over Q from the reduced row echelon form of m."""
    ech = _Echelon()
    for row in _frac_rows(m):
        if row:
            ech.add(row)
    pivots = {p for p, _ in ech.rows}
    basis = []
    for free in range(m.cols):
        if free in pivots:
            continue
        vec = {free: Fraction(1)}
        for p, row in ech.rows:
            x = row.get(free)
            if x:
                vec[p] = -x
        basis.append(vec)
    return basis


def rational_rank(m: IntegerMatrix) -> int:
    ech = _Echelon()
    for row in _frac_rows(m):
        if row:
            ech.add(row, full=False)
    return len(ech)


class RationalCohomologyBasis:
    """Deterministic basis of ``H^k(C) (x) Q`` by cocycle representatives.

    Coboundaries are put in reduced echelon form; kernel vectors of d_k are
    then reduced against them in order and kept when independent.
    """

    def __init__(self, c: ComplexZ, k: int):
        if not c.in_window(k):
            raise WindowError(f"degree {k} outside valid window {c.window}")
        self.degree = k
        self.dim_ambient = c.rank_at(k)
        d_in = c.diff(k - 1)
        self.bound = _Echelon()
        for col in d_in.col_dicts():
            if col:
                self.bound.add({r: Fraction(v) for r, v in col.items()})
        self.reps = _Echelon()
        for z in rational_kernel(c.diff(k)):
            self.reps.add(self.bound.reduce(z))
        self.pivots = [p for p, _ in self.reps.rows]

    @property
    def dimension(self) -> int:
        return len(self.reps)

    def vectors(self) -> list[dict[int, Fraction]]:
        return [row for _, row in self.reps.rows]

    def coordinates(self, vec: dict[int, Fraction]) -> list[Fraction]:
        """Coordinates of a cocycle modulo coboundaries in this basis."""
        w = self.bound.reduce(vec)
        coords = [w.get(p, Fraction(0)) for p in self.pivots]
        # consistency: w must lie in the span of the representatives
        rest = dict(w)
        for x, (p, row) in zip(coords, self.reps.rows):
            if x:
                for c, y in row.items():
                    s = rest.get(c, 0) - x * y
                    if s:
                        rest[c] = s
                    else:
                        rest.pop(c, None)
        if rest:
            raise ComplexError("vector is not a cocycle of the target complex")
        return coords


def check_chain_map(c: ComplexZ, c2: ComplexZ, chain_map: Mapping[int, IntegerMatrix], degrees):
    for k in degrees:
        f_k, f_k1 = chain_map.get(k), chain_map.get(k + 1)
        lhs = None if f_k1 is None else f_k1 @ c.diff(k)
        rhs = None if f_k is None else c2.diff(k) @ f_k
        if lhs is None and rhs is None:
            continue
        if lhs is None:
            lhs = IntegerMatrix(rhs.rows, rhs.cols)
        if rhs is None:
            rhs = IntegerMatrix(lhs.rows, lhs.cols)
        if lhs != rhs:
            raise ComplexError(f"chain map does not commute with d in degree {k}")


def induced_map_on_rational_cohomology(
    c: ComplexZ,
    c2: ComplexZ,
    chain_map: Mapping[int, IntegerMatrix],
    k: int,
    bases: tuple[RationalCohomologyBasis, RationalCohomologyBasis] | None = None,
) -> list[list[Fraction]]:
    """Matrix of ``H^k(C) (x) Q -> H^k(C') (x) Q`` in the canonical cocycle bases."""
    check_chain_map(c, c2, chain_map, [k - 1, k])
    if bases is None:
        src = RationalCohomologyBasis(c, k)
        dst = src if c2 is c else RationalCohomologyBasis(c2, k)
    else:
        src, dst = bases
    f = chain_map[k]
    fcols = f.col_dicts()
    out = [[Fraction(0)] * src.dimension for _ in range(dst.dimension)]
    for j, vec in enumerate(src.vectors()):
        image: dict[int, Fraction] = {}
        for col, x in vec.items():
            for r, v in fcols[col].items():
                s = image.get(r, 0) + x * v
                if s:
                    image[r] = s
                else:
                    image.pop(r, None)
        for i, y in enumerate(dst.coordinates(image)):
            out[i][j] = y
    return out


def trace(mat: list[list[Fraction]]) -> Fraction:
    return sum((mat[i][i] for i in range(len(mat))), Fraction(0))
