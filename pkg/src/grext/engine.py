"""Cochain complexes computing Ext between tensor powers of abelianization.

The degree-k term of the basic complex is ``T^m(Z^{k+1})`` (the value of
``T^m o a`` on the free group of rank k+1) and the differential is the
alternating sum over the face maps.  For a source ``T^n`` the complex is
the totalization of n such resolution slots: the multi-index
``(p_1, ..., p_n)`` carries ``T^m(Z^{p_1 + ... + p_n})`` in total degree
``sum(p_j - 1)``, with generator blocks ordered slot by slot and tensor
bases ordered lexicographically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .freegroup import FreeGroupHom, abelianization_matrix, block_sum, face_hom
from .linalg import (
    ComplexZ,
    IntegerMatrix,
    RationalCohomologyBasis,
    cohomology,
    induced_map_on_rational_cohomology,
    trace,
)

DEFAULT_BUDGET = 5_000_000


class ResourceError(RuntimeError):
    """The requested complex would exceed the configured entry budget."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class FunctorSpec:
    """``T^m o a``; its value on ``Z^{*k}`` has rank ``k**m``."""

    m: int
    kind: str = "tensor-power"

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("exponent must be >= 0")

    def rank(self, k: int) -> int:
        return k**self.m


@dataclass(frozen=True)
class MultiComplexSpec:
    n: int
    m: int
    truncation: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one resolution slot")
        if self.m < 0 or self.truncation < 0:
            raise ValueError("exponent and truncation must be >= 0")

    @property
    def window(self) -> tuple[int, int]:
        return (0, self.truncation - 1)

    def multi_indices(self, degree: int) -> list[tuple[int, ...]]:
        """Multi-indices of total degree ``degree``, lexicographic."""
        if degree < 0:
            return []
        total = degree + self.n
        return [p for p in _compositions(total, self.n)]

    def term_rank(self, p: tuple[int, ...]) -> int:
        return sum(p) ** self.m


@lru_cache(maxsize=None)
def _compositions_cached(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions_cached(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def _compositions(total, parts):
    return _compositions_cached(total, parts)


# ---------------------------------------------------------------------------
# Tensor powers of integer matrices


def induced_tensor_matrix(a: IntegerMatrix, m: int) -> IntegerMatrix:
    """m-fold Kronecker power of ``a``; lexicographic tensor basis."""
    if m < 0:
        raise ValueError("exponent must be >= 0")
    out = IntegerMatrix.identity(1)
    for _ in range(m):
        out = out.kron(a)
    return out


def _tensor_columns(columns: list[list[tuple[int, int]]], nrows: int, m: int):
    """Columns of the m-th tensor power given the columns of a matrix."""
    ncols = len(columns)
    for idx in itertools.product(range(ncols), repeat=m):
        terms = {0: 1}
        for a in idx:
            col = columns[a]
            nxt: dict = {}
            for r, v in terms.items():
                base = r * nrows
                for r2, v2 in col:
                    key = base + r2
                    nxt[key] = nxt.get(key, 0) + v * v2
            terms = nxt
        yield terms


def _face_block_columns(p: tuple[int, ...], slot: int, face: int):
    """Abelianized columns of the face ``face`` applied in resolution slot ``slot``."""
    homs = [
        face_hom(face, pj) if j == slot else FreeGroupHom.identity(pj)
        for j, pj in enumerate(p)
    ]
    a = abelianization_matrix(block_sum(homs))
    cols: list[list[tuple[int, int]]] = [[] for _ in range(a.cols)]
    for (r, c), v in sorted(a.entries.items()):
        cols[c].append((r, v))
    return a.rows, cols


def _slot_differential(p: tuple[int, ...], slot: int, m: int) -> IntegerMatrix:
    """Signed partial differential from term p to p + e_slot."""
    n_src = sum(p)
    koszul = -1 if sum(pj - 1 for pj in p[:slot]) % 2 else 1
    entries: dict = {}
    for face in range(p[slot] + 2):
        sign = koszul * (-1 if face % 2 else 1)
        nrows, cols = _face_block_columns(p, slot, face)
        for c, col in enumerate(_tensor_columns(cols, nrows, m)):
            for r, v in col.items():
                key = (r, c)
                s = entries.get(key, 0) + sign * v
                if s:
                    entries[key] = s
                else:
                    entries.pop(key, None)
    return IntegerMatrix((n_src + 1) ** m, n_src**m, entries)


def estimate_entries(n: int, m: int, truncation: int) -> int:
    """Rough upper bound on stored nonzeros of the truncated total complex."""
    spec = MultiComplexSpec(n, m, truncation)
    total = 0
    for k in range(truncation):
        for p in spec.multi_indices(k):
            cols = spec.term_rank(p)
            total += cols * sum(pj + 2 for pj in p) * (2**m)
    return total


def _check_budget(n, m, truncation, budget):
    if budget is None:
        return
    est = estimate_entries(n, m, truncation)
    if est > budget:
        raise ResourceError(
            f"complex for T^{n} -> T^{m} up to degree {truncation} needs about "
            f"{est} matrix entries (budget {budget})",
            est,
        )


def ext_multicomplex(spec: MultiComplexSpec, budget: int | None = DEFAULT_BUDGET) -> ComplexZ:
    """Totalized complex whose cohomology is Ext^*(T^n o a, T^m o a) on its window."""
    if spec.truncation < 1:
        raise ValueError("truncation must be >= 1 to determine any cohomology")
    _check_budget(spec.n, spec.m, spec.truncation, budget)
    degrees = range(spec.truncation + 1)
    layout = []
    for k in degrees:
        offs, off = {}, 0
        for p in spec.multi_indices(k):
            offs[p] = off
            off += spec.term_rank(p)
        layout.append((offs, off))
    ranks = [size for _, size in layout]
    diffs = []
    for k in degrees[:-1]:
        src_offs, src_size = layout[k]
        dst_offs, dst_size = layout[k + 1]
        entries: dict = {}
        for p, c0 in src_offs.items():
            for slot in range(spec.n):
                q = p[:slot] + (p[slot] + 1,) + p[slot + 1 :]
                r0 = dst_offs[q]
                for (r, c), v in _slot_differential(p, slot, spec.m).entries.items():
                    entries[(r0 + r, c0 + c)] = v
        diffs.append(IntegerMatrix._trusted(dst_size, src_size, entries))
    return ComplexZ(ranks, diffs, lo=0, window=spec.window)


def ext_complex(m: int, top: int, budget: int | None = DEFAULT_BUDGET) -> ComplexZ:
    """Complex for Ext^*(a, T^m o a) valid in degrees 0..top."""
    if top < 0:
        raise ValueError("top degree must be >= 0")
    return ext_multicomplex(MultiComplexSpec(1, m, top + 1), budget)


def ext_groups(n: int, m: int, window: tuple[int, int], budget: int | None = DEFAULT_BUDGET):
    """Integral Ext^k(T^n o a, T^m o a) for k in the inclusive window."""
    lo, hi = window
    if lo < 0 or hi < lo:
        raise ValueError(f"bad window {window}")
    c = ext_multicomplex(MultiComplexSpec(n, m, hi + 1), budget)
    return {k: cohomology(c, k) for k in range(lo, hi + 1)}


# ---------------------------------------------------------------------------
# Symmetric group actions


def _tuple_index(t, base):
    idx = 0
    for a in t:
        idx = idx * base + a
    return idx


def _permute_tensor_factors(n_gen: int, m: int, sigma: tuple[int, ...], gen_map=None):
    """Map on T^m(Z^n_gen) sending e_{a_1} x ... x e_{a_m} to the tensor
    with factor i moved to slot sigma(i), after applying ``gen_map`` to each
    generator."""
    out = {}
    for t in itertools.product(range(n_gen), repeat=m):
        new = [0] * m
        for i, a in enumerate(t):
            new[sigma[i]] = gen_map[a] if gen_map is not None else a
        out[_tuple_index(t, n_gen)] = _tuple_index(new, n_gen)
    return out


def _layout(spec: MultiComplexSpec, k: int):
    offs, off = {}, 0
    for p in spec.multi_indices(k):
        offs[p] = off
        off += spec.term_rank(p)
    return offs, off


def target_action_chain_map(spec: MultiComplexSpec, sigma, degrees) -> dict[int, IntegerMatrix]:
    """Chain map permuting the m tensor factors by sigma (0-based images)."""
    sigma = tuple(sigma)
    out = {}
    for k in degrees:
        offs, size = _layout(spec, k)
        entries = {}
        for p, off in offs.items():
            for src, dst in _permute_tensor_factors(sum(p), spec.m, sigma).items():
                entries[(off + dst, off + src)] = 1
        out[k] = IntegerMatrix._trusted(size, size, entries)
    return out


def source_action_chain_map(spec: MultiComplexSpec, tau, degrees) -> dict[int, IntegerMatrix]:
    """Chain map moving resolution slot j to slot tau(j), with Koszul signs."""
    tau = tuple(tau)
    n = spec.n
    out = {}
    for k in degrees:
        offs, size = _layout(spec, k)
        entries = {}
        for p, off in offs.items():
            q = [0] * n
            for j in range(n):
                q[tau[j]] = p[j]
            q = tuple(q)
            sign = 1
            for a in range(n):
                for b in range(a + 1, n):
                    if tau[a] > tau[b] and (p[a] - 1) * (p[b] - 1) % 2:
                        sign = -sign
            src_starts = list(itertools.accumulate((0,) + p[:-1]))
            dst_starts = list(itertools.accumulate((0,) + q[:-1]))
            gen_map = []
            for j in range(n):
                for t in range(p[j]):
                    gen_map.append(dst_starts[tau[j]] + t)
            ident = tuple(range(spec.m))
            qoff = offs[q]
            for src, dst in _permute_tensor_factors(sum(p), spec.m, ident, gen_map).items():
                entries[(qoff + dst, off + src)] = sign
        out[k] = IntegerMatrix._trusted(size, size, entries)
    return out


@lru_cache(maxsize=32)
def _complex_and_basis(n: int, m: int, k: int):
    spec = MultiComplexSpec(n, m, k + 1)
    c = ext_multicomplex(spec, budget=None)
    return spec, c, RationalCohomologyBasis(c, k)


def _action_trace(n, m, k, build):
    spec, c, basis = _complex_and_basis(n, m, k)
    degrees = [d for d in (k - 1, k, k + 1) if 0 <= d <= spec.truncation]
    fmap = build(spec, degrees)
    mat = induced_map_on_rational_cohomology(c, c, fmap, k, bases=(basis, basis))
    return trace(mat)


def _check_perm(perm, size):
    perm = tuple(perm)
    if sorted(perm) != list(range(size)):
        raise ValueError(f"{perm} is not a permutation of 0..{size - 1}")
    return perm


def target_action_trace(n: int, m: int, sigma, k: int) -> Fraction:
    """Trace of the factor permutation sigma of T^m on Ext^k(T^n, T^m) (x) Q.

    ``sigma`` is given 0-based: ``sigma[i]`` is the image of i.
    """
    sigma = _check_perm(sigma, m)
    return _action_trace(n, m, k, lambda spec, ds: target_action_chain_map(spec, sigma, ds))


def source_action_trace(n: int, m: int, tau, k: int) -> Fraction:
    """Trace of the slot permutation tau of T^n on Ext^k(T^n, T^m) (x) Q."""
    tau = _check_perm(tau, n)
    return _action_trace(n, m, k, lambda spec, ds: source_action_chain_map(spec, tau, ds))


def joint_action_trace(n: int, m: int, tau, sigma, k: int) -> Fraction:
    """Trace of (tau, sigma) in S_n x S_m acting together on Ext^k(T^n, T^m) (x) Q."""
    tau = _check_perm(tau, n)
    sigma = _check_perm(sigma, m)

    def build(spec, ds):
        a = source_action_chain_map(spec, tau, ds)
        b = target_action_chain_map(spec, sigma, ds)
        return {d: b[d] @ a[d] for d in ds}

    return _action_trace(n, m, k, build)


def rational_dimension(n: int, m: int, k: int) -> int:
    return _complex_and_basis(n, m, k)[2].dimension


# ---------------------------------------------------------------------------
# Reports


def cycles_of(perm) -> list[list[int]]:
    """1-based cycle notation of a 0-based permutation, fixed points omitted."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = perm[x]
        if len(cyc) > 1:
            out.append(cyc)
    return out


def _json_number(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def ext_report(n: int, m: int, window: tuple[int, int], groups, traces=()) -> dict:
    return {
        "source": f"T^{n}",
        "target": f"T^{m}",
        "window": list(window),
        "groups": [
            {"degree": k, "free_rank": g.free_rank, "torsion": list(g.torsion)}
            for k, g in sorted(groups.items())
        ],
        "traces": [
            {"group": grp, "element": cycles_of(perm), "degree": k, "trace": _json_number(t)}
            for grp, perm, k, t in traces
        ],
    }
