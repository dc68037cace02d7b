"""Signed calculus of surjections.

``Z[Surj(m, n)]`` sits in degree ``m - n``.  Surjections and permutations
are 1-based one-line tuples: ``f.values[i - 1] == f(i)``.  Composition
``g o f`` applies f first.

Signs.  Every basis element ``[f]`` is tied to the sign-free composition
calculus of surjections by the normalization

    c(f) = sign(alpha_f) * (-1) ** sum_{a < b} i_a * (i_b - 1)

where ``f = s o alpha_f`` is the canonical shuffle decomposition and
``i_1, ..., i_n`` are the fiber sizes.  With this normalization the right
action of ``S_m``, the left action of adjacent transpositions of ``S_n``
and composition all agree with a single associative, unital, graded
composition law; see :func:`yoneda`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class SizeMismatch(ValueError):
    pass


Perm = tuple[int, ...]


# ---------------------------------------------------------------------------
# permutations


def perm_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given in one-line notation (any base)."""
    base = min(perm) if perm else 0
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - base
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_compose(a: Perm, b: Perm) -> Perm:
    """``a o b`` for 1-based one-line permutations."""
    return tuple(a[x - 1] for x in b)


def perm_inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a, 1):
        out[x - 1] = i
    return tuple(out)


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def transposition(n: int, k: int, l: int) -> Perm:
    p = list(range(1, n + 1))
    p[k - 1], p[l - 1] = l, k
    return tuple(p)


def adjacent_word(perm: Perm, from_right: bool = False) -> list[int]:
    """Adjacent transpositions s_j = (j j+1) whose product, applied left to
    right, builds ``perm``: perm = s_{w[-1]} o ... o s_{w[0]}."""
    # bubble sort the one-line word down to the identity
    p = list(perm)
    n = len(p)
    word: list[int] = []
    # perm = s_{j_r} ... s_{j_1}; sorting p by left multiplications
    # p <- s_j o p swaps the values j and j+1 in the one-line word
    while True:
        pos = {v: i for i, v in enumerate(p)}
        order = range(n - 1, 0, -1) if from_right else range(1, n)
        for j in order:
            if pos[j] > pos[j + 1]:
                p[pos[j]], p[pos[j + 1]] = j + 1, j
                word.append(j)
                break
        else:
            break
    # we applied s_{w_1}, s_{w_2}, ... on the left to reach identity, so
    # perm = s_{w_1} o s_{w_2} o ... ; the first factor to apply to an
    # element is the last one in that product
    return word[::-1]


def bar_sign(mapping: Mapping[int, int]) -> int:
    """Sign of the permutation of the (ordered) target set obtained from a
    bijection between ordered sets by undoing the order-preserving map."""
    domain = sorted(mapping)
    values = [mapping[a] for a in domain]
    if len(set(values)) != len(values):
        raise ValueError("bar_sign needs a bijection")
    ranks = {v: r for r, v in enumerate(sorted(values))}
    return perm_sign([ranks[v] for v in values])


# ---------------------------------------------------------------------------
# surjections


@dataclass(frozen=True, order=True)
class Surjection:
    values: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if set(self.values) != set(range(1, self.n + 1)):
            raise ValueError(f"{self.values} is not a surjection onto 1..{self.n}")

    @classmethod
    def of(cls, values: Iterable[int], n: int | None = None) -> "Surjection":
        values = tuple(values)
        return cls(values, max(values, default=0) if n is None else n)

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def degree(self) -> int:
        return self.m - self.n

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def fiber(self, k: int) -> list[int]:
        return [i for i, v in enumerate(self.values, 1) if v == k]

    def fiber_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.n
        for v in self.values:
            sizes[v - 1] += 1
        return tuple(sizes)

    def is_order_preserving(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))

    def is_bijective(self) -> bool:
        return self.m == self.n

    def compose(self, inner: "Surjection") -> "Surjection":
        """``self o inner``."""
        if inner.n != self.m:
            raise SizeMismatch(f"cannot compose Surj({self.m},{self.n}) after Surj({inner.m},{inner.n})")
        return Surjection(tuple(self.values[x - 1] for x in inner.values), self.n)

    def precompose_perm(self, sigma: Perm) -> "Surjection":
        if len(sigma) != self.m:
            raise SizeMismatch(f"permutation of {len(sigma)} acting on Surj({self.m},{self.n})")
        return Surjection(tuple(self.values[x - 1] for x in sigma), self.n)

    def postcompose_perm(self, tau: Perm) -> "Surjection":
        if len(tau) != self.n:
            raise SizeMismatch(f"permutation of {len(tau)} acting on Surj({self.m},{self.n})")
        return Surjection(tuple(tau[v - 1] for v in self.values), self.n)

    def disjoint_union(self, other: "Surjection") -> "Surjection":
        return Surjection(self.values + tuple(v + self.n for v in other.values), self.n + other.n)

    def to_json_obj(self) -> list[int]:
        return list(self.values)


def identity_surjection(n: int) -> Surjection:
    return Surjection(identity_perm(n), n)


def order_preserving(sizes: Sequence[int]) -> Surjection:
    values: list[int] = []
    for k, size in enumerate(sizes, 1):
        if size < 1:
            raise ValueError("fiber sizes must be positive")
        values.extend([k] * size)
    return Surjection(tuple(values), len(sizes))


@lru_cache(maxsize=None)
def _enumerate(m: int, n: int) -> tuple[Surjection, ...]:
    if m < n:
        return ()
    out = []
    target = set(range(1, n + 1))
    for values in itertools.product(range(1, n + 1), repeat=m):
        if set(values) == target:
            out.append(Surjection(values, n))
    return tuple(out)


def enumerate_surjections(m: int, n: int) -> list[Surjection]:
    """All surjections ``{1..m} -> {1..n}`` in lexicographic order."""
    if m < 0 or n < 0:
        raise ValueError("sizes must be nonnegative")
    return list(_enumerate(m, n))


@dataclass(frozen=True)
class ShuffleDecomposition:
    s: Surjection
    alpha: Perm


def canonical_decomposition(f: Surjection) -> ShuffleDecomposition:
    """The unique ``f = s o alpha`` with s order-preserving and alpha^-1 a
    shuffle for the fiber sizes of f."""
    sizes = f.fiber_sizes()
    starts = list(itertools.accumulate((0,) + sizes[:-1]))
    seen = [0] * f.n
    alpha = []
    for v in f.values:
        seen[v - 1] += 1
        alpha.append(starts[v - 1] + seen[v - 1])
    return ShuffleDecomposition(order_preserving(sizes) if f.n or f.m else Surjection((), 0), tuple(alpha))


def is_inverse_shuffle(alpha: Perm, sizes: Sequence[int]) -> bool:
    inv = perm_inverse(alpha)
    start = 0
    for size in sizes:
        block = inv[start : start + size]
        if any(a >= b for a, b in zip(block, block[1:])):
            return False
        start += size
    return True


def normalization_sign(f: Surjection) -> int:
    """The sign c(f) relating [f] to the sign-free surjection calculus."""
    sizes = f.fiber_sizes()
    e = 0
    for a in range(len(sizes)):
        for b in range(a + 1, len(sizes)):
            e += sizes[a] * (sizes[b] - 1)
    return perm_sign(canonical_decomposition(f).alpha) * (-1 if e % 2 else 1)


# ---------------------------------------------------------------------------
# formal sums


class SignedSurjSum:
    """Finite integer combination of surjections in ``Surj(m, n)``."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Mapping[Surjection, int] | None = None):
        self.m, self.n = m, n
        clean = {}
        for f, c in (terms or {}).items():
            if (f.m, f.n) != (m, n):
                raise SizeMismatch(f"term {f.values} is not in Surj({m},{n})")
            if c:
                clean[f] = int(c)
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def single(cls, f: Surjection, coeff: int = 1) -> "SignedSurjSum":
        return cls(f.m, f.n, {f: coeff})

    @classmethod
    def zero(cls, m: int, n: int) -> "SignedSurjSum":
        return cls(m, n)

    @property
    def degree(self) -> int:
        return self.m - self.n

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, f: Surjection) -> int:
        return self.terms.get(f, 0)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedSurjSum):
            return NotImplemented
        return (self.m, self.n, self.terms) == (other.m, other.n, other.terms)

    def __hash__(self):
        return hash((self.m, self.n, tuple(self.terms.items())))

    def __add__(self, other: "SignedSurjSum") -> "SignedSurjSum":
        if (self.m, self.n) != (other.m, other.n):
            raise SizeMismatch("cannot add sums over different Surj sets")
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, 0) + c
        return SignedSurjSum(self.m, self.n, out)

    def __neg__(self) -> "SignedSurjSum":
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "SignedSurjSum":
        return SignedSurjSum(self.m, self.n, {f: k * c for f, c in self.terms.items()})

    def __rmul__(self, k: int) -> "SignedSurjSum":
        return self.scale(k)

    def __repr__(self) -> str:
        body = " ".join(f"{c:+d}[{''.join(map(str, f.values))}]" for f, c in self.terms.items())
        return f"<Surj({self.m},{self.n}) {body or '0'}>"

    def to_json_obj(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "degree": self.degree,
            "terms": [{"f": list(f.values), "c": c} for f, c in self.terms.items()],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SignedSurjSum":
        m, n = obj["m"], obj["n"]
        if "degree" in obj and obj["degree"] != m - n:
            raise ValueError("degree field disagrees with m - n")
        terms: dict = {}
        for t in obj["terms"]:
            f = Surjection(tuple(t["f"]), n)
            terms[f] = terms.get(f, 0) + t["c"]
        return cls(m, n, terms)


def _linear(op, x: SignedSurjSum, *args) -> SignedSurjSum:
    out = None
    for f, c in x:
        term = op(f, *args).scale(c)
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# actions


def right_action_sign(f: Surjection, sigma: Perm) -> tuple[int, Surjection]:
    """``(c, f o sigma)`` with ``[f].sigma = c [f o sigma]``."""
    g = f.precompose_perm(tuple(sigma))
    # sigma restricted to each fiber of g, compared in order: count inversions
    inv = 0
    for a in range(g.m):
        ga, sa = g.values[a], sigma[a]
        for b in range(a + 1, g.m):
            if g.values[b] == ga and sigma[b] < sa:
                inv += 1
    return (-1 if inv % 2 else 1), g


def right_action(f: Surjection, sigma: Perm) -> SignedSurjSum:
    """``[f].sigma`` for sigma in S_m."""
    c, g = right_action_sign(f, sigma)
    return SignedSurjSum.single(g, c)


def right_action_reference(f: Surjection, sigma: Perm) -> SignedSurjSum:
    """Same as :func:`right_action`, evaluated block by block with bar_sign."""
    g = f.precompose_perm(tuple(sigma))
    coeff = 1
    for i in range(1, f.n + 1):
        block = g.fiber(i)
        coeff *= bar_sign({x: sigma[x - 1] for x in block})
    return SignedSurjSum.single(g, coeff)


def left_action(k: int, l: int, f: Surjection) -> SignedSurjSum:
    """``tau_{k,l}.[f] = (-1)^{(|f^-1(k)|-1)(|f^-1(l)|-1)} [tau_{k,l} o f]``.

    The closed sign is the action of the transposition only when k and l
    are adjacent; for the general case use :func:`left_action_general`,
    which also carries the Koszul sign of the fibers strictly between them.
    """
    if k == l or not (1 <= k <= f.n and 1 <= l <= f.n):
        raise ValueError(f"need distinct k, l in 1..{f.n}")
    sizes = f.fiber_sizes()
    sign = -1 if (sizes[k - 1] - 1) * (sizes[l - 1] - 1) % 2 else 1
    return SignedSurjSum.single(f.postcompose_perm(transposition(f.n, k, l)), sign)


def left_action_general(tau: Perm, f: Surjection, word: Sequence[int] | None = None) -> SignedSurjSum:
    """Action of any tau in S_n, built from adjacent transpositions.

    ``word`` lists the adjacent transpositions (j means (j j+1)) in the
    order they are applied.  Without a word the product is evaluated in
    closed form as the Koszul sign of the fibers with degrees |f^-1(k)| - 1.
    """
    tau = tuple(tau)
    if len(tau) != f.n:
        raise SizeMismatch(f"permutation of {len(tau)} acting on Surj({f.m},{f.n})")
    if word is None:
        sign, g = left_action_sign(tau, f)
        return SignedSurjSum.single(g, sign)
    else:
        built = identity_perm(f.n)
        for j in word:
            built = perm_compose(transposition(f.n, j, j + 1), built)
        if built != tau:
            raise ValueError(f"word {list(word)} does not spell {tau}")
    sign, g = 1, f
    for j in word:
        step = left_action(j, j + 1, g)
        ((g, c),) = step.terms.items()
        sign *= c
    return SignedSurjSum.single(g, sign)


def left_action_sign(tau: Perm, f: Surjection) -> tuple[int, Surjection]:
    """``(c, tau o f)`` with ``tau.[f] = c [tau o f]``."""
    # the adjacent steps multiply out to a Koszul sign on fiber degrees
    sign = koszul_sign(tau, [i - 1 for i in f.fiber_sizes()])
    return sign, f.postcompose_perm(tuple(tau))


def koszul_sign(tau: Perm, degrees: Sequence[int]) -> int:
    """Sign of moving graded items in slots 1..n to slots tau(1..n)."""
    e = 0
    n = len(tau)
    for a in range(n):
        for b in range(a + 1, n):
            if tau[a] > tau[b]:
                e += degrees[a] * degrees[b]
    return -1 if e % 2 else 1


def act_left(tau: Perm, x: SignedSurjSum) -> SignedSurjSum:
    return _linear(lambda f: left_action_general(tau, f), x) or SignedSurjSum.zero(x.m, x.n)


def act_right(x: SignedSurjSum, sigma: Perm) -> SignedSurjSum:
    return _linear(lambda f: right_action(f, sigma), x) or SignedSurjSum.zero(x.m, x.n)


# ---------------------------------------------------------------------------
# products


def _yoneda_basic(g: Surjection, f: Surjection) -> SignedSurjSum:
    if f.n != g.m:
        raise SizeMismatch(f"Yoneda product needs Surj({g.m},{g.n}) after Surj({f.m},{f.n}) with matching middle")
    dec = canonical_decomposition(g)
    moved = left_action_general(dec.alpha, f)
    ((f2, sign),) = moved.terms.items()
    s = dec.s
    # [s] o [f2]: the normalizations carry all remaining signs
    h = s.compose(f2)
    sign *= normalization_sign(s) * normalization_sign(f2) * normalization_sign(h)
    return SignedSurjSum.single(h, sign)


def yoneda(g: SignedSurjSum, f: SignedSurjSum) -> SignedSurjSum:
    """Composite ``g o f`` of ``g in Z[Surj(m,l)]`` and ``f in Z[Surj(n,m)]``.

    Each g is split as ``s o alpha`` (canonical shuffle decomposition),
    alpha is moved across to act on f from the left, and the
    order-preserving s is composed with the normalization signs.
    """
    if f.n != g.m:
        raise SizeMismatch(f"cannot compose Z[Surj({g.m},{g.n})] after Z[Surj({f.m},{f.n})]")
    out = SignedSurjSum.zero(f.m, g.n)
    for gg, a in g:
        for ff, b in f:
            out = out + _yoneda_basic(gg, ff).scale(a * b)
    return out


def yoneda_closed_form(g: Surjection, f: Surjection) -> SignedSurjSum:
    h = g.compose(f)
    sign = normalization_sign(g) * normalization_sign(f) * normalization_sign(h)
    return SignedSurjSum.single(h, sign)


def displayed_yoneda_sign(s: Surjection, i: int, j: int, f: Surjection) -> int:
    """The single-transposition product sign for g = s o tau_{i,j}."""
    tau = transposition(s.m, i, j)
    g = s.precompose_perm(tau)
    sign = 1
    for k in range(1, g.n + 1):
        sign *= bar_sign({x: tau[x - 1] for x in g.fiber(k)})
    sizes = f.fiber_sizes()
    if (sizes[i - 1] - 1) * (sizes[j - 1] - 1) % 2:
        sign = -sign
    return sign


def external(x: SignedSurjSum, y: SignedSurjSum) -> SignedSurjSum:
    """Bilinear disjoint union: x on the first block, y shifted after it."""
    out = SignedSurjSum.zero(x.m + y.m, x.n + y.n)
    for f, a in x:
        for g, b in y:
            out = out + SignedSurjSum.single(f.disjoint_union(g), a * b)
    return out


def external_many(items: Sequence[SignedSurjSum]) -> SignedSurjSum:
    out = SignedSurjSum.single(Surjection((), 0))
    for it in items:
        out = external(out, it)
    return out


def single(values: Sequence[int], coeff: int = 1, n: int | None = None) -> SignedSurjSum:
    return SignedSurjSum.single(Surjection.of(values, n), coeff)


# ---------------------------------------------------------------------------
# the operad Q(k) = Z[Surj(k, 1)] and the PROP it generates


def operad_generator(k: int) -> SignedSurjSum:
    return SignedSurjSum.single(Surjection((1,) * k, 1))


def operad_compose(x: SignedSurjSum, *ys: SignedSurjSum) -> SignedSurjSum:
    """``gamma(x; y_1, ..., y_k) = x o (y_1 [x] ... [x] y_k)``."""
    if x.n != 1 or any(y.n != 1 for y in ys):
        raise SizeMismatch("operad elements live in Z[Surj(k, 1)]")
    if x.m != len(ys):
        raise SizeMismatch(f"arity {x.m} element composed with {len(ys)} inputs")
    return yoneda(x, external_many(ys))


def block_permutation(sizes: Sequence[int], sigma: Perm) -> Perm:
    """Permutation of sum(sizes) moving block j (in order) to block slot sigma(j)."""
    k = len(sizes)
    new_sizes = [0] * k
    for j in range(k):
        new_sizes[sigma[j] - 1] = sizes[j]
    new_starts = list(itertools.accumulate([0] + new_sizes[:-1]))
    out = []
    for j in range(k):
        for t in range(sizes[j]):
            out.append(new_starts[sigma[j] - 1] + t + 1)
    return tuple(out)


def multinomial(m: int, parts: Sequence[int]) -> int:
    out = math.factorial(m)
    for p in parts:
        out //= math.factorial(p)
    return out


def free_prop_rank_identity(m: int, n: int) -> bool:
    """|Surj(m,n)| equals the rank of the free PROP on Q in arity (m, n)."""
    lhs = len(enumerate_surjections(m, n))
    rhs = 0
    if n == 0:
        rhs = 1 if m == 0 else 0
    else:
        for comp in _positive_compositions(m, n):
            rhs += multinomial(m, comp)
    return lhs == rhs


def _positive_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _positive_compositions(total - first, parts - 1):
            yield (first,) + rest


def trace_endomorphism(m: int, n: int) -> list[list[int]]:
    """Matrix of ``f -> sum_{sigma in S_n} sigma.[f]`` on Z[Surj(m,n)]."""
    if not m >= n >= 1:
        raise ValueError("need m >= n >= 1")
    basis = enumerate_surjections(m, n)
    index = {f: i for i, f in enumerate(basis)}
    mat = [[0] * len(basis) for _ in basis]
    for j, f in enumerate(basis):
        for sigma in itertools.permutations(range(1, n + 1)):
            ((g, c),) = left_action_general(sigma, f).terms.items()
            mat[index[g]][j] += c
    return mat


# ---------------------------------------------------------------------------
# symmetric sequences


@dataclass
class SymmetricPiece:
    """Free graded module of arity n with S_n acting by signed permutations
    of ``basis``; ``act(sigma, b)`` returns ``(sign, b')``."""

    arity: int
    degree: int
    basis: list
    act: object

    def check_action(self) -> None:
        n = self.arity
        perms = list(itertools.permutations(range(1, n + 1)))
        ident = identity_perm(n)
        for b in self.basis:
            if self.act(ident, b) != (1, b):
                raise AssertionError(f"identity acts nontrivially on {b}")
        for a in perms:
            for c in perms:
                ac = perm_compose(a, c)
                for b in self.basis:
                    s1, b1 = self.act(c, b)
                    s2, b2 = self.act(a, b1)
                    if self.act(ac, b) != (s1 * s2, b2):
                        raise AssertionError(f"action not compatible with composition at {a}, {c}")

    def character(self, sigma: Perm) -> int:
        total = 0
        for b in self.basis:
            sign, b2 = self.act(sigma, b)
            if b2 == b:
                total += sign
        return total


class SymmetricSequence(dict):
    """Arity-indexed :class:`SymmetricPiece` collection."""

    def check(self) -> None:
        for piece in self.values():
            piece.check_action()


def sign_sequence(max_arity: int) -> SymmetricSequence:
    """Lambda(m)[m-1]: the sign representation of S_m in degree m - 1."""
    seq = SymmetricSequence()
    for m in range(1, max_arity + 1):
        seq[m] = SymmetricPiece(m, m - 1, ["e"], lambda sigma, b: (perm_sign(sigma), b))
    return seq


def operad_sequence(max_arity: int) -> SymmetricSequence:
    """Q(m) = Z[Surj(m,1)] with S_m acting through the right action."""
    seq = SymmetricSequence()

    def act(sigma, f):
        # left action of S_m on Q(m) through sigma^-1 on the right
        ((g, c),) = right_action(f, perm_inverse(sigma)).terms.items()
        return c, g

    for m in range(1, max_arity + 1):
        seq[m] = SymmetricPiece(m, m - 1, enumerate_surjections(m, 1), act)
    return seq
