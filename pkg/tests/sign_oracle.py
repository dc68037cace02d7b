"""GF(2) search for a composition sign rule on surjections.

Unknown: a sign eps(g, f) for every composable pair with all sizes <= N,
so that [g] o [f] = eps(g, f) [g o f].  Constraints are linear over GF(2);
the system is solved by elimination on bitmask rows.
"""

from __future__ import annotations

import itertools

from grext.surjections import (
    canonical_decomposition,
    displayed_yoneda_sign,
    enumerate_surjections,
    identity_surjection,
    left_action,
    right_action,
    transposition,
)


class GF2System:
    def __init__(self):
        self.var = {}
        self.pivots = {}  # pivot bit -> (row mask, rhs)
        self.inconsistent = None

    def v(self, key) -> int:
        if key not in self.var:
            self.var[key] = len(self.var)
        return self.var[key]

    def add(self, keys, rhs: int, label=None) -> None:
        mask = 0
        for k in keys:
            mask ^= 1 << self.v(k)
        rhs &= 1
        while mask:
            top = mask.bit_length() - 1
            if top not in self.pivots:
                self.pivots[top] = (mask, rhs)
                return
            pm, pr = self.pivots[top]
            mask ^= pm
            rhs ^= pr
        if rhs and self.inconsistent is None:
            self.inconsistent = label

    @property
    def feasible(self) -> bool:
        return self.inconsistent is None


def _bit(sign: int) -> int:
    return 0 if sign == 1 else 1


def composition_sign_system(
    max_size: int,
    displayed: str = "canonical",
    right: bool = True,
    left: bool = False,
    order_preserving_free: bool = False,
) -> GF2System:
    """displayed: 'none', 'canonical' (g = s o tau with tau the canonical
    shuffle) or 'all' (every way of writing g = s o tau).  ``right`` and
    ``left`` tie composition with bijections to the symmetric group actions
    (left: adjacent transpositions only); ``order_preserving_free`` asks
    composites of order-preserving surjections to carry no sign."""
    sys_ = GF2System()
    sizes = range(0, max_size + 1)
    surj = {(a, b): enumerate_surjections(a, b) for a in sizes for b in sizes}
    for m in sizes:
        for f in surj[(m, m)]:
            if f == identity_surjection(m):
                for n in sizes:
                    for h in surj[(n, m)]:
                        sys_.add([("Y", f, h)], 0, ("unit", f, h))
                for l in sizes:
                    for g in surj[(m, l)]:
                        sys_.add([("Y", g, f)], 0, ("unit", g, f))
    for n, m, l, k in itertools.product(sizes, repeat=4):
        if not n >= m >= l >= k:
            continue
        for f in surj[(n, m)]:
            for g in surj[(m, l)]:
                gf = g.compose(f)
                for h in surj[(l, k)]:
                    sys_.add(
                        [("Y", h, g), ("Y", h.compose(g), f), ("Y", g, f), ("Y", h, gf)],
                        0,
                        ("assoc", h, g, f),
                    )
    if right:
        for m in sizes:
            for l in sizes:
                for g in surj[(m, l)]:
                    for sigma in itertools.permutations(range(1, m + 1)):
                        ((_, c),) = right_action(g, sigma).terms.items()
                        sys_.add([("Y", g, type(g)(sigma, m))], _bit(c), ("right", g, sigma))
    if left:
        for m in sizes:
            for n in sizes:
                for f in surj[(n, m)]:
                    for j in range(1, m):
                        tau = transposition(m, j, j + 1)
                        ((_, c),) = left_action(j, j + 1, f).terms.items()
                        sys_.add([("Y", type(f)(tau, m), f)], _bit(c), ("left", j, f))
    if order_preserving_free:
        for n, m, l in itertools.product(sizes, repeat=3):
            for f in surj[(n, m)]:
                if not f.is_order_preserving():
                    continue
                for g in surj[(m, l)]:
                    if g.is_order_preserving():
                        sys_.add([("Y", g, f)], 0, ("order-preserving", g, f))
    if displayed != "none":
        for m in sizes:
            for l in sizes:
                for s in surj[(m, l)]:
                    if not s.is_order_preserving():
                        continue
                    for i in range(1, m + 1):
                        for j in range(i + 1, m + 1):
                            tau = transposition(m, i, j)
                            g = s.precompose_perm(tau)
                            if displayed == "canonical" and canonical_decomposition(g).alpha != tau:
                                continue
                            for n in sizes:
                                for f in surj[(n, m)]:
                                    d = displayed_yoneda_sign(s, i, j, f)
                                    sys_.add([("Y", g, f)], _bit(d), ("displayed", s, (i, j), f))
    return sys_


def add_model(sys_: GF2System, sign) -> None:
    """Pin every unknown to ``sign(g, f)``."""
    for key in list(sys_.var):
        _, g, f = key
        sys_.add([key], _bit(sign(g, f)), ("model", g, f))
