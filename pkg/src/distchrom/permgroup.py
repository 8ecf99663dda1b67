"""Permutations on finite point sets and groups given by generators.

A permutation is a plain tuple of images: ``p[i]`` is the image of point ``i``.
Hot paths (closure, stabilizer chains) convert to ``bytes`` when the degree
allows it, so that composition becomes a single ``bytes.translate`` call.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import binomial

__all__ = [
    "CapExceeded",
    "GroupSpec",
    "NotSetwiseStable",
    "Perm",
    "TooLarge",
    "as_tuple",
    "closure",
    "colex_ksets",
    "compose",
    "group_order",
    "identity",
    "induced_action_on_ksets",
    "inverse",
    "orbit_count_on",
    "perm_from_cycles",
    "wreath_action",
]

Perm = tuple[int, ...]

DEFAULT_CLOSURE_CAP = 10_000_000


class CapExceeded(RuntimeError):
    """Group enumeration grew past the requested cap."""


class TooLarge(ValueError):
    pass


class NotSetwiseStable(ValueError):
    """A permutation moved a point of the subset outside the subset."""


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_identity(p: Perm) -> bool:
    return all(i == v for i, v in enumerate(p))


def compose(a: Perm, b: Perm) -> Perm:
    """Apply a, then b: (a * b)[i] = b[a[i]]."""
    return tuple(b[x] for x in a)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def perm_from_cycles(degree: int, cycles) -> Perm:
    images = list(range(degree))
    for cyc in cycles:
        for x, y in zip(cyc, cyc[1:]):
            images[x] = y
        if cyc:
            images[cyc[-1]] = cyc[0]
    return tuple(images)


def _check_perm(p: Perm) -> None:
    if sorted(p) != list(range(len(p))):
        raise ValueError("not a permutation")


def as_tuple(p) -> Perm:
    """Normalize a permutation (tuple or bytes form) to an image tuple."""
    return tuple(p)


def closure(generators: list[Perm], cap: int = DEFAULT_CLOSURE_CAP) -> list:
    """Full element list of the generated group via breadth-first products.

    The identity comes first; element order is otherwise the BFS discovery
    order, which is deterministic for a fixed generator list.  Raises
    CapExceeded once more than ``cap`` elements have been found.

    For degree <= 256 the elements are returned as ``bytes`` image sequences
    (indexable exactly like tuples, an order of magnitude smaller in memory,
    and composable at C speed); larger degrees fall back to tuples.  Use
    :func:`as_tuple` when a tuple form is needed.
    """
    if not generators:
        raise ValueError("closure requires at least one generator")
    degree = len(generators[0])
    for g in generators:
        if len(g) != degree:
            raise ValueError("generators must share a degree")
        _check_perm(g)
    if degree <= 256:
        tail = bytes(range(256))[degree:]
        tables = [bytes(g) + tail for g in generators]
        start = bytes(range(degree))
        seen = {start}
        order = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for cur in frontier:
                for t in tables:
                    prod = cur.translate(t)
                    if prod not in seen:
                        if len(seen) >= cap:
                            raise CapExceeded(f"group exceeds cap={cap}")
                        seen.add(prod)
                        order.append(prod)
                        nxt.append(prod)
            frontier = nxt
        return order
    start_t = identity(degree)
    seen_t = {start_t}
    order_t = [start_t]
    frontier_t = [start_t]
    while frontier_t:
        nxt_t = []
        for cur in frontier_t:
            for g in generators:
                prod = tuple(g[x] for x in cur)
                if prod not in seen_t:
                    if len(seen_t) >= cap:
                        raise CapExceeded(f"group exceeds cap={cap}")
                    seen_t.add(prod)
                    order_t.append(prod)
                    nxt_t.append(prod)
        frontier_t = nxt_t
    return order_t


class _Chain:
    """Incremental stabilizer chain (Schreier-Sims with sifting).

    Base points are chosen deterministically as the smallest point moved by
    the residue being inserted, so the chain is reproducible for a fixed
    generator list.  Transversal element t_x maps the level's base point to x.
    Internally permutations are 256-padded bytes when the degree allows it,
    making composition a single ``translate`` call.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[tuple] = []  # (perm, insertion level), serial = index
        self.trans: list[dict[int, object]] = []
        self.done: list[set[tuple[int, int]]] = []
        self._bytes = degree <= 256
        if self._bytes:
            self._id = bytes(range(256))
        else:
            self._id = identity(degree)

    def _pack(self, p: Perm):
        if self._bytes:
            return bytes(p) + self._id[self.degree :]
        return p

    def _unpack(self, e) -> Perm:
        if self._bytes:
            return tuple(e[: self.degree])
        return e

    def _mul(self, a, b):
        if self._bytes:
            return a.translate(b)
        return tuple(b[x] for x in a)

    def _inv(self, a):
        if self._bytes:
            out = bytearray(self._id)
            for i in range(self.degree):
                out[a[i]] = i
            return bytes(out)
        return inverse(a)

    def _is_id(self, a) -> bool:
        return a == self._id

    def _new_level(self, pt: int) -> None:
        self.base.append(pt)
        self.trans.append({pt: self._id})
        self.done.append(set())

    def _level_gens(self, lvl: int):
        # Strong generators available to level lvl: everything inserted at
        # levels >= lvl fixes base[:lvl] and so acts within its stabilizer.
        return [(serial, g) for serial, (g, at) in enumerate(self.gens) if at >= lvl]

    def _extend_orbit(self, lvl: int) -> None:
        trans = self.trans[lvl]
        queue = deque(trans)
        gens = [g for _, g in self._level_gens(lvl)]
        while queue:
            x = queue.popleft()
            tx = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = self._mul(tx, g)
                    queue.append(y)

    def _strip(self, g, start: int):
        for lvl in range(start, len(self.base)):
            x = g[self.base[lvl]]
            if x == self.base[lvl]:
                continue
            t = self.trans[lvl]
            if x not in t:
                return g, lvl
            g = self._mul(g, self._inv(t[x]))
        return g, len(self.base)

    def _add_gen(self, g, lvl: int) -> None:
        if lvl == len(self.base):
            moved = min(i for i in range(self.degree) if g[i] != i)
            self._new_level(moved)
        self.gens.append((g, lvl))
        for i in range(min(lvl, len(self.base) - 1), -1, -1):
            self._extend_orbit(i)

    def _process(self) -> None:
        # Sift every unprocessed Schreier generator everywhere.  A pair once
        # sifted to identity stays valid when the chain grows, so pairs are
        # processed at most once; insertions only create new pairs.
        while True:
            inserted = False
            for lvl in range(len(self.base)):
                trans = self.trans[lvl]
                done = self.done[lvl]
                for x in list(trans):
                    tx = trans[x]
                    for serial, s in self._level_gens(lvl):
                        if (x, serial) in done:
                            continue
                        done.add((x, serial))
                        schreier = self._mul(self._mul(tx, s), self._inv(trans[s[x]]))
                        if self._is_id(schreier):
                            continue
                        residue, res_lvl = self._strip(schreier, lvl + 1)
                        if not self._is_id(residue):
                            self._add_gen(residue, res_lvl)
                            inserted = True
            if not inserted:
                return

    def insert(self, g: Perm) -> None:
        packed = self._pack(g)
        residue, lvl = self._strip(packed, 0)
        if not self._is_id(residue):
            self._add_gen(residue, lvl)
            self._process()

    def order(self) -> int:
        n = 1
        for trans in self.trans:
            n *= len(trans)
        return n


def schreier_sims_order(generators: list[Perm]) -> int:
    if not generators:
        raise ValueError("need at least one generator")
    degree = len(generators[0])
    chain = _Chain(degree)
    for g in generators:
        _check_perm(g)
        chain.insert(g)
    return chain.order()


def group_order(generators: list[Perm]) -> int:
    """Exact group order via a stabilizer chain (no enumeration cap)."""
    return schreier_sims_order(generators)


@dataclass
class GroupSpec:
    """A permutation group given by generators, with lazy element enumeration."""

    degree: int
    generators: list[Perm]
    name: str = ""
    _elements: list[Perm] | None = field(default=None, repr=False)
    _order: int | None = field(default=None, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.degree:
                raise ValueError("generator degree mismatch")

    def elements(self, cap: int = DEFAULT_CLOSURE_CAP) -> list[Perm]:
        if self._elements is None:
            self._elements = closure(self.generators, cap=cap)
        return self._elements

    def order(self) -> int:
        if self._order is None:
            if self._elements is not None:
                self._order = len(self._elements)
            else:
                self._order = group_order(self.generators)
        return self._order


def orbit_count_on(perm: Perm, subset) -> tuple[int, int]:
    """Cycle and fixed-point counts of ``perm`` restricted to ``subset``.

    Returns (theta, fixed) where theta is the number of cycles the permutation
    induces inside the subset and fixed the number of its fixed points there.
    Raises NotSetwiseStable if the subset is not mapped onto itself.
    """
    pts = sorted(subset)
    inside = set(pts)
    for v in pts:
        if perm[v] not in inside:
            raise NotSetwiseStable(f"point {v} maps outside the subset")
    theta = 0
    fixed = 0
    seen: set[int] = set()
    for v in pts:
        if v in seen:
            continue
        theta += 1
        if perm[v] == v:
            fixed += 1
            seen.add(v)
            continue
        w = v
        while w not in seen:
            seen.add(w)
            w = perm[w]
    return theta, fixed


def colex_ksets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of range(n) in colexicographic order."""
    return sorted(combinations(range(n), k), key=lambda s: tuple(reversed(s)))


def induced_action_on_ksets(n: int, k: int) -> GroupSpec:
    """The symmetric group on n letters acting on k-subsets, colex order."""
    if not 1 <= k < n:
        raise TooLarge(f"need 1 <= k < n, got k={k}, n={n}")
    deg = binomial(n, k)
    if deg > 10**6:
        raise TooLarge(f"degree {deg} exceeds 10^6")
    subsets = colex_ksets(n, k)
    index = {s: i for i, s in enumerate(subsets)}
    sn_gens = [perm_from_cycles(n, [(0, 1)]), perm_from_cycles(n, [tuple(range(n))])]
    gens = []
    for g in sn_gens:
        gens.append(tuple(index[tuple(sorted(g[x] for x in s))] for s in subsets))
    return GroupSpec(degree=deg, generators=gens, name=f"S{n} on {k}-sets")


def wreath_action(base: GroupSpec, n: int) -> GroupSpec:
    """Coordinate-wise base action plus coordinate permutations, on n-tuples.

    Degree is m**n with tuples indexed in row-major order (first coordinate
    most significant).  Generators: each base generator applied in the first
    coordinate, a swap of the first two coordinates, and a full rotation of
    the coordinates.
    """
    m = base.degree
    if m < 2 or n < 2:
        raise TooLarge("need base degree >= 2 and n >= 2")
    deg = m**n
    if deg > 10**6:
        raise TooLarge(f"degree {deg} exceeds 10^6")
    weights = [m ** (n - 1 - i) for i in range(n)]

    def tuple_index(t):
        return sum(x * w for x, w in zip(t, weights))

    tuples = []

    def fill(prefix):
        if len(prefix) == n:
            tuples.append(tuple(prefix))
            return
        for x in range(m):
            fill(prefix + [x])

    fill([])
    gens: list[Perm] = []
    for g in base.generators:
        gens.append(tuple(tuple_index((g[t[0]],) + t[1:]) for t in tuples))
    swap = tuple(tuple_index((t[1], t[0]) + t[2:]) for t in tuples)
    rot = tuple(tuple_index(t[1:] + (t[0],)) for t in tuples)
    gens.extend([swap, rot])
    return GroupSpec(degree=deg, generators=gens, name=f"{base.name or 'base'} wr S{n}")
