"""Finite groups as multiplication tables, presets, automorphisms and actions."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import InvalidGroup

Perm = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Elements are 0..n-1; ``table[i][j]`` is the index of i*j."""

    table: tuple[tuple[int, ...], ...]
    name: str = ""
    labels: tuple = ()
    _inv: tuple[int, ...] = field(default=(), repr=False)
    identity: int = field(default=0, repr=False)
    verify: bool = field(default=True, repr=False)

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise InvalidGroup("table must be square and nonempty")
        if any(not 0 <= x < n for row in t for x in row):
            raise InvalidGroup("table entries out of range")
        ids = [e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))]
        if not ids:
            raise InvalidGroup("no identity element")
        e = ids[0]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if t[x][y] == e]
            if len(ys) != 1 or t[ys[0]][x] != e:
                raise InvalidGroup(f"element {x} has no two-sided inverse")
            inv.append(ys[0])
        if self.verify:
            for a, b, c in itertools.product(range(n), repeat=3):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise InvalidGroup(f"associativity fails at {(a, b, c)}")
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "_inv", tuple(inv))

    def __len__(self):
        return len(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def elements(self) -> range:
        return range(len(self.table))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements() for b in self.elements())

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(g, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def generators(self) -> tuple[int, ...]:
        """A small generating set, greedily preferring high-order elements."""
        order = sorted(self.elements(), key=lambda a: (-self.element_order(a), a))
        gens: list[int] = []
        span = frozenset({self.identity})
        for a in order:
            if len(span) == self.order:
                break
            if a not in span:
                gens.append(a)
                span = self.generated(gens)
        return tuple(gens)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.mul(a, self.inv(b)) in s for a in s for b in s)

    def cyclic_subgroups(self) -> list[frozenset[int]]:
        return sorted({self.generated([a]) for a in self.elements()}, key=lambda h: (len(h), sorted(h)))

    def to_json(self) -> dict:
        return {"elements": self.order, "table": [list(r) for r in self.table]}


def from_operation(elements: Sequence, op: Callable, name: str = "") -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return FiniteGroup(tuple(map(tuple, table)), name, tuple(elements))


def cyclic(n: int) -> FiniteGroup:
    return from_operation(list(range(n)), lambda a, b: (a + b) % n, f"C{n}")


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    elems = list(itertools.product(*(g.elements() for g in groups)))
    op = lambda a, b: tuple(g.mul(x, y) for g, x, y in zip(groups, a, b))
    return from_operation(elems, op, "x".join(g.name for g in groups))


def symmetric(n: int) -> FiniteGroup:
    if n > 4:
        raise ValueError("presets stop at S4")
    perms = sorted(itertools.permutations(range(n)))
    # (a*b)(i) = a(b(i))
    return from_operation(perms, lambda a, b: tuple(a[b[i]] for i in range(n)), f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; elements (r, s) mean rot^r ref^s."""
    elems = [(r, s) for s in (0, 1) for r in range(n)]
    op = lambda a, b: ((a[0] + (b[0] if a[1] == 0 else -b[0])) % n, (a[1] + b[1]) % 2)
    return from_operation(elems, op, f"D{2 * n}")


def quaternion() -> FiniteGroup:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, axis)
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
    }
    elems = [(s, ax) for s in (1, -1) for ax in range(4)]

    def op(a, b):
        sgn, ax = mult[(a[1], b[1])]
        return (a[0] * b[0] * sgn, ax)

    return from_operation(elems, op, "Q8")


def dicyclic3() -> FiniteGroup:
    """Dic3 = C3 x| C4, order 12."""
    elems = [(a, b) for a in range(3) for b in range(4)]
    op = lambda x, y: ((x[0] + (y[0] if x[1] % 2 == 0 else -y[0])) % 3, (x[1] + y[1]) % 4)
    return from_operation(elems, op, "Dic3")


def alternating4() -> FiniteGroup:
    perms = sorted(p for p in itertools.permutations(range(4))
                   if sum(1 for i, j in itertools.combinations(range(4), 2) if p[i] > p[j]) % 2 == 0)
    return from_operation(perms, lambda a, b: tuple(a[b[i]] for i in range(4)), "A4")


def preset(name: str) -> FiniteGroup:
    """Groups by name: C<n>, products like C2xC4, S<n> (n <= 4), D<2n>, Q8, Dic3, A4."""
    name = name.strip()
    if "x" in name:
        return direct_product(*(preset(part) for part in name.split("x")))
    if name == "Q8":
        return quaternion()
    if name == "Dic3":
        return dicyclic3()
    if name == "A4":
        return alternating4()
    kind, num = name[0], int(name[1:])
    if kind == "C":
        return cyclic(num)
    if kind == "S":
        return symmetric(num)
    if kind == "D":
        if num % 2:
            raise ValueError("dihedral groups are named by their order D<2n>")
        return dihedral(num // 2)
    raise ValueError(f"unknown preset {name!r}")


LIBRARY_UP_TO_8 = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "C2xC4",
                   "C2xC2xC2", "S3", "D8", "Q8")
LIBRARY_9_TO_12 = ("C9", "C3xC3", "C10", "D10", "C11", "C12", "C2xC6", "D12", "Dic3", "A4")


def library(max_order: int) -> list[FiniteGroup]:
    names = LIBRARY_UP_TO_8 + LIBRARY_9_TO_12
    return [g for g in map(preset, names) if g.order <= max_order]


def group_from_json(spec) -> FiniteGroup:
    if isinstance(spec, str):
        return preset(spec)
    if "preset" in spec:
        return preset(spec["preset"])
    table = spec["table"]
    if "elements" in spec and spec["elements"] != len(table):
        raise InvalidGroup("'elements' disagrees with the table size")
    return FiniteGroup(tuple(map(tuple, table)), spec.get("name", ""))


# -- automorphisms and actions ------------------------------------------------

def compose(f: Perm, g: Perm) -> Perm:
    """(f o g)(x) = f(g(x))."""
    return tuple(f[x] for x in g)


def perm_inverse(f: Perm) -> Perm:
    out = [0] * len(f)
    for i, y in enumerate(f):
        out[y] = i
    return tuple(out)


def extend_hom(src: FiniteGroup, dst_mul: Callable[[object, object], object], dst_id,
               images: Mapping[int, object]) -> dict | None:
    """Extend generator images to a homomorphism, or None if inconsistent.

    Walks the Cayley graph from the identity with phi(g x) = phi(g) phi(x);
    consistency on every edge is equivalent to being a homomorphism.
    """
    gens = list(images)
    phi = {src.identity: dst_id}
    queue = deque([src.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = src.mul(g, x)
            val = dst_mul(images[g], phi[x])
            if y in phi:
                if phi[y] != val:
                    return None
            else:
                phi[y] = val
                queue.append(y)
    if len(phi) != src.order:
        return None
    return phi


def automorphisms(G: FiniteGroup) -> list[Perm]:
    gens = G.generators()
    if not gens:
        return [tuple(G.elements())]
    out = []
    orders = [G.element_order(g) for g in gens]
    cands = [[x for x in G.elements() if G.element_order(x) == o] for o in orders]
    for imgs in itertools.product(*cands):
        phi = extend_hom(G, G.mul, G.identity, dict(zip(gens, imgs)))
        if phi is None:
            continue
        perm = tuple(phi[x] for x in G.elements())
        if len(set(perm)) == G.order:
            out.append(perm)
    return sorted(out)


@dataclass(frozen=True, eq=False)
class GroupAction:
    """delta acting on gamma: ``action[s]`` is the permutation of gamma given by s."""

    delta: FiniteGroup
    gamma: FiniteGroup
    action: tuple[Perm, ...]

    def __post_init__(self):
        act = tuple(tuple(p) for p in self.action)
        object.__setattr__(self, "action", act)
        D, G = self.delta, self.gamma
        if len(act) != D.order:
            raise InvalidGroup("one automorphism per element of delta is required")
        for p in act:
            if sorted(p) != list(G.elements()):
                raise InvalidGroup("action is not by permutations")
            if any(p[G.mul(a, b)] != G.mul(p[a], p[b]) for a in G.elements() for b in G.elements()):
                raise InvalidGroup("action is not by automorphisms")
        for s in D.elements():
            for t in D.elements():
                if act[D.mul(s, t)] != compose(act[s], act[t]):
                    raise InvalidGroup("action is not a homomorphism")

    def act(self, s: int, g: int) -> int:
        return self.action[s][g]

    def is_trivial(self) -> bool:
        ident = tuple(self.gamma.elements())
        return all(p == ident for p in self.action)

    def to_json(self) -> dict:
        return {
            "delta": self.delta.to_json(),
            "gamma": self.gamma.to_json(),
            "action": {str(s): list(p) for s, p in enumerate(self.action)},
        }


def trivial_action(delta: FiniteGroup, gamma: FiniteGroup) -> GroupAction:
    ident = tuple(gamma.elements())
    return GroupAction(delta, gamma, tuple(ident for _ in delta.elements()))


def action_from_generators(delta: FiniteGroup, gamma: FiniteGroup, images: Mapping[int, Perm]) -> GroupAction:
    ident = tuple(gamma.elements())
    phi = extend_hom(delta, compose, ident, {int(k): tuple(v) for k, v in images.items()})
    if phi is None:
        raise InvalidGroup("generator images do not define an action")
    return GroupAction(delta, gamma, tuple(phi[s] for s in delta.elements()))


def all_actions(delta: FiniteGroup, gamma: FiniteGroup, up_to_conjugacy: bool = True) -> list[GroupAction]:
    """Every homomorphism delta -> Aut(gamma), optionally one per Aut(gamma)-conjugacy class."""
    auts = automorphisms(gamma)
    ident = tuple(gamma.elements())
    gens = delta.generators()
    if not gens:
        return [trivial_action(delta, gamma)]
    aut_order = {}
    for a in auts:
        k, x = 1, a
        while x != ident:
            x = compose(x, a)
            k += 1
        aut_order[a] = k
    cands = [[a for a in auts if delta.element_order(g) % aut_order[a] == 0] for g in gens]
    seen = set()
    out = []
    inverses = [(a, perm_inverse(a)) for a in auts]
    for imgs in itertools.product(*cands):
        phi = extend_hom(delta, compose, ident, dict(zip(gens, imgs)))
        if phi is None:
            continue
        key = tuple(phi[s] for s in delta.elements())
        if up_to_conjugacy:
            canon = min(tuple(compose(compose(a, p), ai) for p in key) for a, ai in inverses)
            if canon in seen:
                continue
            seen.add(canon)
        elif key in seen:
            continue
        else:
            seen.add(key)
        out.append(GroupAction(delta, gamma, key))
    return out


def action_from_json(spec: Mapping) -> GroupAction:
    delta = group_from_json(spec["delta"])
    gamma = group_from_json(spec["gamma"])
    act = spec.get("action", "trivial")
    if act == "trivial":
        return trivial_action(delta, gamma)
    if act == "inversion":
        if not gamma.is_abelian():
            raise InvalidGroup("inversion is an automorphism only for abelian gamma")
        inv = tuple(gamma.inv(g) for g in gamma.elements())
        gens = delta.generators()
        return action_from_generators(delta, gamma, {g: inv for g in gens})
    return action_from_generators(delta, gamma, {int(k): v for k, v in act.items()})
