"""Nonabelian H^1(delta, gamma) for finite groups.

A crossed homomorphism satisfies c(st) = c(s) * s(c(t)).  Two of them are
equivalent when c'(s) = g^-1 * c(s) * s(g) for some g in gamma.

H^1 is computed two ways: by enumerating crossed homomorphisms and merging
twisted-conjugacy orbits, and as gamma-conjugacy classes of sections
delta -> gamma x| delta of the projection.  The two must agree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import (
    EnumerationBudgetExceeded,
    InvalidCocycle,
    NonabelianCoefficients,
    NotASubgroup,
)
from .groups import FiniteGroup, GroupAction, compose, extend_hom

Cocycle = tuple[int, ...]
DEFAULT_BUDGET = 10**7


def is_cocycle(action: GroupAction, c: Sequence[int]) -> bool:
    D, G = action.delta, action.gamma
    if len(c) != D.order or c[D.identity] != G.identity:
        return False
    return all(
        c[D.mul(s, t)] == G.mul(c[s], action.act(s, c[t]))
        for s in D.elements()
        for t in D.elements()
    )


def _check_cocycle(action: GroupAction, c: Sequence[int]) -> Cocycle:
    c = tuple(int(x) for x in c)
    if not is_cocycle(action, c):
        raise InvalidCocycle(f"{c} is not a crossed homomorphism")
    return c


def _budget_check(action: GroupAction, budget: int):
    k = len(action.delta.generators())
    if action.gamma.order**k > budget:
        raise EnumerationBudgetExceeded(
            f"|gamma|^gens = {action.gamma.order}^{k} exceeds the budget {budget}"
        )


def crossed_homomorphisms(action: GroupAction, budget: int = DEFAULT_BUDGET) -> list[Cocycle]:
    _budget_check(action, budget)
    D, G = action.delta, action.gamma
    gens = D.generators()
    if not gens:
        return [(G.identity,)]
    out = []
    for vals in itertools.product(G.elements(), repeat=len(gens)):
        c = {D.identity: G.identity}
        # c(s t) = c(s) s(c(t)) along every Cayley edge
        queue = [D.identity]
        ok = True
        while queue and ok:
            t = queue.pop()
            for s, cs in zip(gens, vals):
                st = D.mul(s, t)
                v = G.mul(cs, action.act(s, c[t]))
                if st in c:
                    if c[st] != v:
                        ok = False
                        break
                else:
                    c[st] = v
                    queue.append(st)
        if ok and len(c) == D.order:
            out.append(tuple(c[s] for s in D.elements()))
    return out


def twisted_conjugate(action: GroupAction, c: Cocycle, g: int) -> Cocycle:
    """s -> g^-1 c(s) s(g)."""
    G = action.gamma
    gi = G.inv(g)
    return tuple(G.mul(G.mul(gi, c[s]), action.act(s, g)) for s in action.delta.elements())


def coboundary(action: GroupAction, g: int) -> Cocycle:
    trivial = tuple(action.gamma.identity for _ in action.delta.elements())
    return twisted_conjugate(action, trivial, g)


@dataclass(frozen=True)
class CohomologyClass:
    representative: Cocycle
    members: frozenset

    def __len__(self):
        return len(self.members)

    def is_trivial(self, action: GroupAction) -> bool:
        return tuple(action.gamma.identity for _ in action.delta.elements()) in self.members


def _orbits(cocycles: Iterable[Cocycle], move) -> list[CohomologyClass]:
    remaining = set(cocycles)
    classes = []
    for c in sorted(remaining):
        if c not in remaining:
            continue
        orbit = frozenset(move(c))
        remaining -= orbit
        classes.append(CohomologyClass(min(orbit), orbit))
    return classes


def h1(action: GroupAction, budget: int = DEFAULT_BUDGET) -> list[CohomologyClass]:
    """One class per twisted-conjugacy orbit of crossed homomorphisms.

    The class containing the trivial cocycle is listed first.
    """
    cocycles = crossed_homomorphisms(action, budget)
    classes = _orbits(cocycles, lambda c: {twisted_conjugate(action, c, g) for g in action.gamma.elements()})
    return sorted(classes, key=lambda k: (not k.is_trivial(action), k.representative))


def semidirect_product(action: GroupAction) -> tuple[FiniteGroup, callable]:
    """gamma x| delta with (g, s)(h, t) = (g s(h), st); returns the group and an index map."""
    D, G = action.delta, action.gamma
    nd = D.order

    def idx(g, s):
        return g * nd + s

    table = []
    for g in G.elements():
        for s in D.elements():
            row = []
            for h in G.elements():
                for t in D.elements():
                    row.append(idx(G.mul(g, action.act(s, h)), D.mul(s, t)))
            table.append(row)
    # index g * nd + s lines up with the loop order above; associativity
    # follows from the action being a homomorphism into Aut(gamma)
    return FiniteGroup(tuple(map(tuple, table)), "semidirect", verify=False), idx


def h1_via_lifts(action: GroupAction, budget: int = DEFAULT_BUDGET) -> list[CohomologyClass]:
    """gamma-conjugacy classes of homomorphisms delta -> gamma x| delta lifting the identity."""
    _budget_check(action, budget)
    D, G = action.delta, action.gamma
    P, idx = semidirect_product(action)
    nd = D.order
    gens = D.generators()
    lifts = []
    if not gens:
        lifts.append((P.identity,))
    for vals in itertools.product(G.elements(), repeat=len(gens)):
        images = {s: idx(g, s) for s, g in zip(gens, vals)}
        phi = extend_hom(D, P.mul, P.identity, images)
        if phi is None:
            continue
        if any(phi[s] % nd != s for s in D.elements()):
            continue
        lifts.append(tuple(phi[s] for s in D.elements()))

    def conj(phi):
        out = set()
        for g in G.elements():
            x, xi = idx(g, D.identity), idx(G.inv(g), D.identity)
            out.add(tuple(P.mul(P.mul(x, f), xi) for f in phi))
        return out

    lift_classes = _orbits(lifts, conj)
    # read off the gamma-component of each section
    classes = []
    for k in lift_classes:
        members = frozenset(tuple(f // nd for f in phi) for phi in k.members)
        classes.append(CohomologyClass(min(members), members))
    return sorted(classes, key=lambda k: (not k.is_trivial(action), k.representative))


def h1_paths_agree(action: GroupAction) -> bool:
    a = {k.members for k in h1(action)}
    b = {k.members for k in h1_via_lifts(action)}
    return a == b


# -- restriction and the Sha kernel -------------------------------------------

def restriction_is_trivial(action: GroupAction, c: Cocycle, subgroup: Iterable[int]) -> bool:
    """True iff c restricted to the subgroup is g^-1 h(g) for some g."""
    H = list(subgroup)
    G = action.gamma
    return any(
        all(c[h] == G.mul(G.inv(g), action.act(h, g)) for h in H)
        for g in G.elements()
    )


def sha_kernel(action: GroupAction, family: Sequence[Iterable[int]],
               classes: list[CohomologyClass] | None = None) -> list[CohomologyClass]:
    """Classes whose restriction to every member of the family is trivial."""
    fam = [frozenset(h) for h in family]
    for h in fam:
        if not action.delta.is_subgroup(h):
            raise NotASubgroup(f"{sorted(h)} is not a subgroup of delta")
    if classes is None:
        classes = h1(action)
    return [k for k in classes if all(restriction_is_trivial(action, k.representative, h) for h in fam)]


def cyclic_family(action: GroupAction) -> list[frozenset[int]]:
    return action.delta.cyclic_subgroups()


# -- abelian coefficients: Baer sum -------------------------------------------

def _require_abelian(action: GroupAction):
    if not action.gamma.is_abelian():
        raise NonabelianCoefficients("Baer sums need abelian coefficients")


def baer_sum(action: GroupAction, c1: Sequence[int], c2: Sequence[int]) -> Cocycle:
    _require_abelian(action)
    c1, c2 = _check_cocycle(action, c1), _check_cocycle(action, c2)
    G = action.gamma
    out = tuple(G.mul(a, b) for a, b in zip(c1, c2))
    assert is_cocycle(action, out)
    return out


def cocycle_negation(action: GroupAction, c: Sequence[int]) -> Cocycle:
    _require_abelian(action)
    return tuple(action.gamma.inv(x) for x in _check_cocycle(action, c))


def torsor_contraction(action: GroupAction, c1: Sequence[int], c2: Sequence[int]) -> Cocycle:
    """Baer sum computed on torsors.

    P_c is gamma with translation action and twisted delta-action
    s * x = c(s) + s(x).  The sum is (P_1 x P_2) / gamma where a acts by
    (w1, w2) -> (w1 + a, w2 - a); its cocycle is read off at a base point.
    """
    _require_abelian(action)
    c1, c2 = _check_cocycle(action, c1), _check_cocycle(action, c2)
    G, D = action.gamma, action.delta
    pairs = list(itertools.product(G.elements(), repeat=2))
    orbit_of = {}
    orbits = []
    for w in pairs:
        if w in orbit_of:
            continue
        orb = frozenset((G.mul(w[0], a), G.mul(w[1], G.inv(a))) for a in G.elements())
        for x in orb:
            orbit_of[x] = len(orbits)
        orbits.append(orb)

    def delta_act(s, o):
        w1, w2 = next(iter(orbits[o]))
        return orbit_of[(G.mul(c1[s], action.act(s, w1)), G.mul(c2[s], action.act(s, w2)))]

    def gamma_act(a, o):
        w1, w2 = next(iter(orbits[o]))
        return orbit_of[(G.mul(a, w1), w2)]

    base = orbit_of[(G.identity, G.identity)]
    out = []
    for s in D.elements():
        target = delta_act(s, base)
        hits = [a for a in G.elements() if gamma_act(a, base) == target]
        assert len(hits) == 1, "the contracted torsor must be simply transitive"
        out.append(hits[0])
    return tuple(out)


def class_of(classes: Sequence[CohomologyClass], c: Sequence[int]) -> int:
    c = tuple(c)
    for i, k in enumerate(classes):
        if c in k.members:
            return i
    raise InvalidCocycle(f"{c} is not in any listed class")


# -- twisting -----------------------------------------------------------------

def twist(action: GroupAction, c: Sequence[int]) -> GroupAction:
    """Inner twist s -> conj(c(s)) o s, where conj(g)(x) = g x g^-1."""
    c = _check_cocycle(action, c)
    G = action.gamma
    perms = []
    for s in action.delta.elements():
        g, gi = c[s], G.inv(c[s])
        inner = tuple(G.mul(G.mul(g, x), gi) for x in G.elements())
        perms.append(compose(inner, action.action[s]))
    return GroupAction(action.delta, action.gamma, tuple(perms))


def twist_isomorphism(action: GroupAction, b: int) -> tuple[int, ...]:
    """For c = coboundary(b), x -> b^-1 x b is delta-equivariant from action to twist(action, c)."""
    G = action.gamma
    twisted = twist(action, coboundary(action, b))
    psi = tuple(G.mul(G.mul(G.inv(b), x), b) for x in G.elements())
    for s in action.delta.elements():
        for x in G.elements():
            assert twisted.act(s, psi[x]) == psi[action.act(s, x)]
    return psi
