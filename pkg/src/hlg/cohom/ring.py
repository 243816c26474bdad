"""Integral group ring of a cyclic group, the derivative operator, and
orbit counting for x -> -x on finite abelian groups."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from sympy import factorint
from sympy.utilities.iterables import partitions


@dataclass(frozen=True)
class GroupRingElement:
    """sum_i coeffs[i] * gamma^i in Z[C_n]."""

    coeffs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, n: int) -> "GroupRingElement":
        return cls((0,) * n)

    @classmethod
    def gamma_power(cls, n: int, i: int = 1, scale: int = 1) -> "GroupRingElement":
        c = [0] * n
        c[i % n] = scale
        return cls(tuple(c))

    def __add__(self, other):
        return GroupRingElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return GroupRingElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(tuple(other * a for a in self.coeffs))
        n = self.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[(i + j) % n] += a * b
        return GroupRingElement(tuple(out))

    __rmul__ = __mul__

    def __str__(self):
        terms = [f"{c}*g^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def norm_element(n: int) -> GroupRingElement:
    return GroupRingElement((1,) * n)


def derivative_operator(n: int) -> GroupRingElement:
    """D = sum_{i=0}^{n-1} i * gamma^i in Z[C_n]."""
    return GroupRingElement(tuple(range(n)))


@dataclass
class KolyvaginCheck:
    order: int
    lhs: GroupRingElement
    rhs: GroupRingElement

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {"order": self.order, "lhs": list(self.lhs.coeffs), "rhs": list(self.rhs.coeffs), "holds": self.holds}


def kolyvagin_derivative_check(order: int) -> KolyvaginCheck:
    """Check (gamma - 1) D = order * 1 - Norm in Z[C_order]."""
    if order < 2:
        raise ValueError("order must be at least 2")
    n = order
    one = GroupRingElement.gamma_power(n, 0)
    lhs = (GroupRingElement.gamma_power(n, 1) - one) * derivative_operator(n)
    rhs = one * n - norm_element(n)
    return KolyvaginCheck(n, lhs, rhs)


# -- x -> -x on finite abelian groups ------------------------------------------

@dataclass
class OrbitCount:
    invariants: tuple[int, ...]
    formula: int
    enumerated: int

    @property
    def agree(self) -> bool:
        return self.formula == self.enumerated

    def as_dict(self) -> dict:
        return {"invariants": list(self.invariants), "formula": self.formula,
                "enumerated": self.enumerated, "agree": self.agree}


def orbit_count_involution(invariants: Sequence[int]) -> OrbitCount:
    """Orbits of x -> -x on Z/n_1 x ... x Z/n_k, by (|A| + |A[2]|)/2 and by enumeration."""
    inv = tuple(int(n) for n in invariants if int(n) != 1)
    if any(n < 1 for n in inv):
        raise ValueError("cyclic factors must have positive order")
    size = math.prod(inv)
    two_torsion = math.prod(math.gcd(2, n) for n in inv)
    formula, rem = divmod(size + two_torsion, 2)
    assert rem == 0
    seen = set()
    orbits = 0
    for x in itertools.product(*(range(n) for n in inv)):
        if x in seen:
            continue
        orbits += 1
        seen.add(x)
        seen.add(tuple((-a) % n for a, n in zip(x, inv)))
    return OrbitCount(inv, formula, orbits)


def abelian_groups_of_order(n: int) -> list[tuple[int, ...]]:
    """Every abelian group of order n, as its list of prime-power cyclic factors."""
    per_prime = []
    for p, e in factorint(n).items():
        per_prime.append([tuple(p**k for k, m in part.items() for _ in range(m))
                          for part in (dict(q) for q in partitions(e))])
    return [tuple(sorted(sum(choice, ()))) for choice in itertools.product(*per_prime)] if per_prime else [()]
