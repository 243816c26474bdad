"""Certified p-adic zero search for diagonal forms sum a_i x_i^d.

Any primitive p-adic zero has a unit coordinate x_j, and there the partial
derivative d*a_j*x_j^(d-1) has valuation at most M = max_i v_p(d*a_i).  A
primitive zero mod p^(2M+1) therefore always satisfies the strong Hensel
condition v(F) > 2*v(dF/dx_j) and lifts.  So searching primitive residues up
to precision p^(2M+1) decides solubility, and a search tree that dies out
before that depth is a proof of insolubility.

The tree is walked depth first.  Vectors are normalized so the first unit
coordinate (the pivot) is exactly 1, which quotients out the unit scaling.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence


def _vp(n: int, p: int) -> int | None:
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def form_value(coeffs: Sequence[int], degree: int, x: Sequence[int]) -> int:
    return sum(a * xi**degree for a, xi in zip(coeffs, x))


def precision_bound(coeffs: Sequence[int], degree: int, p: int) -> int:
    """M = max_i v_p(d*a_i); searching mod p^(2M+1) is complete."""
    return max(_vp(degree * a, p) for a in coeffs)


@dataclass(frozen=True)
class LocalSearch:
    soluble: bool
    p: int
    precision: int
    # populated when soluble
    witness: tuple[int, ...] | None = None
    level: int | None = None
    lift_index: int | None = None
    derivative_valuation: int | None = None
    # populated when insoluble: deepest level at which candidates were killed
    exhausted_level: int | None = None
    nodes: int = 0

    def certificate(self) -> dict:
        if self.soluble:
            return {
                "kind": "strong-hensel",
                "modulus": f"{self.p}^{self.level}",
                "witness": list(self.witness),
                "lift_coordinate": self.lift_index,
                "derivative_valuation": self.derivative_valuation,
                "condition": f"v(F) >= {self.level} > 2*{self.derivative_valuation}",
            }
        return {
            "kind": "exhausted-primitive-search",
            "modulus": f"{self.p}^{self.exhausted_level}",
            "complete_precision": f"{self.p}^{self.precision}",
            "nodes": self.nodes,
        }


def search_local_zero(coeffs: Sequence[int], degree: int, p: int) -> LocalSearch:
    n = len(coeffs)
    big_m = precision_bound(coeffs, degree, p)
    K = 2 * big_m + 1
    dcoef = [degree * a for a in coeffs]
    nodes = 0
    deepest = 1

    def certified(x, k):
        # smallest derivative valuation visible at this precision
        best = None
        for i in range(n):
            v = _vp(dcoef[i] * x[i] ** (degree - 1), p)
            if v is not None and v < k and (best is None or v < best[1]):
                best = (i, v)
        if best is not None and k > 2 * best[1]:
            return best
        return None

    for pivot in range(n):
        free = [i for i in range(n) if i != pivot]
        # level 1: coordinates before the pivot vanish mod p
        ranges = [range(1) if i < pivot else range(p) for i in free]
        for vals in itertools.product(*ranges):
            x = [0] * n
            x[pivot] = 1
            for i, v in zip(free, vals):
                x[i] = v
            stack = [(tuple(x), 1)]
            while stack:
                x, k = stack.pop()
                nodes += 1
                deepest = max(deepest, k)
                if form_value(coeffs, degree, x) % p**k:
                    continue
                hit = certified(x, k)
                if hit is not None:
                    return LocalSearch(True, p, K, witness=x, level=k, lift_index=hit[0],
                                       derivative_valuation=hit[1], nodes=nodes)
                if k >= K:
                    # unreachable when the bound is right; kept as a hard guard
                    raise AssertionError(f"uncertified zero at complete precision: {x} mod {p}^{k}")
                step = p**k
                for ts in itertools.product(range(p), repeat=len(free)):
                    y = list(x)
                    for i, t in zip(free, ts):
                        y[i] = x[i] + t * step
                    stack.append((tuple(y), k + 1))
    return LocalSearch(False, p, K, exhausted_level=deepest, nodes=nodes)


def enumerate_primitive_zeros(coeffs: Sequence[int], degree: int, p: int, k: int) -> set[tuple[int, ...]]:
    """All pivot-normalized primitive zeros mod p^k, built level by level.

    Slow and Hensel-free; used as an independent oracle in tests.
    """
    n = len(coeffs)
    level = set()
    for pivot in range(n):
        ranges = [range(1) if i < pivot else (range(1, 2) if i == pivot else range(p)) for i in range(n)]
        for x in itertools.product(*ranges):
            if form_value(coeffs, degree, x) % p == 0:
                level.add((pivot,) + x)
    for j in range(1, k):
        step, mod = p**j, p ** (j + 1)
        nxt = set()
        for entry in level:
            pivot, x = entry[0], entry[1:]
            free = [i for i in range(n) if i != pivot]
            for ts in itertools.product(range(p), repeat=len(free)):
                y = list(x)
                for i, t in zip(free, ts):
                    y[i] += t * step
                if form_value(coeffs, degree, y) % mod == 0:
                    nxt.add((pivot,) + tuple(y))
        level = nxt
    return {e[1:] for e in level}
