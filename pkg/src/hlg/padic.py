"""Exact p-adic valuations, norms, Hensel lifting and the product formula.

Rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.  Norms are handled multiplicatively as exact
rationals, so the product formula is checked as ``prod |r|_v == 1`` with no
logarithms or floating point anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import factorint

from .errors import CompositeModulus, NotLiftable, ZeroInput

__all__ = [
    "INFINITE",
    "FactoredNorm",
    "as_rational",
    "is_prime",
    "require_prime",
    "factor",
    "valuation",
    "norm",
    "verify_product_formula",
    "poly_eval",
    "poly_derivative",
    "hensel_lift",
]

#: valuation of zero
INFINITE = math.inf

# Deterministic Miller-Rabin: the first 13 primes are a witness set for every
# n < 3317044064679887385961981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_BOUND = 3317044064679887385961981


def as_rational(r) -> Fraction:
    """Coerce ints, Fractions and strings such as ``"-3/4"`` to a Fraction."""
    if isinstance(r, Fraction):
        return r
    if isinstance(r, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(r, (int, str)):
        return Fraction(r)
    raise TypeError(f"cannot interpret {r!r} as an exact rational")


def is_prime(n: int) -> bool:
    """Deterministic primality for n below :data:`MR_BOUND`.

    Raises ValueError above the bound rather than answering probabilistically.
    """
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    if n >= MR_BOUND:
        raise ValueError(f"{n} exceeds the deterministic Miller-Rabin bound")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    try:
        ok = is_prime(p)
    except ValueError as exc:
        raise CompositeModulus(str(exc)) from None
    if not ok:
        raise CompositeModulus(f"{p} is not prime")
    return p


def factor(n: int) -> dict[int, int]:
    """Prime factorization of |n| (n != 0).  Trial division for small n."""
    n = abs(n)
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if n > 10**12:
        return {int(p): int(e) for p, e in factorint(n).items()}
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(r, p: int) -> int | float:
    """v_p(r), with |r|_p = p**(-v).  Returns INFINITE for r == 0."""
    require_prime(p)
    r = as_rational(r)
    if r == 0:
        return INFINITE
    return _int_valuation(r.numerator, p) - _int_valuation(r.denominator, p)


def norm(r, p: int) -> Fraction:
    """The normalized p-adic absolute value as an exact rational."""
    v = valuation(r, p)
    if v == INFINITE:
        return Fraction(0)
    return Fraction(p) ** (-v)


@dataclass(frozen=True)
class FactoredNorm:
    """Certificate for the product formula.

    ``exponents`` maps each prime dividing numerator or denominator to v_p(r);
    ``archimedean`` is |r| as an exact rational; ``product`` is
    ``archimedean * prod p**(-v_p)``, which must equal 1.
    """

    value: Fraction
    exponents: dict[int, int] = field(default_factory=dict)
    archimedean: Fraction = Fraction(1)
    product: Fraction = Fraction(1)

    @property
    def holds(self) -> bool:
        return self.product == 1

    def reconstruct(self) -> Fraction:
        out = Fraction(1)
        for p, v in self.exponents.items():
            out *= Fraction(p) ** v
        return out if self.value > 0 else -out

    def as_dict(self) -> dict:
        cert = {str(p): v for p, v in sorted(self.exponents.items())}
        cert["inf"] = str(self.archimedean)
        return {"value": str(self.value), "product": str(self.product), "certificate": cert}


def verify_product_formula(r) -> FactoredNorm:
    r = as_rational(r)
    if r == 0:
        raise ZeroInput("the product formula needs r != 0")
    exps = {p: e for p, e in factor(r.numerator).items()} if abs(r.numerator) > 1 else {}
    if r.denominator > 1:
        for p, e in factor(r.denominator).items():
            exps[p] = exps.get(p, 0) - e
    arch = abs(r)
    prod = arch
    for p, v in exps.items():
        prod *= Fraction(p) ** (-v)
    return FactoredNorm(value=r, exponents=dict(sorted(exps.items())), archimedean=arch, product=prod)


# -- polynomials as dense coefficient lists, constant term first --------------

def poly_eval(coeffs: Sequence[int], x: int, mod: int | None = None) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
        if mod is not None:
            acc %= mod
    return acc


def poly_derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:] or [0]


def hensel_lift(coeffs: Sequence[int], p: int, root: int, k: int, target_k: int) -> int:
    """Lift a root of ``f`` mod p**k to the unique p-adic root, mod p**target_k.

    Requires f(root) = 0 mod p**k and k > 2m where m = v_p(f'(root)).  The
    returned x satisfies f(x) = 0 mod p**target_k and x = root mod p**(k-m).
    """
    require_prime(p)
    if k < 1 or target_k < 1:
        raise ValueError("precisions must be positive")
    pk = p**k
    if poly_eval(coeffs, root, pk) != 0:
        raise NotLiftable(f"f({root}) is not 0 mod {p}^{k}")
    dval = poly_eval(poly_derivative(coeffs), root)
    m = _int_valuation(dval, p) if dval != 0 else INFINITE
    if m == INFINITE or k <= 2 * m:
        raise NotLiftable(f"strong Hensel needs k > 2*v_p(f'(root)); k={k}, m={m}")
    work = p ** (max(target_k, k) + 2 * m)
    goal = p ** (max(target_k, k) + m)
    x = root % work
    deriv = poly_derivative(coeffs)
    while poly_eval(coeffs, x, goal) != 0:
        fx = poly_eval(coeffs, x, work)
        dx = poly_eval(deriv, x, work)
        unit = pow(dx // p**m, -1, work)
        x = (x - (fx // p**m) * unit) % work
    return x % p**target_k
