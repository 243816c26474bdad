"""Diagonal quadratic forms: local and global solubility, equivalence over Q.

Also holds the infinitesimal-automorphism solver for smooth diagonal
hypersurfaces of any degree.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import _local
from .errors import RankMismatch, SingularForm, TooFewVariables, ZeroInput
from .padic import factor, hensel_lift, is_prime, require_prime

REAL = "REAL"
Place = Union[int, str]


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write n = s * f**2 with s squarefree (sign kept on s)."""
    if n == 0:
        raise ZeroInput("0 has no squarefree part")
    s, f = (1 if n > 0 else -1), 1
    for p, e in factor(n).items() if abs(n) > 1 else ():
        s *= p ** (e % 2)
        f *= p ** (e // 2)
    return s, f


def squarefree_part(n: int) -> int:
    return squarefree_decomposition(n)[0]


@dataclass(frozen=True)
class DiagonalQuadraticForm:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) < 2:
            raise TooFewVariables("a diagonal quadratic form needs at least two variables")
        if any(a == 0 for a in self.coeffs):
            raise SingularForm("zero coefficient: the form is degenerate")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: Sequence) -> int:
        return sum(a * xi * xi for a, xi in zip(self.coeffs, x))

    def normalized(self) -> tuple["DiagonalQuadraticForm", tuple[int, ...]]:
        """Squarefree coefficients and the square factors f_i removed.

        A zero x' of the normalized form gives the zero x_i = x'_i / f_i of
        the original.
        """
        parts = [squarefree_decomposition(a) for a in self.coeffs]
        return DiagonalQuadraticForm(tuple(s for s, _ in parts)), tuple(f for _, f in parts)

    def bad_primes(self) -> list[int]:
        prod = 2 * math.prod(self.coeffs)
        return sorted(factor(prod))

    def to_json(self) -> dict:
        return {"degree": 2, "coeffs": list(self.coeffs)}


def _as_form(form) -> DiagonalQuadraticForm:
    return form if isinstance(form, DiagonalQuadraticForm) else DiagonalQuadraticForm(tuple(form))


def _primitive(v: Sequence) -> tuple[int, ...]:
    fr = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints) or 1
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


@dataclass
class LocalVerdict:
    place: Place
    soluble: bool
    witness: tuple | None = None
    certificate: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "place": self.place,
            "soluble": self.soluble,
            "witness": list(self.witness) if self.witness is not None else None,
            "certificate": self.certificate,
        }


def chevalley_zero(form, p: int) -> tuple[int, ...]:
    """A nontrivial zero mod p of a diagonal form in at least three variables."""
    form = _as_form(form)
    require_prime(p)
    if form.rank < 3:
        raise TooFewVariables("Chevalley needs more variables than the degree")
    n = form.rank
    for x in itertools.product(range(p), repeat=n):
        if any(x) and form(x) % p == 0:
            return x
    raise AssertionError("Chevalley-Warning guarantees a zero")  # pragma: no cover


def _hensel_witness(coeffs, degree, p, res: _local.LocalSearch, target: int) -> tuple[int, ...]:
    """Push a certified residue witness to precision p^target by lifting one coordinate."""
    x = list(res.witness)
    i = res.lift_index
    rest = sum(a * xi**degree for j, (a, xi) in enumerate(zip(coeffs, x)) if j != i)
    poly = [rest] + [0] * (degree - 1) + [coeffs[i]]
    x[i] = hensel_lift(poly, p, x[i] % p**res.level, res.level, max(target, res.level))
    return tuple(x)


def local_solubility(form, place: Place) -> LocalVerdict:
    """Decide whether the form has a nontrivial zero over R or over Q_p."""
    form = _as_form(form)
    if place == REAL:
        pos = [i for i, a in enumerate(form.coeffs) if a > 0]
        neg = [i for i, a in enumerate(form.coeffs) if a < 0]
        if pos and neg:
            return LocalVerdict(REAL, True, None, {"kind": "sign-change", "positive": pos[0], "negative": neg[0]})
        return LocalVerdict(REAL, False, None, {"kind": "definite", "sign": "+" if pos else "-"})
    p = require_prime(int(place))
    norm, scale = form.normalized()
    coeffs = norm.coeffs
    if form.rank >= 3 and p != 2 and all(a % p for a in coeffs):
        x = chevalley_zero(norm, p)
        return LocalVerdict(p, True, x, {"kind": "chevalley-hensel", "modulus": f"{p}^1", "scaling": list(scale)})
    res = _local.search_local_zero(coeffs, 2, p)
    cert = res.certificate()
    cert["scaling"] = list(scale)
    if res.soluble:
        lifted = _hensel_witness(coeffs, 2, p, res, res.level + 3)
        assert norm(lifted) % p ** (res.level + 3) == 0
        cert["lifted_witness"] = list(lifted)
        cert["lifted_modulus"] = f"{p}^{res.level + 3}"
        return LocalVerdict(p, True, res.witness, cert)
    return LocalVerdict(p, False, None, cert)


# -- Hilbert symbols -----------------------------------------------------------

def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a: int, b: int, place: Place) -> int:
    """(a, b)_v = +1 iff z^2 = a x^2 + b y^2 has a nontrivial zero at v."""
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol of zero")
    if place == REAL:
        return -1 if (a < 0 and b < 0) else 1
    p = require_prime(int(place))
    alpha, u = _split(a, p)
    beta, w = _split(b, p)
    if p != 2:
        sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
        return sign * _legendre(u, p) ** beta * _legendre(w, p) ** alpha
    eps = lambda t: ((t - 1) // 2) % 2
    omega = lambda t: ((t * t - 1) // 8) % 2
    e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    discriminant: int
    signature: tuple[int, int]
    hasse: dict

    def symbol(self, place: Place) -> int:
        return self.hasse.get(place, 1)

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "discriminant": self.discriminant,
            "signature": list(self.signature),
            "hasse": {str(k): v for k, v in self.hasse.items()},
        }


def hasse_invariant(coeffs: Sequence[int], place: Place) -> int:
    out = 1
    for i, j in itertools.combinations(range(len(coeffs)), 2):
        out *= hilbert_symbol(coeffs[i], coeffs[j], place)
    return out


def form_invariants(form) -> FormInvariants:
    form = _as_form(form)
    norm, _ = form.normalized()
    places: list[Place] = [REAL] + norm.bad_primes()
    pos = sum(1 for a in form.coeffs if a > 0)
    return FormInvariants(
        rank=form.rank,
        discriminant=squarefree_part(math.prod(norm.coeffs)),
        signature=(pos, form.rank - pos),
        hasse={v: hasse_invariant(norm.coeffs, v) for v in places},
    )


def equivalent_over_Q(f, g) -> tuple[bool, dict]:
    """Rational equivalence via rank, discriminant, signature and Hasse symbols."""
    f, g = _as_form(f), _as_form(g)
    if f.rank != g.rank:
        raise RankMismatch(f"ranks differ: {f.rank} vs {g.rank}")
    fi, gi = form_invariants(f), form_invariants(g)
    disagree: list[str] = []
    if fi.discriminant != gi.discriminant:
        disagree.append("discriminant")
    if fi.signature != gi.signature:
        disagree.append(REAL)
    places = [REAL] + sorted({*fi.hasse, *gi.hasse} - {REAL})
    for v in places:
        if fi.symbol(v) != gi.symbol(v) and str(v) not in disagree:
            disagree.append(str(v))
    report = {"f": fi.as_dict(), "g": gi.as_dict(), "disagreements": disagree}
    return not disagree, report


# -- global decision -----------------------------------------------------------

def _legendre_reduce(k: Sequence[int]) -> tuple[list[int], list[Fraction]]:
    """Reduce k1 x^2 + k2 y^2 + k3 z^2 to squarefree, pairwise coprime coefficients.

    Returns (k', mult) such that x_i = mult_i * x'_i maps zeros of the reduced
    form to zeros of the original.
    """
    k = list(k)
    mult = [Fraction(1)] * 3
    while True:
        changed = False
        for i in range(3):
            s, f = squarefree_decomposition(k[i])
            if f > 1:
                k[i] = s
                mult[i] /= f
                changed = True
        g = math.gcd(*k)
        if g > 1:
            k = [x // g for x in k]
            changed = True
        for i, j in ((0, 1), (0, 2), (1, 2)):
            g = math.gcd(k[i], k[j])
            if g > 1:
                l = 3 - i - j
                k[i] //= g
                k[j] //= g
                k[l] *= g
                mult[l] *= g
                changed = True
                break
        if not changed:
            return k, mult


@dataclass
class MordellResult:
    coeffs: tuple[int, int, int]
    witness: tuple[int, int, int] | None
    reduced: tuple[int, int, int]
    box: tuple[int, int, int]

    def as_dict(self) -> dict:
        return {
            "coeffs": list(self.coeffs),
            "witness": list(self.witness) if self.witness else None,
            "reduced": list(self.reduced),
            "box": list(self.box),
        }


def _box_search(A: int, B: int, C: int, bx: int, by: int, bz: int):
    ys = np.arange(by + 1, dtype=np.int64)
    bys = B * ys * ys
    for x in range(bx + 1):
        s = A * x * x + bys
        ok = s % C == 0
        if x == 0:
            ok[0] = False
        if not ok.any():
            continue
        q = s[ok] // C
        z = np.rint(np.sqrt(q.astype(np.float64))).astype(np.int64)
        hit = (z * z == q) & (z <= bz)
        if hit.any():
            idx = int(np.flatnonzero(hit)[0])
            y = int(ys[ok][idx])
            return x, y, int(z[idx])
    return None


def mordell_search(a: int, b: int, c: int) -> MordellResult:
    """Exhaustive search for a primitive zero of aX^2 + bY^2 - cZ^2 (a, b, c > 0).

    The form is first reduced to squarefree pairwise-coprime coefficients;
    there a zero exists iff one exists with |X| <= sqrt(bc), |Y| <= sqrt(ca),
    |Z| <= sqrt(ab), so an empty box proves insolubility over Q.
    """
    if min(a, b, c) <= 0:
        raise ValueError("mordell_search needs positive a, b, c")
    k, mult = _legendre_reduce([a, b, -c])
    A, B, C = k[0], k[1], -k[2]
    box = (math.isqrt(B * C), math.isqrt(C * A), math.isqrt(A * B))
    hit = _box_search(A, B, C, *box)
    witness = None
    if hit is not None:
        witness = _primitive([m * h for m, h in zip(mult, hit)])
        assert a * witness[0] ** 2 + b * witness[1] ** 2 == c * witness[2] ** 2
    return MordellResult((a, b, c), witness, (A, B, C), box)


@dataclass
class GlobalVerdict:
    form: DiagonalQuadraticForm
    soluble: bool
    witness: tuple[int, ...] | None
    obstruction: Place | None
    local: list[LocalVerdict]
    obstructions: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "form": self.form.to_json(),
            "soluble": self.soluble,
            "witness": list(self.witness) if self.witness else None,
            "obstruction": self.obstruction,
            "obstructions": list(self.obstructions),
            "local": [v.as_dict() for v in self.local],
        }


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _binary_decide(form: DiagonalQuadraticForm) -> GlobalVerdict:
    # two variables: no Chevalley, so every prime is a candidate obstruction
    a, b = form.coeffs
    if _is_square(-a * b):
        return GlobalVerdict(form, True, _primitive([math.isqrt(-a * b), -a]), None, [])
    verdicts = [local_solubility(form, REAL)]
    if not verdicts[0].soluble:
        return GlobalVerdict(form, False, None, REAL, verdicts, [REAL])
    p = 2
    while True:
        v = local_solubility(form, p)
        verdicts.append(v)
        if not v.soluble:
            return GlobalVerdict(form, False, None, p, verdicts, [p])
        p += 1
        while not is_prime(p):
            p += 1


def _ternary_witness(coeffs: tuple[int, ...]) -> tuple[int, ...] | None:
    k = list(coeffs)
    if sum(1 for x in k if x > 0) == 1:
        k = [-x for x in k]
    neg = next(i for i, x in enumerate(k) if x < 0)
    order = [i for i in range(3) if i != neg] + [neg]
    res = mordell_search(k[order[0]], k[order[1]], -k[order[2]])
    if res.witness is None:
        return None
    out = [0, 0, 0]
    for slot, i in enumerate(order):
        out[i] = res.witness[slot]
    return _primitive(out)


def hasse_minkowski_decide(form) -> GlobalVerdict:
    """Global solubility from finitely many local checks (rank >= 3).

    Every relevant place is checked.  When several obstruct, the headline
    obstruction is REAL, else the smallest odd prime, else 2.
    """
    form = _as_form(form)
    if form.rank == 2:
        return _binary_decide(form)
    places: list[Place] = [REAL] + form.normalized()[0].bad_primes()
    verdicts = [local_solubility(form, v) for v in places]
    failing = [v.place for v in verdicts if not v.soluble]
    if failing:
        headline = sorted(failing, key=lambda v: (v != REAL, v == 2, 0 if v == REAL else v))[0]
        return GlobalVerdict(form, False, None, headline, verdicts, failing)
    witness = None
    if form.rank == 3:
        witness = _ternary_witness(form.coeffs)
        if witness is None:
            raise AssertionError(f"local-global failure for {form.coeffs}: box search came back empty")
    return GlobalVerdict(form, True, witness, None, verdicts)


# -- infinitesimal automorphisms ---------------------------------------------

@dataclass
class InfAutResult:
    coeffs: tuple[int, ...]
    degree: int
    dimension: int
    basis: list[list[list[Fraction]]]

    def as_dict(self) -> dict:
        return {
            "coeffs": list(self.coeffs),
            "degree": self.degree,
            "dimension": self.dimension,
            "basis": [[[str(x) for x in row] for row in m] for m in self.basis],
        }


def infinitesimal_automorphisms(coeffs: Sequence[int], degree: int) -> InfAutResult:
    """Lie algebra of the projective stabilizer of sum c_i X_i^d.

    Solves sum_ij A_ij X_j dF/dX_i = lambda F by matching monomial
    coefficients.  The identity (Euler's relation) always solves it, so the
    projective dimension is the nullity minus one; the returned basis spans
    the trace-zero solutions, a complement to the identity.
    """
    coeffs = tuple(int(c) for c in coeffs)
    if any(c == 0 for c in coeffs):
        raise SingularForm("diagonal form with a zero coefficient is singular")
    if degree < 2:
        raise ValueError("degree must be at least 2")
    n = len(coeffs)
    nvar = n * n + 1  # A_ij row-major, then lambda
    rows: dict[tuple[int, ...], list] = {}

    def row(mono):
        return rows.setdefault(mono, [QQ(0)] * nvar)

    for i in range(n):
        for j in range(n):
            e = [0] * n
            e[i] += degree - 1
            e[j] += 1
            row(tuple(e))[i * n + j] += QQ(degree * coeffs[i])
    for i in range(n):
        e = [0] * n
        e[i] = degree
        row(tuple(e))[n * n] -= QQ(coeffs[i])
    system = [rows[m] for m in sorted(rows)]
    full = DomainMatrix(system, (len(system), nvar), QQ)
    nullity = nvar - full.rank()
    trace = [QQ(0)] * nvar
    for i in range(n):
        trace[i * n + i] = QQ(1)
    traceless = DomainMatrix(system + [trace], (len(system) + 1, nvar), QQ)
    null = traceless.nullspace()
    vecs = null.to_Matrix().tolist() if null.shape[0] else []
    assert len(vecs) == nullity - 1
    basis = [
        [[Fraction(int(v[i * n + j].p), int(v[i * n + j].q)) for j in range(n)] for i in range(n)]
        for v in vecs
    ]
    return InfAutResult(coeffs, degree, nullity - 1, basis)
