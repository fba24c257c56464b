"""Exact arithmetic for a real quadratic field K = Q(sqrt(d)) with class number one.

Elements of the ring of integers are stored as (x + y*sqrt(D))/2 with
integer x, y and x = y*D (mod 2), where D is the field discriminant.
The class-number-one hypothesis is a precondition asserted by the caller;
it is not verified here.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction


class FieldError(ValueError):
    pass


class ParityViolation(FieldError):
    """Euler characteristic of the configured surface is not an even positive integer."""


class UnitSearchError(FieldError):
    pass


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class AlgebraicInteger:
    """(x + y*sqrt(D))/2 with x = y*D (mod 2)."""

    x: int
    y: int
    D: int

    def __post_init__(self):
        if (self.x - self.y * self.D) % 2 != 0:
            raise FieldError(
                f"({self.x}+{self.y}*sqrt({self.D}))/2 is not an algebraic integer"
            )

    @staticmethod
    def from_int(n: int, D: int) -> "AlgebraicInteger":
        return AlgebraicInteger(2 * n, 0, D)

    def conjugate(self) -> "AlgebraicInteger":
        return AlgebraicInteger(self.x, -self.y, self.D)

    def __add__(self, other: "AlgebraicInteger") -> "AlgebraicInteger":
        return AlgebraicInteger(self.x + other.x, self.y + other.y, self.D)

    def __sub__(self, other: "AlgebraicInteger") -> "AlgebraicInteger":
        return AlgebraicInteger(self.x - other.x, self.y - other.y, self.D)

    def __neg__(self) -> "AlgebraicInteger":
        return AlgebraicInteger(-self.x, -self.y, self.D)

    def __mul__(self, other: "AlgebraicInteger") -> "AlgebraicInteger":
        x = (self.x * other.x + self.y * other.y * self.D) // 2
        y = (self.x * other.y + self.y * other.x) // 2
        return AlgebraicInteger(x, y, self.D)

    def norm(self) -> int:
        n4 = self.x * self.x - self.y * self.y * self.D
        assert n4 % 4 == 0
        return n4 // 4

    def trace(self) -> int:
        return self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def value(self) -> float:
        return (self.x + self.y * math.sqrt(self.D)) / 2.0

    def sign(self) -> int:
        """Exact sign of the real value, using integer arithmetic only."""
        x, y = self.x, self.y
        if y == 0:
            return (x > 0) - (x < 0)
        if x == 0:
            return (y > 0) - (y < 0)
        if x > 0 and y > 0:
            return 1
        if x < 0 and y < 0:
            return -1
        # opposite signs: compare x^2 with y^2 D
        if x * x > y * y * self.D:
            return (x > 0) - (x < 0)
        if x * x < y * y * self.D:
            return (y > 0) - (y < 0)
        return 0

    def __str__(self):
        return f"({self.x}+{self.y}*sqrt({self.D}))/2"


def galois_conjugate(a: AlgebraicInteger) -> AlgebraicInteger:
    """The nontrivial Galois automorphism: sqrt(D) -> -sqrt(D)."""
    return a.conjugate()


@dataclass(frozen=True)
class QuadraticField:
    d: int
    D: int
    eps: AlgebraicInteger
    log_eps: float
    zeta_m1: Fraction

    def integer(self, x: int, y: int) -> AlgebraicInteger:
        return AlgebraicInteger(x, y, self.D)


@dataclass(frozen=True)
class EllipticLocus:
    """Elliptic fixed-point data: entries (nu, t, count)."""

    points: tuple = field(default_factory=tuple)

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        for nu, t, count in pts:
            if nu < 2:
                raise FieldError(f"elliptic order nu={nu} must be >= 2")
            if not (1 <= t < nu):
                raise FieldError(f"rotation type t={t} out of range for nu={nu}")
            if math.gcd(t, nu) != 1:
                raise FieldError(f"gcd(t, nu) != 1 for (nu, t)=({nu}, {t})")
            if count < 1:
                raise FieldError(f"count={count} must be positive")
        object.__setattr__(self, "points", pts)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def valid_discriminant(D: int) -> bool:
    """True iff D is a fundamental discriminant of a real quadratic field."""
    if D <= 1:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        d = D // 4
        return d % 4 in (2, 3) and is_squarefree(d)
    return False


def zeta_K_minus1(D: int) -> Fraction:
    """zeta_K(-1) by the divisor-sum formula (1/60) * sum sigma_1((D-b^2)/4)."""
    if not valid_discriminant(D):
        raise FieldError(f"D={D} is not a fundamental discriminant")
    total = 0
    b = D % 2
    while b * b < D:
        n = (D - b * b) // 4
        s1 = sum(k for k in range(1, n + 1) if n % k == 0)
        total += s1 if b == 0 else 2 * s1
        b += 2
    return Fraction(total, 60)


def pell_fundamental_unit(D: int, max_y: int = 10**7) -> AlgebraicInteger:
    """Smallest unit > 1 of O_K by exhaustive search ordered by y.

    Units > 1 are powers of the fundamental unit, and the y-coordinate is
    strictly increasing along powers, so the first hit is fundamental.
    """
    for y in range(1, max_y + 1):
        yyD = y * y * D
        best = None
        for delta in (-4, 4):
            n = yyD + delta
            if n > 0 and _is_square(n):
                x = math.isqrt(n)
                if (x - y * D) % 2 == 0 and (best is None or x < best):
                    best = x
        if best is not None:
            return AlgebraicInteger(best, y, D)
    raise UnitSearchError(f"no unit found with y <= {max_y} for D={D}")


def cf_fundamental_unit(d: int, max_steps: int = 100000) -> AlgebraicInteger:
    """Fundamental unit from the continued fraction of the module generator.

    Expands omega = (1+sqrt(d))/2 for d = 1 (mod 4), omega = sqrt(d) otherwise,
    and returns the first convergent whose associated element has norm +-1.
    Used as an independent cross-check of pell_fundamental_unit.
    """
    if not is_squarefree(d) or d < 2:
        raise FieldError(f"d={d} must be squarefree and >= 2")
    if d % 4 == 1:
        P, Q = 1, 2
        D = d
    else:
        P, Q = 0, 1
        D = 4 * d
    sq = math.isqrt(d)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for _ in range(max_steps):
        a = (P + sq) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        # element p - q*omega', expressed over sqrt(D)
        if d % 4 == 1:
            cand = AlgebraicInteger(2 * p - q, q, D)
        else:
            cand = AlgebraicInteger(2 * p, q, D)
        if abs(cand.norm()) == 1 and cand.value() > 1:
            return cand
        P = a * Q - P
        Q = (d - P * P) // Q
    raise UnitSearchError(f"continued fraction of d={d} gave no unit in {max_steps} steps")


def make_field(d: int, max_y: int = 10**7) -> QuadraticField:
    if d < 2 or not is_squarefree(d):
        raise FieldError(f"d={d} must be a squarefree integer >= 2")
    D = d if d % 4 == 1 else 4 * d
    eps = pell_fundamental_unit(D, max_y=max_y)
    return QuadraticField(
        d=d,
        D=D,
        eps=eps,
        log_eps=math.log(eps.value()),
        zeta_m1=zeta_K_minus1(D),
    )


def euler_characteristic(fld: QuadraticField, locus: EllipticLocus) -> Fraction:
    e = 2 * fld.zeta_m1
    for nu, _t, count in locus:
        e += count * Fraction(nu - 1, nu)
    return e


def validate_surface(fld: QuadraticField, locus: EllipticLocus) -> Fraction:
    """Euler characteristic of the configured surface; must be a positive even integer."""
    e = euler_characteristic(fld, locus)
    if e.denominator != 1 or e <= 0 or e.numerator % 2 != 0:
        raise ParityViolation(
            f"Euler characteristic {e} is not a positive even integer; "
            f"the elliptic configuration is inconsistent with D={fld.D}"
        )
    return e


_KV_RE = re.compile(r"^(\w+)\s*=\s*(.+)$")
_ELL_RE = re.compile(
    r"^\{\s*nu\s*=\s*(-?\d+)\s*,\s*t\s*=\s*(-?\d+)\s*,\s*count\s*=\s*(-?\d+)\s*\}$"
)


def parse_surface_config(text: str):
    """Parse a surface configuration: `d = <int>` plus repeated
    `elliptic = { nu = <int>, t = <int>, count = <int> }` blocks.

    Blank lines and `#` comments are allowed; unknown keys are errors.
    Returns (d, EllipticLocus).
    """
    d = None
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _KV_RE.match(line)
        if not m:
            raise FieldError(f"line {lineno}: cannot parse {raw!r}")
        key, val = m.group(1), m.group(2).strip()
        if key == "d":
            if d is not None:
                raise FieldError(f"line {lineno}: duplicate key 'd'")
            try:
                d = int(val)
            except ValueError:
                raise FieldError(f"line {lineno}: d must be an integer, got {val!r}")
        elif key == "elliptic":
            em = _ELL_RE.match(val)
            if not em:
                raise FieldError(f"line {lineno}: malformed elliptic block {val!r}")
            points.append((int(em.group(1)), int(em.group(2)), int(em.group(3))))
        else:
            raise FieldError(f"line {lineno}: unknown key {key!r}")
    if d is None:
        raise FieldError("missing key 'd'")
    return d, EllipticLocus(tuple(points))


def load_surface_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_surface_config(fh.read())
