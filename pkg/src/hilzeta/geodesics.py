"""Brute-force search for hyperbolic-elliptic elements of the Hilbert modular
group at bounded height, classification of group elements by their trace pair,
class invariants (N, omega), power expansion and CSV I/O for geodesic data.

Conjugacy classes are identified by the invariant pair (N, omega) only, so
reported multiplicities are lower bounds.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .field import AlgebraicInteger, FieldError, QuadraticField

DEDUP_TOL = 1e-9
POWER_TOL = 1e-6


class GeodesicError(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    """Unimodular matrix over O_K, taken modulo +-1."""

    a: AlgebraicInteger
    b: AlgebraicInteger
    c: AlgebraicInteger
    d: AlgebraicInteger

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if det.x != 2 or det.y != 0:
            raise GeodesicError(f"determinant {det} != 1")

    def trace(self) -> AlgebraicInteger:
        return self.a + self.d

    @property
    def D(self) -> int:
        return self.a.D


@dataclass(frozen=True)
class ElementClass:
    tag: str  # Identity | Hyperbolic | Elliptic | HyperbolicElliptic | EllipticHyperbolic | Parabolic
    hyperbolic_subtype: Optional[str] = None  # Type1 | Type2


@dataclass(frozen=True)
class GeodesicClass:
    norm: float
    omega: float
    mult: int = 1
    primitive: bool = True
    primitive_norm: float = 0.0

    def __post_init__(self):
        if not self.norm > 1.0:
            raise GeodesicError(f"norm={self.norm} must be > 1")
        if not (0.0 < self.omega < math.pi):
            raise GeodesicError(f"omega={self.omega} must lie in (0, pi)")
        if self.mult < 1:
            raise GeodesicError(f"mult={self.mult} must be positive")
        if self.primitive and self.primitive_norm == 0.0:
            object.__setattr__(self, "primitive_norm", self.norm)


def _abs_cmp2(x: int, y: int, D: int) -> int:
    """Compare |(x + y sqrt(D))/2| with 2: returns -1, 0 or +1."""
    minus = AlgebraicInteger(x - 4, y, D).sign()
    plus = AlgebraicInteger(x + 4, y, D).sign()
    if minus == 0 or plus == 0:
        return 0
    if minus > 0 or plus < 0:
        return 1
    return -1


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    return rn * rn == n and rd * rd == d


def _fraction_sqrt(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


def _is_square_in_field(u: AlgebraicInteger) -> bool:
    """Whether u is a square in K = Q(sqrt(D))."""
    D = u.D
    P = Fraction(u.x, 2)
    Q = Fraction(u.y, 2)
    nrm = P * P - Q * Q * D
    if not _is_rational_square(nrm):
        return False
    w = _fraction_sqrt(nrm)
    for ww in (w, -w):
        if _is_rational_square((P + ww) / 2) and _is_rational_square((P - ww) / (2 * D)):
            return True
    return False


def classify(g: GroupElement) -> ElementClass:
    """Classification by the trace pair, exact in integer arithmetic."""
    t = g.trace()
    D = g.D
    c1 = _abs_cmp2(t.x, t.y, D)
    c2 = _abs_cmp2(t.x, -t.y, D)
    if c1 == 0 and c2 == 0:
        if g.b.is_zero() and g.c.is_zero():
            return ElementClass("Identity")
        return ElementClass("Parabolic")
    if c1 > 0 and c2 > 0:
        disc = t * t - AlgebraicInteger.from_int(4, D)
        subtype = "Type2" if _is_square_in_field(disc) else "Type1"
        return ElementClass("Hyperbolic", subtype)
    if c1 < 0 and c2 < 0:
        return ElementClass("Elliptic")
    if c1 > 0 and c2 < 0:
        return ElementClass("HyperbolicElliptic")
    if c1 < 0 and c2 > 0:
        return ElementClass("EllipticHyperbolic")
    raise GeodesicError(f"forbidden trace pattern for trace {t}")


def _invariants_from_trace(tv: float, tv_conj: float) -> Tuple[float, float]:
    # representative with positive hyperbolic trace (element mod +-1)
    if tv < 0:
        tv, tv_conj = -tv, -tv_conj
    half = (tv + math.sqrt(tv * tv - 4.0)) / 2.0
    norm = half * half
    omega = math.acos(tv_conj / 2.0)
    return norm, omega


def he_invariants(g: GroupElement) -> Tuple[float, float]:
    """(N(gamma), omega) for a hyperbolic-elliptic element."""
    if classify(g).tag != "HyperbolicElliptic":
        raise GeodesicError("he_invariants requires a hyperbolic-elliptic element")
    t = g.trace()
    return _invariants_from_trace(t.value(), t.conjugate().value())


def fold_angle(x: float) -> float:
    """Fold an angle into (0, pi)."""
    r = math.fmod(x, math.pi)
    if r <= 0.0:
        r += math.pi
    return r


def _box_entries(D: int, height: int):
    out = []
    for x in range(-height, height + 1):
        for y in range(-height, height + 1):
            if (x - y * D) % 2 == 0:
                out.append((x, y))
    return out


def iter_box_elements(fld: QuadraticField, height: int):
    """All unimodular matrices whose entry coordinates are bounded by height.

    Yields raw coordinate tuples ((ax,ay),(bx,by),(cx,cy),(dx,dy)); each
    element of the quotient by +-1 appears for both sign choices.
    """
    if height < 1:
        raise GeodesicError(f"height={height} must be >= 1")
    D = fld.D
    entries = _box_entries(D, height)
    for ax, ay in entries:
        na4 = ax * ax - ay * ay * D
        for bx, by in entries:
            for cx, cy in entries:
                bcx = (bx * cx + by * cy * D) // 2
                bcy = (bx * cy + by * cx) // 2
                if na4 == 0:
                    # a = 0: det = -bc must be 1
                    if bcx == -2 and bcy == 0:
                        for dx, dy in entries:
                            yield (ax, ay), (bx, by), (cx, cy), (dx, dy)
                    continue
                # d = (1 + bc) * conj(a) / N(a)
                nx, ny = bcx + 2, bcy
                numx = (nx * ax - ny * ay * D) // 2
                numy = (ny * ax - nx * ay) // 2
                na = na4 // 4
                if numx % na or numy % na:
                    continue
                dx, dy = numx // na, numy // na
                if (dx - dy * D) % 2 == 0 and abs(dx) <= height and abs(dy) <= height:
                    yield (ax, ay), (bx, by), (cx, cy), (dx, dy)


def element_from_coords(fld: QuadraticField, coords) -> GroupElement:
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = coords
    D = fld.D
    return GroupElement(
        AlgebraicInteger(ax, ay, D),
        AlgebraicInteger(bx, by, D),
        AlgebraicInteger(cx, cy, D),
        AlgebraicInteger(dx, dy, D),
    )


def enumerate_he(fld: QuadraticField, height: int) -> List[GeodesicClass]:
    """All hyperbolic-elliptic classes found in the height box, deduplicated by
    (N, omega) and sorted by (norm, omega).  Primitivity is detected by power
    divisibility within the found set; multiplicities are lower bounds."""
    D = fld.D
    sqD = math.sqrt(D)
    found = []
    for (ax, ay), _b, _c, (dx, dy) in iter_box_elements(fld, height):
        tx, ty = ax + dx, ay + dy
        if _abs_cmp2(tx, ty, D) <= 0 or _abs_cmp2(tx, -ty, D) >= 0:
            continue
        tv = (tx + ty * sqD) / 2.0
        tc = (tx - ty * sqD) / 2.0
        found.append(_invariants_from_trace(tv, tc))
    found.sort()
    classes: List[Tuple[float, float]] = []
    for norm, omega in found:
        dup = False
        for n0, w0 in classes:
            if abs(norm - n0) <= DEDUP_TOL * max(1.0, n0) and abs(omega - w0) <= DEDUP_TOL:
                dup = True
                break
        if not dup:
            classes.append((norm, omega))
    out: List[GeodesicClass] = []
    for norm, omega in classes:
        primitive = True
        prim_norm = norm
        for cand in out:
            if not cand.primitive:
                continue
            k = round(math.log(norm) / math.log(cand.norm))
            if k < 2:
                continue
            if (
                abs(norm - cand.norm**k) <= POWER_TOL * norm
                and abs(fold_angle(k * cand.omega) - omega) <= POWER_TOL
            ):
                primitive = False
                prim_norm = cand.norm
                break
        out.append(
            GeodesicClass(
                norm=norm, omega=omega, mult=1, primitive=primitive, primitive_norm=prim_norm
            )
        )
    out.sort(key=lambda c: (c.norm, c.omega))
    return out


def expand_powers(primitives: List[GeodesicClass], norm_cutoff: float) -> List[GeodesicClass]:
    """Close a primitive list under powers up to the norm cutoff."""
    if norm_cutoff <= 1.0:
        raise GeodesicError(f"norm_cutoff={norm_cutoff} must be > 1")
    out: List[GeodesicClass] = []
    for p in primitives:
        k = 1
        while p.norm**k <= norm_cutoff:
            out.append(
                GeodesicClass(
                    norm=p.norm**k,
                    omega=fold_angle(k * p.omega),
                    mult=p.mult,
                    primitive=(k == 1),
                    primitive_norm=p.norm,
                )
            )
            k += 1
    out.sort(key=lambda c: (c.norm, c.omega))
    return out


CSV_HEADER = ["norm", "omega", "mult", "primitive", "primitive_norm"]


def save_geodesics(path, classes: List[GeodesicClass]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for g in classes:
            writer.writerow(
                [
                    f"{g.norm:.17g}",
                    f"{g.omega:.17g}",
                    g.mult,
                    1 if g.primitive else 0,
                    f"{g.primitive_norm:.17g}",
                ]
            )


def load_geodesics(path) -> List[GeodesicClass]:
    out = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise GeodesicError(f"bad header {header!r}, expected {CSV_HEADER}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                norm = float(row[0])
                omega = float(row[1])
                mult = int(row[2])
                primitive = bool(int(row[3]))
                primitive_norm = float(row[4])
                out.append(
                    GeodesicClass(
                        norm=norm,
                        omega=omega,
                        mult=mult,
                        primitive=primitive,
                        primitive_norm=primitive_norm,
                    )
                )
            except (IndexError, ValueError, GeodesicError) as exc:
                raise GeodesicError(f"{path}: line {lineno}: {exc}") from exc
    return out
