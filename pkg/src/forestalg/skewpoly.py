"""Sparse skew-commutative polynomials on odd degree-1 generators.

Generators are indexed by sorted label tuples (triples or quadruples) and are
odd: they anticommute and square to zero, so monomials are strictly increasing
tuples of generator ids and products carry the sign of the sorting
permutation.  Ideal slices realize a homogeneous ideal degree by degree as a
row space over the chosen coefficient ring.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .linalg import BitEchelon, FieldEchelon, HermiteEchelon, smith_divisors
from .rings import GF2, QQ, ZZ, CoefficientRing, RingMismatchError


def perm_sign(seq) -> int:
    """Sign of the permutation sorting seq (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                sign = -sign
    return sign


class GeneratorUniverse:
    """All arity-subsets of a label set, as odd generators.

    ``symmetric`` controls index normalization: antisymmetric generators pick
    up the sorting permutation's sign, symmetric ones do not.  Either way the
    generators are odd algebra elements.
    """

    def __init__(self, labels, arity: int, symmetric: bool = False):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        self.labels = tuple(sorted(labels))
        self.arity = arity
        self.symmetric = symmetric
        self.tuples: list[tuple] = list(combinations(self.labels, arity))
        self.index: dict[tuple, int] = {t: i for i, t in enumerate(self.tuples)}

    def __len__(self) -> int:
        return len(self.tuples)

    def gen_id(self, indices) -> tuple[int, int] | None:
        """(generator id, sign) for possibly unsorted indices; None if repeated."""
        tup = tuple(indices)
        if len(set(tup)) != len(tup):
            return None
        s = tuple(sorted(tup))
        gid = self.index.get(s)
        if gid is None:
            raise KeyError(f"indices {tup} outside universe labels {self.labels}")
        sign = 1 if self.symmetric else perm_sign(tup)
        return gid, sign

    def label_tuple(self, gid: int) -> tuple:
        return self.tuples[gid]

    def monomials(self, degree: int):
        """All strictly increasing gid tuples of the given length."""
        return combinations(range(len(self.tuples)), degree)

    def support(self, monomial: tuple[int, ...]) -> frozenset:
        out = set()
        for gid in monomial:
            out.update(self.tuples[gid])
        return frozenset(out)


def mul_monomials(a: tuple[int, ...], b: tuple[int, ...]):
    """Merge sorted gid tuples; (monomial, sign) or None on a repeated gid."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    out = []
    i = j = 0
    inversions = 0
    la = len(a)
    while i < la and j < len(b):
        x, y = a[i], b[j]
        if x == y:
            return None
        if x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            inversions += la - i
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), (-1) ** (inversions & 1)


class SkewPoly:
    """Sparse element: {monomial gid-tuple: coefficient} over a ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoefficientRing, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for m, c in terms.items():
                c = ring.normalize(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def zero(cls, ring) -> "SkewPoly":
        return cls(ring)

    @classmethod
    def one(cls, ring) -> "SkewPoly":
        return cls(ring, {(): 1})

    @classmethod
    def generator(cls, ring, gid: int, coeff=1) -> "SkewPoly":
        return cls(ring, {(gid,): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SkewPoly) and self.ring is other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring.tag, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        items = sorted(self.terms.items())[:6]
        body = " + ".join(f"{c}*m{list(m)}" for m, c in items)
        return f"SkewPoly({self.ring.tag}; {body or '0'}{' ...' if len(self.terms) > 6 else ''})"

    def _check(self, other: "SkewPoly") -> None:
        if self.ring is not other.ring:
            raise RingMismatchError(f"{self.ring.tag} vs {other.ring.tag}")

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        out = dict(self.terms)
        ring = self.ring
        for m, c in other.terms.items():
            v = ring.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        res = SkewPoly(ring)
        res.terms = out
        return res

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + other.scale(-1)

    def __neg__(self) -> "SkewPoly":
        return self.scale(-1)

    def scale(self, c) -> "SkewPoly":
        ring = self.ring
        c = ring.normalize(c)
        out = {}
        if c:
            for m, v in self.terms.items():
                nv = ring.mul(v, c)
                if nv:
                    out[m] = nv
        res = SkewPoly(ring)
        res.terms = out
        return res

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        ring = self.ring
        out: dict[tuple, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                prod = mul_monomials(ma, mb)
                if prod is None:
                    continue
                m, sign = prod
                v = ring.add(out.get(m, 0), ring.mul(ca, sign * cb))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        res = SkewPoly(ring)
        res.terms = out
        return res

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous element (0 for the zero element)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else 0

    def homogeneous_part(self, d: int) -> "SkewPoly":
        return SkewPoly(self.ring, {m: c for m, c in self.terms.items() if len(m) == d})

    def convert(self, ring: CoefficientRing) -> "SkewPoly":
        return SkewPoly(ring, dict(self.terms))

    def to_json_terms(self, universe: GeneratorUniverse) -> list:
        out = []
        for m in sorted(self.terms):
            c = self.terms[m]
            num, den = (c.numerator, c.denominator) if isinstance(c, Fraction) else (int(c), 1)
            out.append({"monomial": [list(universe.label_tuple(g)) for g in m],
                        "numerator": num, "denominator": den})
        return out


def poly_from_json_terms(ring, universe: GeneratorUniverse, data) -> SkewPoly:
    acc = SkewPoly.zero(ring)
    for item in data:
        coeff = Fraction(item.get("numerator", 1), item.get("denominator", 1))
        if ring is not QQ:
            if coeff.denominator != 1:
                raise ValueError("non-integral coefficient for integral ring")
            coeff = coeff.numerator
        mono = SkewPoly.one(ring).scale(coeff)
        for idx in item["monomial"]:
            got = universe.gen_id(tuple(idx))
            if got is None:
                mono = SkewPoly.zero(ring)
                break
            gid, sign = got
            mono = mono * SkewPoly.generator(ring, gid, sign)
        acc = acc + mono
    return acc


def partial_derivation(p: SkewPoly, gid: int) -> SkewPoly:
    """Signed superderivation d/d(gid): remove the generator with the sign
    (-1)^(its position); satisfies d(ab) = d(a) b + (-1)^deg(a) a d(b)."""
    out = {}
    ring = p.ring
    for m, c in p.terms.items():
        try:
            pos = m.index(gid)
        except ValueError:
            continue
        nm = m[:pos] + m[pos + 1:]
        v = ring.add(out.get(nm, 0), ring.mul(c, (-1) ** (pos & 1)))
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    res = SkewPoly(ring)
    res.terms = out
    return res


# ---------------------------------------------------------------------------
# degreewise ideal slices


class IdealSlice:
    """Echelonized degree-d component of the ideal spanned by homogeneous
    relations: span{m * r} over monomial multipliers m of complementary
    degree.  Over Q/F_2 the echelon is a field echelon; over Z a Hermite form
    (with elementary divisors available for the torsion certificate)."""

    def __init__(self, ring: CoefficientRing, degree: int,
                 columns: list[tuple], echelon, raw_rows=None):
        self.ring = ring
        self.degree = degree
        self.columns = columns
        self.col_of = {m: i for i, m in enumerate(columns)}
        self.echelon = echelon
        self._raw_rows = raw_rows

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def quotient_dimension(self) -> int:
        return len(self.columns) - self.rank

    def elementary_divisors(self) -> list[int]:
        if self.ring is not ZZ:
            raise ValueError("divisors only meaningful over Z")
        _, divisors = smith_divisors(self._raw_rows)
        return divisors

    def _poly_to_row(self, p: SkewPoly):
        if self.ring is GF2:
            row = 0
            for m, c in p.terms.items():
                if c & 1:
                    row |= 1 << self.col_of[m]
            return row
        return {self.col_of[m]: c for m, c in p.terms.items()}

    def _row_to_poly(self, row) -> SkewPoly:
        if self.ring is GF2:
            terms = {}
            i = 0
            while row:
                if row & 1:
                    terms[self.columns[i]] = 1
                row >>= 1
                i += 1
            return SkewPoly(GF2, terms)
        return SkewPoly(self.ring, {self.columns[c]: v for c, v in row.items()})

    def reduce(self, p: SkewPoly) -> SkewPoly:
        """Normal form of p modulo the slice (leading-monomial elimination)."""
        if not p:
            return p
        if p.degree() != self.degree:
            raise ValueError(f"degree {p.degree()} element in degree {self.degree} slice")
        row = self._poly_to_row(p)
        if self.ring is GF2:
            return self._row_to_poly(self.echelon.residue(row))
        return self._row_to_poly(self.echelon.reduce(row))

    def contains(self, p: SkewPoly) -> bool:
        return not self.reduce(p).terms


def ideal_slice(relations: list[SkewPoly], degree: int,
                universe: GeneratorUniverse, ring: CoefficientRing,
                column_filter=None) -> IdealSlice:
    """Build and echelonize the degree-d slice of the two-sided ideal.

    ``column_filter`` restricts to a partition block: columns keep only the
    monomials passing the filter, and every generated row must lie entirely
    inside or outside the block (relations here are partition-homogeneous).
    """
    for r in relations:
        if not r.is_homogeneous():
            raise ValueError("inhomogeneous relation")
        if r and r.ring is not ring:
            raise RingMismatchError("relation ring mismatch")

    columns = [m for m in universe.monomials(degree)
               if column_filter is None or column_filter(m)]
    colset = set(columns)
    sl_echelon = {QQ: lambda: FieldEchelon(None), GF2: BitEchelon,
                  ZZ: HermiteEchelon}.get(ring)
    if sl_echelon is None:
        raise ValueError(f"no slice echelon over {ring.tag}")
    echelon = sl_echelon()
    slice_obj = IdealSlice(ring, degree, columns, echelon,
                           raw_rows=[] if ring is ZZ else None)

    for r in relations:
        if not r:
            continue
        d_r = r.degree()
        if d_r > degree:
            continue
        for mult in universe.monomials(degree - d_r):
            row_terms = {}
            for m, c in r.terms.items():
                prod = mul_monomials(mult, m)
                if prod is None:
                    continue
                mono, sign = prod
                v = ring.add(row_terms.get(mono, 0), ring.mul(c, sign))
                if v:
                    row_terms[mono] = v
                else:
                    row_terms.pop(mono, None)
            if not row_terms:
                continue
            if column_filter is not None:
                inside = [m in colset for m in row_terms]
                if not any(inside):
                    continue
                if not all(inside):
                    raise AssertionError("row straddles the column filter")
            poly = SkewPoly(ring)
            poly.terms = row_terms
            row = slice_obj._poly_to_row(poly)
            if ring is ZZ:
                slice_obj._raw_rows.append(dict(row))
            echelon.add(row)
    return slice_obj


def quotient_dimension(relations, degree, universe, ring=QQ,
                       column_filter=None, with_divisors=False):
    """Dimension of (degree-d monomial span)/(ideal slice); optionally also
    the elementary divisors of the slice over Z (torsion certificate)."""
    ring_for_rank = ZZ if with_divisors else ring
    sl = ideal_slice([r.convert(ring_for_rank) for r in relations],
                     degree, universe, ring_for_rank, column_filter)
    dim = sl.quotient_dimension()
    if with_divisors:
        return dim, sl.elementary_divisors()
    return dim
