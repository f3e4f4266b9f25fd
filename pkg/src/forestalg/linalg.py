"""Exact sparse linear algebra over Q, F_p, F_2 and Z.

Rows are sparse dicts {column_index: value} with integer column indices;
callers intern their column labels.  The routines here are the workhorses
behind every ideal-slice echelon, homology rank and torsion certificate, so
they favor predictable pivoting (deterministic output) and unit-pivot
elimination (the boundary matrices here are overwhelmingly {0, +-1}).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# field echelon (Q or F_p)


class FieldEchelon:
    """Incremental row echelon over Q (p=None) or F_p, leading column minimal.

    Pivot rows are normalized to leading coefficient 1.  ``reduce`` returns
    the unique normal form modulo the row space (single increasing-column
    pass; pivot tails only touch larger columns).
    """

    def __init__(self, p: int | None = None):
        self.p = p
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _normalize(self, row: dict) -> dict:
        if self.p is None:
            return {c: Fraction(v) for c, v in row.items() if v}
        p = self.p
        out = {}
        for c, v in row.items():
            v %= p
            if v:
                out[c] = v
        return out

    def reduce(self, row: dict) -> dict:
        row = self._normalize(row)
        p = self.p
        heap = sorted(row)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            v = row.get(c)
            if not v:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                continue
            for c2, w in piv.items():
                fresh = c2 not in row
                nv = row.get(c2, 0) - v * w
                if p is not None:
                    nv %= p
                if nv:
                    row[c2] = nv
                    if fresh and c2 not in seen:
                        heapq.heappush(heap, c2)
                else:
                    row.pop(c2, None)
        return row

    def add(self, row: dict) -> bool:
        """Reduce and insert; True iff the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        lv = row[lead]
        if self.p is None:
            inv = Fraction(1) / lv
            row = {c: v * inv for c, v in row.items()}
        else:
            inv = pow(lv, self.p - 2, self.p)
            row = {c: (v * inv) % self.p for c, v in row.items()}
        self.pivots[lead] = row
        return True

    def extend(self, rows) -> int:
        added = 0
        for r in rows:
            if self.add(dict(r)):
                added += 1
        return added

    def contains(self, row: dict) -> bool:
        return not self.reduce(dict(row))

    def same_span(self, other: "FieldEchelon") -> bool:
        if self.rank != other.rank:
            return False
        return (all(other.contains(r) for r in self.pivots.values())
                and all(self.contains(r) for r in other.pivots.values()))


def field_rank(rows, p: int | None = None) -> int:
    ech = FieldEchelon(p)
    ech.extend(rows)
    return ech.rank


# ---------------------------------------------------------------------------
# F_2 bitmask echelon


class BitEchelon:
    """Echelon over F_2 with rows packed as ints (bit i = column i)."""

    def __init__(self):
        self.pivots: dict[int, int] = {}  # leading bit position -> row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def residue(self, row: int) -> int:
        """Row reduced against all pivots (leading bits eliminated greedily)."""
        out = 0
        while row:
            lead = (row & -row).bit_length() - 1
            piv = self.pivots.get(lead)
            if piv is None:
                out |= 1 << lead
                row ^= 1 << lead
            else:
                row ^= piv
        return out

    def add(self, row: int) -> bool:
        while row:
            lead = (row & -row).bit_length() - 1
            piv = self.pivots.get(lead)
            if piv is None:
                self.pivots[lead] = row
                return True
            row ^= piv
        return False

    def extend(self, rows) -> int:
        return sum(1 for r in rows if self.add(r))

    def contains(self, row: int) -> bool:
        while row:
            lead = (row & -row).bit_length() - 1
            piv = self.pivots.get(lead)
            if piv is None:
                return False
            row ^= piv
        return True


def bit_rank(rows) -> int:
    ech = BitEchelon()
    ech.extend(rows)
    return ech.rank


# ---------------------------------------------------------------------------
# integer echelon / Hermite form


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _row_sub(a: dict, b: dict, q: int) -> dict:
    out = dict(a)
    for c, v in b.items():
        nv = out.get(c, 0) - q * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return out


def _row_comb(a: dict, x: int, b: dict, y: int) -> dict:
    out = {}
    for c, v in a.items():
        nv = x * v
        if nv:
            out[c] = nv
    for c, v in b.items():
        nv = out.get(c, 0) + y * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return out


class HermiteEchelon:
    """Sparse integer row echelon with gcd pivots (row-style Hermite form).

    Supports exact membership tests of integer vectors in the row lattice.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict) -> None:
        row = {c: int(v) for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                self.pivots[c] = row
                return
            a, b = piv[c], row[c]
            if b % a == 0:
                row = _row_sub(row, piv, b // a)
                continue
            g, x, y = _xgcd(a, b)
            new_piv = _row_comb(piv, x, row, y)
            new_row = _row_comb(piv, -(b // g), row, a // g)
            self.pivots[c] = new_piv
            row = new_row

    def extend(self, rows) -> None:
        for r in rows:
            self.add(dict(r))

    def reduce(self, row: dict) -> dict:
        """Normal form of an integer vector modulo the row lattice."""
        row = {c: int(v) for c, v in row.items() if v}
        heap = sorted(row)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            v = row.get(c)
            if not v:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                continue
            q = v // piv[c]
            if q:
                for c2, w in piv.items():
                    fresh = c2 not in row
                    nv = row.get(c2, 0) - q * w
                    if nv:
                        row[c2] = nv
                        if fresh and c2 not in seen:
                            heapq.heappush(heap, c2)
                    else:
                        row.pop(c2, None)
        return row

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


# ---------------------------------------------------------------------------
# Smith normal form (elementary divisors) and integer kernels


class _SparseMat:
    """Mutable sparse matrix with a column index, for elimination."""

    def __init__(self, rows):
        self.rows: dict[int, dict[int, int]] = {}
        self.col_rows: dict[int, set[int]] = {}
        for i, r in enumerate(rows):
            rr = {c: int(v) for c, v in r.items() if v}
            if rr:
                self.rows[i] = rr
                for c in rr:
                    self.col_rows.setdefault(c, set()).add(i)

    def delete_row(self, rid: int) -> None:
        for c in self.rows[rid]:
            s = self.col_rows.get(c)
            if s is not None:
                s.discard(rid)
                if not s:
                    del self.col_rows[c]
        del self.rows[rid]

    def row_sub(self, rid: int, src: dict, factor: int) -> None:
        """rows[rid] -= factor * src, maintaining the column index."""
        row = self.rows[rid]
        for c2, w in src.items():
            nv = row.get(c2, 0) - factor * w
            if nv:
                if c2 not in row:
                    self.col_rows.setdefault(c2, set()).add(rid)
                row[c2] = nv
            else:
                if c2 in row:
                    del row[c2]
                    s = self.col_rows.get(c2)
                    if s is not None:
                        s.discard(rid)
                        if not s:
                            del self.col_rows[c2]
        if not row:
            self.delete_row(rid)


def smith_divisors(rows) -> tuple[int, list[int]]:
    """(rank, elementary divisors) of the integer matrix given by sparse rows.

    Unit pivots go first (sparsest row holding a +-1, breaking ties toward the
    thinnest column); the rare unit-free remainder is handled by gcd reduction
    inside the column of the minimal entry.  Row and column operations are
    both unimodular, so the recorded diagonal determines the cokernel; it is
    normalized to the Smith divisibility chain at the end.
    """
    mat = _SparseMat(rows)
    diagonal: list[int] = []

    # size buckets over rows that contain a unit entry (the common case)
    unit_buckets: dict[int, dict[int, None]] = {}
    bucket_of: dict[int, int] = {}

    def has_unit(row: dict) -> bool:
        return any(v == 1 or v == -1 for v in row.values())

    def file_row(rid: int) -> None:
        old = bucket_of.pop(rid, None)
        if old is not None:
            b = unit_buckets.get(old)
            if b is not None:
                b.pop(rid, None)
                if not b:
                    del unit_buckets[old]
        row = mat.rows.get(rid)
        if row is not None and has_unit(row):
            size = len(row)
            unit_buckets.setdefault(size, {})[rid] = None
            bucket_of[rid] = size

    for rid in mat.rows:
        file_row(rid)

    while mat.rows:
        if unit_buckets:
            size = min(unit_buckets)
            rid = next(iter(unit_buckets[size]))
            row = mat.rows[rid]
            c = min((cc for cc, v in row.items() if v in (1, -1)),
                    key=lambda cc: (len(mat.col_rows[cc]), cc))
            piv = dict(row)
            pv = piv[c]
            touched = sorted(mat.col_rows.get(c, set()) - {rid})
            for other in touched:
                if other in mat.rows:
                    mat.row_sub(other, piv, mat.rows[other][c] // pv)
            mat.delete_row(rid)
            file_row(rid)
            for other in touched:
                file_row(other)
            diagonal.append(1)
            continue
        # no unit entry left: gcd-reduce the column holding the smallest entry
        rid, c = min(((r, cc) for r, row in mat.rows.items() for cc in row),
                     key=lambda rc: (abs(mat.rows[rc[0]][rc[1]]), rc))
        column = sorted(mat.col_rows[c])
        if len(column) == 1:
            diagonal.append(abs(mat.rows[rid][c]))
            mat.delete_row(rid)
            file_row(rid)
            continue
        piv = dict(mat.rows[rid])
        pv = piv[c]
        for other in column:
            if other == rid or other not in mat.rows:
                continue
            q = mat.rows[other][c] // pv
            mat.row_sub(other, piv, q)
            file_row(other)
        file_row(rid)

    rank = len(diagonal)
    divisors = sorted(d for d in diagonal if d)
    for i in range(len(divisors)):
        for j in range(i + 1, len(divisors)):
            a, b = divisors[i], divisors[j]
            if b % a:
                g = gcd(a, b)
                divisors[i], divisors[j] = g, a * b // g
        divisors.sort()
    return rank, divisors


def kernel_basis_fast(rows: list[dict]) -> list[dict]:
    """Basis of the integer kernel lattice of e_i -> rows[i], by unit-pivot
    elimination with sparsity-driven pivoting and transform tracking.

    All operations are unimodular row combinations on [M | I]; transforms of
    rows whose M-part hits zero form a lattice basis of the kernel.  Orders of
    magnitude faster than the leading-column version on the {0,+-1} boundary
    matrices this package produces.
    """
    mat = _SparseMat(rows)
    transforms: dict[int, dict[int, int]] = {}
    kernel: list[dict] = []
    for i in range(len(rows)):
        if i in mat.rows:
            transforms[i] = {i: 1}
        else:
            kernel.append({i: 1})  # empty image row

    def trans_sub(rid: int, src: dict, factor: int) -> None:
        t = transforms[rid]
        for c, v in src.items():
            nv = t.get(c, 0) - factor * v
            if nv:
                t[c] = nv
            else:
                t.pop(c, None)

    unit_buckets: dict[int, dict[int, None]] = {}
    bucket_of: dict[int, int] = {}

    def file_row(rid: int) -> None:
        old = bucket_of.pop(rid, None)
        if old is not None:
            b = unit_buckets.get(old)
            if b is not None:
                b.pop(rid, None)
                if not b:
                    del unit_buckets[old]
        row = mat.rows.get(rid)
        if row is not None and any(v in (1, -1) for v in row.values()):
            unit_buckets.setdefault(len(row), {})[rid] = None
            bucket_of[rid] = len(row)

    def check_emptied(rid: int) -> None:
        if rid not in mat.rows and rid in transforms:
            kernel.append(transforms.pop(rid))

    for rid in mat.rows:
        file_row(rid)

    while mat.rows:
        if unit_buckets:
            size = min(unit_buckets)
            rid = next(iter(unit_buckets[size]))
            row = mat.rows[rid]
            c = min((cc for cc, v in row.items() if v in (1, -1)),
                    key=lambda cc: (len(mat.col_rows[cc]), cc))
            piv = dict(row)
            pt = dict(transforms[rid])
            pv = piv[c]
            touched = sorted(mat.col_rows.get(c, set()) - {rid})
            for other in touched:
                if other in mat.rows:
                    factor = mat.rows[other][c] // pv
                    mat.row_sub(other, piv, factor)
                    trans_sub(other, pt, factor)
            mat.delete_row(rid)
            file_row(rid)
            transforms.pop(rid, None)  # pivot row: not a kernel element
            for other in touched:
                file_row(other)
                check_emptied(other)
            continue
        # gcd phase inside the column of the smallest remaining entry
        rid, c = min(((r, cc) for r, row in mat.rows.items() for cc in row),
                     key=lambda rc: (abs(mat.rows[rc[0]][rc[1]]), rc))
        column = sorted(mat.col_rows[c])
        if len(column) == 1:
            mat.delete_row(rid)
            file_row(rid)
            transforms.pop(rid, None)
            continue
        piv = dict(mat.rows[rid])
        pt = dict(transforms[rid])
        pv = piv[c]
        for other in column:
            if other == rid or other not in mat.rows:
                continue
            q = mat.rows[other][c] // pv
            if q:
                mat.row_sub(other, piv, q)
                trans_sub(other, pt, q)
                file_row(other)
                check_emptied(other)
        file_row(rid)
    return kernel


def kernel_basis_ZZ(rows: list[dict]) -> list[dict]:
    """Basis of the integer kernel lattice of the map e_i -> rows[i].

    Unimodular row reduction of [M | I]; the transforms of rows whose M-part
    vanishes form a lattice basis of the kernel.
    """
    pivots: dict[int, tuple[dict, dict]] = {}
    kernel: list[dict] = []
    for i, r in enumerate(rows):
        v = {c: int(x) for c, x in r.items() if x}
        w = {i: 1}
        placed = False
        while v:
            c = min(v)
            entry = pivots.get(c)
            if entry is None:
                pivots[c] = (v, w)
                placed = True
                break
            pv, pw = entry
            a, b = pv[c], v[c]
            if b % a == 0:
                q = b // a
                v = _row_sub(v, pv, q)
                w = _row_sub(w, pw, q)
                continue
            g, x, y = _xgcd(a, b)
            pivots[c] = (_row_comb(pv, x, v, y), _row_comb(pw, x, w, y))
            v, w = _row_comb(pv, -(b // g), v, a // g), _row_comb(pw, -(b // g), w, a // g)
        if not placed and not v:
            kernel.append(w)
    return kernel


class BasisSolver:
    """Reusable coordinate solver over Q for a fixed independent row basis."""

    def __init__(self, basis: list[dict]):
        self.nbasis = len(basis)
        self.pivots: dict[int, int] = {}
        self.stored: list[dict] = []
        self.combos: list[dict[int, Fraction]] = []
        for k, b in enumerate(basis):
            row = {c: Fraction(v) for c, v in b.items() if v}
            combo = {k: Fraction(1)}
            self._reduce(row, combo)
            if not row:
                raise ValueError("basis rows are linearly dependent")
            lead = min(row)
            inv = Fraction(1) / row[lead]
            self.stored.append({c: v * inv for c, v in row.items()})
            self.combos.append({k2: v * inv for k2, v in combo.items()})
            self.pivots[lead] = len(self.stored) - 1

    def _reduce(self, row: dict, combo: dict) -> None:
        heap = sorted(row)
        seen = set()
        while heap:
            c = heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            v = row.get(c)
            if not v:
                continue
            idx = self.pivots.get(c)
            if idx is None:
                continue
            prow, pcombo = self.stored[idx], self.combos[idx]
            for c2, w in prow.items():
                fresh = c2 not in row
                nv = row.get(c2, Fraction(0)) - v * w
                if nv:
                    row[c2] = nv
                    if fresh and c2 not in seen:
                        heapq.heappush(heap, c2)
                else:
                    row.pop(c2, None)
            for k2, w in pcombo.items():
                nv = combo.get(k2, Fraction(0)) - v * w
                if nv:
                    combo[k2] = nv
                else:
                    combo.pop(k2, None)

    def coordinates(self, vector: dict) -> list[Fraction] | None:
        row = {c: Fraction(v) for c, v in vector.items() if v}
        combo: dict[int, Fraction] = {}
        self._reduce(row, combo)
        if row:
            return None
        # the residual is vector + sum(combo_k * basis_k) = 0
        return [-combo.get(k, Fraction(0)) for k in range(self.nbasis)]


def coordinates_in_basis(vector: dict, basis: list[dict]) -> list[Fraction] | None:
    """Coordinates of vector in the span of the (independent) basis rows.

    Solved over Q; returns None when the vector is outside the span.  For
    repeated solves against one basis use BasisSolver directly.
    """
    return BasisSolver(basis).coordinates(vector)
