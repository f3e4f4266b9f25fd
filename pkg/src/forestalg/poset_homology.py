"""The poset of odd set partitions: reduced homology of the (shifted) chain
complex, Whitney homology with its exact sequence, and the alternating-sum map
from triangle trees to cycles.

Chains are (bottom < x_1 < ... < x_r < top) with r interior elements, graded
in degree r+1; the differential drops interior elements with alternating
signs.  When the poset lacks a top element one is adjoined (shifting degrees
by one).  Interval homology caches by the multiset of part sizes, since an
interval below a partition is a product of smaller odd-partition posets.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from .forests import TriangleGraph, partition_of_edges
from .linalg import (HermiteEchelon, field_rank, kernel_basis_fast,
                     smith_divisors)


Partition = tuple  # tuple of sorted tuples, ordered by minimum


def make_partition(parts) -> Partition:
    return tuple(sorted((tuple(sorted(p)) for p in parts), key=lambda p: p[0]))


def odd_partitions(labels) -> list[Partition]:
    """All partitions of the label set with every part of odd size."""
    labels = tuple(sorted(labels))

    def rec(remaining: tuple):
        if not remaining:
            yield ()
            return
        first = remaining[0]
        rest = remaining[1:]
        for k in range(0, len(rest) + 1, 2):
            for extra in combinations(rest, k):
                part = (first,) + extra
                chosen = set(extra)
                left = tuple(x for x in rest if x not in chosen)
                for tail in rec(left):
                    yield (part,) + tail

    return [make_partition(p) for p in rec(labels)]


def refines(p: Partition, q: Partition) -> bool:
    """p <= q in refinement order: every part of p lies inside a part of q."""
    where = {}
    for i, part in enumerate(q):
        for v in part:
            where[v] = i
    for part in p:
        i = where[part[0]]
        if any(where[v] != i for v in part[1:]):
            return False
    return True


class OddPartitionPoset:
    """All odd partitions of {1..n} under refinement, bottom = singletons.

    A top element exists exactly when n is odd (the one-part partition);
    homology routines adjoin one otherwise.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.labels = tuple(range(1, n + 1))
        self.elements = sorted(odd_partitions(self.labels),
                               key=lambda p: (-len(p), p))
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.bottom = make_partition([(v,) for v in self.labels])
        self.top = make_partition([self.labels]) if n % 2 == 1 else None

    def rank(self, p: Partition) -> int:
        return (self.n - len(p)) // 2

    @property
    def max_rank(self) -> int:
        """Rank of the top element, counting an adjoined one."""
        if self.top is not None:
            return self.rank(self.top)
        return max(self.rank(p) for p in self.elements) + 1

    def covers(self, p: Partition, q: Partition) -> bool:
        return self.rank(q) == self.rank(p) + 1 and refines(p, q)


# ---------------------------------------------------------------------------
# chain complexes of bounded posets


def _all_chains(interior, rankf) -> dict[int, list[tuple]]:
    """Strictly increasing interior chains (as index tuples), by length."""
    order = sorted(range(len(interior)), key=lambda i: (rankf(interior[i]), i))
    above: dict[int, list[int]] = {i: [] for i in range(len(interior))}
    for pos, i in enumerate(order):
        ri = rankf(interior[i])
        for j in order[pos + 1:]:
            if rankf(interior[j]) > ri and refines(interior[i], interior[j]):
                above[i].append(j)
    groups: dict[int, list[tuple]] = {0: [()]}

    def extend(chain: tuple):
        r = len(chain)
        groups.setdefault(r, []).append(chain)
        for j in above[chain[-1]]:
            extend(chain + (j,))

    for i in order:
        extend((i,))
    return groups


def _boundaries(groups: dict[int, list[tuple]]) -> dict[int, list[dict]]:
    index = {r: {c: i for i, c in enumerate(cs)} for r, cs in groups.items()}
    out: dict[int, list[dict]] = {}
    for r in sorted(groups):
        if r == 0:
            continue
        lower = index[r - 1]
        rows = []
        for chain in groups[r]:
            row: dict[int, int] = {}
            for i in range(r):
                col = lower[chain[:i] + chain[i + 1:]]
                v = row.get(col, 0) + (-1) ** (i & 1)
                if v:
                    row[col] = v
                else:
                    row.pop(col, None)
            rows.append(row)
        out[r] = rows
    return out


def homology_of_bounded(interior, rankf) -> list[tuple[int, int, list[int]]]:
    """(degree, rank, torsion divisors) for the chain complex of a bounded
    poset with the given interior elements; degree r+1 holds chains with r
    interior elements.  Entries appear only where rank or torsion is
    nonzero."""
    groups = _all_chains(interior, rankf)
    bnd = _boundaries(groups)
    ranks: dict[int, int] = {}
    divisors: dict[int, list[int]] = {}
    for r, rows in bnd.items():
        rk, div = smith_divisors(rows)
        ranks[r] = rk
        divisors[r] = div
    out = []
    for r in range(0, max(groups) + 1):
        dim = len(groups.get(r, []))
        h = dim - ranks.get(r, 0) - ranks.get(r + 1, 0)
        tor = [d for d in divisors.get(r + 1, []) if d != 1]
        if h or tor:
            out.append((r + 1, h, tor))
    return out


def reduced_homology(poset: OddPartitionPoset) -> list[tuple[int, int, list[int]]]:
    """Shifted reduced homology; degrees shift down by one when the top had
    to be adjoined, matching the convention for topless posets."""
    if poset.top == poset.bottom:
        return [(0, 1, [])]
    interior = [p for p in poset.elements
                if p != poset.bottom and p != poset.top]
    result = homology_of_bounded(interior, poset.rank)
    if poset.top is None:
        result = [(deg - 1, h, tor) for deg, h, tor in result]
    return result


@lru_cache(maxsize=None)
def interval_homology_by_sizes(sizes: tuple) -> list[tuple[int, int, list[int]]]:
    """Homology of [bottom, x] for x with parts of the given odd sizes;
    isomorphic intervals share this cache through relabeling."""
    labels = []
    parts = []
    offset = 0
    for s in sorted(sizes):
        part = tuple(range(offset + 1, offset + s + 1))
        parts.append(part)
        labels.extend(part)
        offset += s
    top = make_partition(parts)
    n = len(labels)
    bottom = make_partition([(v,) for v in labels])
    if top == bottom:
        return [(0, 1, [])]
    interior = [p for p in odd_partitions(labels)
                if p != bottom and p != top and refines(p, top)]
    return homology_of_bounded(interior, lambda p: (n - len(p)) // 2)


def interval_homology(poset: OddPartitionPoset, x: Partition):
    return interval_homology_by_sizes(tuple(sorted(len(p) for p in x)))


def _egf_expected(n: int) -> tuple[int, int]:
    """(forced degree, expected top rank): n!ác[u^n] of arcsin(u) for odd n,
    of 1 - sqrt(1 - u^2) for even n."""
    if n % 2 == 1:
        m = (n - 1) // 2
        c = Fraction(factorial(2 * m), 4 ** m * factorial(m) ** 2 * (2 * m + 1))
        return m, int(c * factorial(n))
    # f = 1 - sqrt(1-u^2) satisfies f = (u^2 + f^2)/2; solve degreewise
    coeff: dict[int, Fraction] = {}
    for k in range(2, n + 1, 2):
        square = sum((coeff.get(a, Fraction(0)) * coeff.get(k - a, Fraction(0))
                      for a in range(2, k - 1)), Fraction(0))
        coeff[k] = (Fraction(1) if k == 2 else Fraction(0)) / 2 + square / 2
    return (n - 2) // 2, int(coeff[n] * factorial(n))


def verify_egf_ranks(max_n: int) -> dict:
    """Homology concentration and ranks against the generating functions."""
    report = {}
    for n in range(2, max_n + 1):
        hom = reduced_homology(OddPartitionPoset(n))
        nonzero = [(d, h) for d, h, _ in hom if h]
        torsion = [t for _, _, ts in hom for t in ts]
        forced_degree, expected = _egf_expected(n)
        ok = nonzero == [(forced_degree, expected)] and not torsion
        report[n] = {"rank": nonzero[0][1] if nonzero else 0,
                     "degree": nonzero[0][0] if nonzero else None,
                     "expected_rank": expected, "expected_degree": forced_degree,
                     "torsion": torsion, "ok": ok}
    return report


# ---------------------------------------------------------------------------
# Whitney homology


class _TopMark:
    """Stand-in for an adjoined top element (compares above everything)."""

    __repr__ = lambda self: "TOP"


TOP = _TopMark()


def whitney_homology(n: int) -> dict:
    """Whitney groups W_r (top-degree interval cycles at each rank-r element,
    the adjoined top included for even n) with the top-dropping connecting
    maps.  Verifies the differential squares to zero on cycle bases and that
    the sequence 0 -> W_R -> ... -> W_1 -> W_0 -> 0 is exact over Z: at each
    spot the image lattice equals the kernel lattice (rank equality plus
    Hermite membership, the unit-elementary-divisor certificate)."""
    poset = OddPartitionPoset(n)
    R = poset.max_rank
    by_rank: dict[int, list] = {r: [] for r in range(R + 1)}
    for p in poset.elements:
        by_rank[poset.rank(p)].append(p)
    if poset.top is None:
        by_rank[R] = [TOP]

    def above(a, b) -> bool:
        return b is TOP or (a is not TOP and refines(a, b))

    # saturated chains (x_1, ..., x_r) from the bottom, grouped by length
    chains: dict[int, list[tuple]] = {0: [()]}
    for r in range(1, R + 1):
        out = []
        for chain in chains[r - 1]:
            last = chain[-1] if chain else poset.bottom
            for x in by_rank[r]:
                if above(last, x):
                    out.append(chain + (x,))
        chains[r] = out
    chain_index = {r: {c: i for i, c in enumerate(cs)} for r, cs in chains.items()}

    def interval_boundary_rows(r: int) -> tuple[list[dict], int]:
        """Rows of the blockwise interval differential on chains of length r
        (drop interior elements; columns = once-gapped chains, per top)."""
        gap_index: dict[tuple, int] = {}
        rows = []
        for chain in chains[r]:
            row: dict[int, int] = {}
            for i in range(r - 1):
                sub = chain[:i] + chain[i + 1:]
                col = gap_index.setdefault(sub, len(gap_index))
                v = row.get(col, 0) + (-1) ** (i & 1)
                if v:
                    row[col] = v
                else:
                    row.pop(col, None)
            rows.append(row)
        return rows, len(gap_index)

    # W_r bases as integer vectors over chains[r]
    w_basis: dict[int, list[dict]] = {0: [{0: 1}]}
    w_count_by_top: dict[int, dict] = {0: {str(poset.bottom): 1}}
    delta_rows: dict[int, list[dict]] = {}
    delta_cols: dict[int, int] = {}
    for r in range(1, R + 1):
        rows, ncols = interval_boundary_rows(r)
        delta_rows[r] = rows
        delta_cols[r] = ncols
        grouped: dict = {}
        for ci, chain in enumerate(chains[r]):
            grouped.setdefault(chain[-1], []).append(ci)
        basis: list[dict] = []
        counts: dict = {}
        for x in sorted(grouped, key=str):
            cis = grouped[x]
            kernel = kernel_basis_fast([rows[ci] for ci in cis])
            if x is not TOP:
                cached = interval_homology_by_sizes(tuple(sorted(len(p) for p in x)))
                want = sum(h for d, h, _ in cached if d == r)
                if len(kernel) != want:
                    raise AssertionError(
                        f"interval cycle count {len(kernel)} != cached homology {want}")
            counts[str(x)] = len(kernel)
            for vec in kernel:
                basis.append({cis[i]: v for i, v in vec.items()})
        w_basis[r] = basis
        w_count_by_top[r] = counts

    def project(vec: dict, r: int) -> dict[int, int]:
        """Drop the top element of each chain, with the sign (-1)^(r-1)."""
        sign = (-1) ** ((r - 1) & 1)
        lower = chain_index[r - 1]
        out: dict[int, int] = {}
        for ci, v in vec.items():
            col = lower[chains[r][ci][:-1]]
            nv = out.get(col, 0) + sign * v
            if nv:
                out[col] = nv
            else:
                out.pop(col, None)
        return out

    # images of the connecting maps, at chain level; each image is a cycle
    images: dict[int, list[dict]] = {}
    for r in range(1, R + 1):
        images[r] = [project(vec, r) for vec in w_basis[r]]
        if r >= 2:
            for img in images[r]:
                acc: dict[int, int] = {}
                for ci, v in img.items():
                    for col, w in delta_rows[r - 1][ci].items():
                        nv = acc.get(col, 0) + v * w
                        if nv:
                            acc[col] = nv
                        else:
                            acc.pop(col, None)
                if acc:
                    raise AssertionError("connecting image left the cycle space")

    # the square of the differential vanishes on every basis cycle
    for r in range(2, R + 1):
        for img in images[r]:
            again = {}
            sign = (-1) ** ((r - 2) & 1)
            lower = chain_index[r - 2]
            for ci, v in img.items():
                col = lower[chains[r - 1][ci][:-1]]
                nv = again.get(col, 0) + sign * v
                if nv:
                    again[col] = nv
                else:
                    again.pop(col, None)
            if again:
                raise AssertionError("Whitney differential does not square to zero")

    # exactness: kernel lattice of (delta, project) equals the image lattice
    dims = {r: len(w_basis[r]) for r in range(R + 1)}
    ranks: dict[int, int] = {}
    lattice_equal: dict[int, bool] = {}
    for r in range(0, R + 1):
        if r == 0:
            kernel_lattice = [{0: 1}]  # the whole of W_0 (its map is zero)
        else:
            # kernel of (delta_r, project_r) stacked: cycles killed by the
            # connecting map, as a sublattice of the chain module
            ncols_delta = delta_cols[r]
            stacked = []
            for ci in range(len(chains[r])):
                row = dict(delta_rows[r][ci])
                col = chain_index[r - 1][chains[r][ci][:-1]]
                row[ncols_delta + col] = 1
                stacked.append(row)
            kernel_lattice = kernel_basis_fast(stacked)
        image = images.get(r + 1, [])
        rank_image = field_rank(image) if image else 0
        ranks[r + 1] = rank_image
        ech = HermiteEchelon()
        ech.extend(image)
        lattice_equal[r] = (len(kernel_lattice) == rank_image
                            and all(ech.contains(vec) for vec in kernel_lattice))

    exact = all(lattice_equal.values())
    return {"n": n, "dims": dims,
            "connecting_ranks": {r: ranks[r] for r in sorted(ranks) if r <= R},
            "lattice_equal": lattice_equal, "exact": exact,
            "cycles_by_top": w_count_by_top}


# ---------------------------------------------------------------------------
# trees to cycles


def tree_to_cycle(T: TriangleGraph, poset: OddPartitionPoset) -> dict[tuple, int]:
    """Alternating sum, over the insertion orders of the tree's triangles, of
    the chains of component partitions; returns {interior chain: coefficient}
    and asserts the result is a cycle."""
    edges = T.sorted_edges
    n = poset.n
    if tuple(sorted(T.vertices)) != poset.labels:
        raise ValueError("tree must span the poset's label set")
    parts_all = partition_of_edges(edges, poset.labels)
    if len(parts_all) != 1:
        raise ValueError("tree-to-cycle needs a connected spanning tree")
    e = len(edges)
    result: dict[tuple, int] = {}
    for perm in permutations(range(e)):
        sign = 1
        for i in range(e):
            for j in range(i + 1, e):
                if perm[i] > perm[j]:
                    sign = -sign
        chain = []
        for k in range(1, e):
            pi = partition_of_edges([edges[perm[i]] for i in range(k)], poset.labels)
            chain.append(pi)
        key = tuple(chain)
        v = result.get(key, 0) + sign
        if v:
            result[key] = v
        else:
            result.pop(key, None)
    _assert_cycle(result, poset)
    return result


def _assert_cycle(chain_sum: dict[tuple, int], poset: OddPartitionPoset) -> None:
    boundary: dict[tuple, int] = {}
    for chain, coeff in chain_sum.items():
        for i in range(len(chain)):
            sub = chain[:i] + chain[i + 1:]
            v = boundary.get(sub, 0) + coeff * (-1) ** (i & 1)
            if v:
                boundary[sub] = v
            else:
                boundary.pop(sub, None)
    if boundary:
        raise AssertionError("tree image is not a cycle")


def keystone_cochain(T: TriangleGraph, poset: OddPartitionPoset) -> tuple:
    """The elementary cochain (maximal chain) of the keystone insertion order."""
    from .forests import keystone_insertion_order

    order = keystone_insertion_order(T)
    chain = []
    for k in range(1, len(order)):
        chain.append(partition_of_edges(order[:k], poset.labels))
    return tuple(chain)
