"""The divisor-class ring of the complex (n+1)-point moduli space in the
inclusion-sum generators, its canonical (laminar, exponent-bounded) monomial
basis with grevlex rewriting, the mod-2 reduction, and the Bockstein
differential with its (plain and twisted) cohomology.

Generators are indexed by subsets S of {1..n} with |S| >= 3 (size-2 classes
vanish); a monomial is canonical when its support family is laminar
(condition 1) and each exponent respects the keyhole bound (condition 2).
The two rewriting rules are the overlap relation

    P_S P_T = P_S P_{S u T} + P_T P_{S u T} - P_{S u T}^2

and the exponent-bound relation P_S^e prod_i (P_{S_i} - P_S) = 0 with
e = |S_0| + k - 1; both replace a monomial by strictly grevlex-smaller ones
(variable order: by (|S|, sorted elements), extending inclusion).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import factorial

from .forests import partition_of_edges
from .linalg import BitEchelon
from .series import keel_betti_polynomial, odd_square_product_poly


Monomial = tuple  # sorted tuple of (support_id, exponent), exponent > 0


class KeelRing:
    """Presentation data for one n: interned supports and rewrite machinery."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.labels = tuple(range(1, n + 1))
        self.supports: list[frozenset] = []
        for size in range(3, n + 1):
            for combo in combinations(self.labels, size):
                self.supports.append(frozenset(combo))
        self.sup_index = {s: i for i, s in enumerate(self.supports)}
        self._reduce_cache: dict[Monomial, dict[Monomial, int]] = {}
        self._anchored_cache: dict[tuple, list] = {}
        self._canonical_cache: list[Monomial] | None = None
        self.rewrite_step_limit = 200_000

    def support_of(self, sid: int) -> frozenset:
        return self.supports[sid]

    def monomial(self, sets_with_exps) -> Monomial | None:
        """Monomial from {set: exp}; None encodes zero (a size-2 support)."""
        items = []
        for s, e in sets_with_exps.items():
            fs = frozenset(s)
            if e < 0:
                raise ValueError("negative exponent")
            if e == 0:
                continue
            if len(fs) == 2:
                return None
            items.append((self.sup_index[fs], e))
        return tuple(sorted(items))

    def degree(self, m: Monomial) -> int:
        return sum(e for _, e in m)

    def monomial_str(self, m: Monomial) -> str:
        return " ".join(
            f"P{sorted(self.supports[sid])}^{e}" if e > 1 else f"P{sorted(self.supports[sid])}"
            for sid, e in m) or "1"

    # -- grevlex -----------------------------------------------------------

    def grevlex_less(self, a: Monomial, b: Monomial) -> bool:
        da, db = self.degree(a), self.degree(b)
        if da != db:
            return da < db
        # rightmost (largest sid) differing exponent: larger exponent loses
        ia, ib = len(a) - 1, len(b) - 1
        while ia >= 0 or ib >= 0:
            sa = a[ia][0] if ia >= 0 else -1
            sb = b[ib][0] if ib >= 0 else -1
            if sa == sb:
                ea, eb = a[ia][1], b[ib][1]
                if ea != eb:
                    return ea > eb
                ia -= 1
                ib -= 1
            elif sa > sb:
                return True  # a has an entry in a later variable: a smaller
            else:
                return False
        return False

    # -- canonical-form tests ----------------------------------------------

    def condition1_violation(self, m: Monomial):
        """An overlapping, non-nested support pair (innermost first), or None."""
        best = None
        for (i1, _), (i2, _) in combinations(m, 2):
            s, t = self.supports[i1], self.supports[i2]
            inter = s & t
            if inter and inter != s and inter != t:
                key = (min(len(s), len(t)), max(len(s), len(t)), i1, i2)
                if best is None or key < best[0]:
                    best = (key, i1, i2)
        return None if best is None else (best[1], best[2])

    def _maximal_inner(self, m: Monomial, sid: int) -> list[int]:
        s = self.supports[sid]
        inner = [i for i, _ in m if i != sid and self.supports[i] < s]
        maximal = []
        for i in inner:
            if not any(self.supports[i] < self.supports[j] for j in inner if j != i):
                maximal.append(i)
        return maximal

    def condition2_violation(self, m: Monomial):
        """(sid, maximal inner sids) for the smallest bound-violating support,
        assuming condition 1 holds; None if canonical."""
        exps = dict(m)
        for sid, e in m:
            inner = self._maximal_inner(m, sid)
            bound = len(inner) - 1 + len(self.supports[sid]) \
                - sum(len(self.supports[i]) for i in inner)
            if e >= bound:
                return sid, inner
        return None

    def is_canonical(self, m: Monomial) -> bool:
        return (self.condition1_violation(m) is None
                and self.condition2_violation(m) is None)

    # -- rewriting -----------------------------------------------------------

    def _mono_mul(self, m: Monomial, sid: int, k: int = 1) -> Monomial:
        out = dict(m)
        out[sid] = out.get(sid, 0) + k
        return tuple(sorted((i, e) for i, e in out.items() if e))

    def _mono_div(self, m: Monomial, sid: int, k: int = 1) -> Monomial:
        out = dict(m)
        if out.get(sid, 0) < k:
            raise ValueError("monomial not divisible")
        out[sid] -= k
        return tuple(sorted((i, e) for i, e in out.items() if e))

    def _rewrite_once(self, m: Monomial) -> dict[Monomial, int]:
        """One relation application to a non-canonical monomial; the result is
        supported on strictly grevlex-smaller monomials (asserted)."""
        v1 = self.condition1_violation(m)
        if v1 is not None:
            i1, i2 = v1
            u = self.supports[i1] | self.supports[i2]
            iu = self.sup_index[u]
            base = self._mono_div(self._mono_div(m, i1), i2)
            out: dict[Monomial, int] = {}
            for sid, coeff in ((i1, 1), (i2, 1)):
                mm = self._mono_mul(self._mono_mul(base, sid), iu)
                out[mm] = out.get(mm, 0) + coeff
            mm = self._mono_mul(base, iu, 2)
            out[mm] = out.get(mm, 0) - 1
            result = out
        else:
            v2 = self.condition2_violation(m)
            if v2 is None:
                raise ValueError("monomial already canonical")
            sid, inner = v2
            s = self.supports[sid]
            kk = len(inner)
            e = (len(s) - sum(len(self.supports[i]) for i in inner)) + kk - 1
            # P_s^e * prod_i (P_{S_i} - P_s) = 0; the A = full term is leading
            base = self._mono_div(m, sid, e)
            for i in inner:
                base = self._mono_div(base, i)
            out = {}
            for r in range(kk):  # subsets A of the inner set, A != full
                for A in combinations(range(kk), r):
                    sign = -((-1) ** ((kk - r) & 1))
                    mm = self._mono_mul(base, sid, e + kk - r)
                    for ai in A:
                        mm = self._mono_mul(mm, inner[ai])
                    out[mm] = out.get(mm, 0) + sign
            result = {k2: v for k2, v in out.items() if v}
        for mm in result:
            if not self.grevlex_less(mm, m):
                raise AssertionError("rewrite failed to decrease grevlex order")
        return result

    def reduce_monomial(self, m: Monomial) -> dict[Monomial, int]:
        """Integer normal form of a monomial on canonical monomials (cached)."""
        cached = self._reduce_cache.get(m)
        if cached is not None:
            return cached
        steps = 0
        work: dict[Monomial, int] = {m: 1}
        done: dict[Monomial, int] = {}
        while work:
            steps += 1
            if steps > self.rewrite_step_limit:
                raise RuntimeError("rewriting exceeded the step limit")
            mm = max(work, key=lambda x: _GrevKey(self, x))
            coeff = work.pop(mm)
            cached = self._reduce_cache.get(mm)
            if cached is not None:
                for k2, v in cached.items():
                    nv = done.get(k2, 0) + coeff * v
                    if nv:
                        done[k2] = nv
                    else:
                        done.pop(k2, None)
                continue
            if self.is_canonical(mm):
                nv = done.get(mm, 0) + coeff
                if nv:
                    done[mm] = nv
                else:
                    done.pop(mm, None)
                continue
            for k2, v in self._rewrite_once(mm).items():
                nv = work.get(k2, 0) + coeff * v
                if nv:
                    work[k2] = nv
                else:
                    work.pop(k2, None)
        self._reduce_cache[m] = done
        return done

    def reduce(self, poly: dict[Monomial, int], mod2: bool = False) -> dict[Monomial, int]:
        out: dict[Monomial, int] = {}
        for m, c in poly.items():
            for k2, v in self.reduce_monomial(m).items():
                nv = out.get(k2, 0) + c * v
                if nv:
                    out[k2] = nv
                else:
                    out.pop(k2, None)
        if mod2:
            out = {k2: 1 for k2, v in out.items() if v % 2}
        return out

    # -- canonical monomial enumeration -------------------------------------

    def canonical_monomials(self, degree: int | None = None) -> list[Monomial]:
        if self._canonical_cache is None:
            self._canonical_cache = self._enumerate_canonical()
        if degree is None:
            return list(self._canonical_cache)
        return [m for m in self._canonical_cache if self.degree(m) == degree]

    def _anchored(self, support: tuple) -> list[tuple[dict, int]]:
        """Canonical families with outermost set exactly `support` (exponent
        >= 1, inner supports strictly inside): (exponent dict, degree)."""
        cached = self._anchored_cache.get(support)
        if cached is not None:
            return cached
        out = []
        sid = self.sup_index[frozenset(support)]
        for fam, fdeg, sizes in self._disjoint_families(support, forbid=support):
            bound = len(sizes) - 1 + len(support) - sum(sizes)
            for d in range(1, bound):
                fam2 = dict(fam)
                fam2[sid] = d
                out.append((fam2, fdeg + d))
        self._anchored_cache[support] = out
        return out

    def _disjoint_families(self, avail: tuple, forbid: tuple | None = None):
        """Families of disjoint anchored components inside `avail`; a
        component equal to `forbid` is excluded (properness).  Yields
        (exponent dict, total degree, tuple of component sizes)."""
        if len(avail) < 3:
            yield {}, 0, ()
            return
        a = avail[0]
        rest = avail[1:]
        for fam, d, sizes in self._disjoint_families(rest, forbid):
            yield fam, d, sizes
        for size in range(3, len(avail) + 1):
            for extra in combinations(rest, size - 1):
                comp = (a,) + extra
                if forbid is not None and comp == forbid:
                    continue
                chosen = set(extra)
                left = tuple(x for x in rest if x not in chosen)
                for cfam, cdeg in self._anchored(comp):
                    for fam, d, sizes in self._disjoint_families(left, forbid):
                        merged = dict(fam)
                        merged.update(cfam)
                        yield merged, d + cdeg, sizes + (size,)

    def _enumerate_canonical(self) -> list[Monomial]:
        out = {()}
        for fam, _deg, _sizes in self._disjoint_families(self.labels):
            if fam:
                out.add(tuple(sorted(fam.items())))
        return sorted(out)

    # -- gradings ------------------------------------------------------------

    def partition_grading(self, m: Monomial) -> tuple:
        edges = [tuple(sorted(self.supports[sid])) for sid, _ in m]
        hyper = [tuple(s) for s in edges]
        return _components_of_sets(hyper, self.labels)

    def connected_block(self, degree: int | None = None) -> list[Monomial]:
        """Canonical monomials whose support union spans all labels in one
        component."""
        whole = (self.labels,)
        return [m for m in self.canonical_monomials(degree)
                if m and self.partition_grading(m) == whole]


class _GrevKey:
    """Comparison adapter so ``max`` picks the grevlex-largest monomial."""

    __slots__ = ("ring", "m")

    def __init__(self, ring: KeelRing, m: Monomial):
        self.ring = ring
        self.m = m

    def __lt__(self, other: "_GrevKey") -> bool:
        return self.ring.grevlex_less(self.m, other.m)


def _components_of_sets(sets, labels) -> tuple:
    parent = {v: v for v in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in sets:
        a = find(s[0])
        for v in s[1:]:
            b = find(v)
            if b != a:
                parent[b] = a
    groups: dict = {}
    for v in labels:
        groups.setdefault(find(v), []).append(v)
    return tuple(sorted((tuple(sorted(g)) for g in groups.values()),
                        key=lambda p: p[0]))


# ---------------------------------------------------------------------------
# change of generators on the degree-1 part


def pi_from_d(n: int, d_coords: dict[frozenset, int]) -> dict[frozenset, int]:
    """Degree-1 change of basis: D_S = -sum_{S subset T} (-1)^(|T|-|S|) P_T,
    applied linearly to {S: coeff} (supports inside {1..n}, sizes 2..n)."""
    labels = frozenset(range(1, n + 1))
    out: dict[frozenset, int] = {}
    for s, c in d_coords.items():
        s = frozenset(s)
        if 0 in s:
            raise ValueError("indices must avoid the distinguished point 0")
        if not (2 <= len(s) <= n and s <= labels):
            raise ValueError(f"bad support {sorted(s)}")
        rest = sorted(labels - s)
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                t = s | frozenset(extra)
                v = out.get(t, 0) - c * (-1) ** ((len(t) - len(s)) & 1)
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
    return out


def d_from_pi(n: int, pi_coords: dict[frozenset, int]) -> dict[frozenset, int]:
    """Inverse change of basis: P_S = -sum_{S subset T} D_T."""
    labels = frozenset(range(1, n + 1))
    out: dict[frozenset, int] = {}
    for s, c in pi_coords.items():
        s = frozenset(s)
        if 0 in s:
            raise ValueError("indices must avoid the distinguished point 0")
        if not (2 <= len(s) <= n and s <= labels):
            raise ValueError(f"bad support {sorted(s)}")
        rest = sorted(labels - s)
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                t = s | frozenset(extra)
                v = out.get(t, 0) - c
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
    return out


# ---------------------------------------------------------------------------
# the Bockstein differential


def beta(ring: KeelRing, poly: dict[Monomial, int]) -> dict[Monomial, int]:
    """beta(v) = sum_S P_S^2 d/dP_S v over F_2, reduced to canonical form."""
    image: dict[Monomial, int] = {}
    for m, c in poly.items():
        if c % 2 == 0:
            continue
        for sid, e in m:
            if e % 2 == 0:
                continue  # exponent derivative kills even powers mod 2
            mm = ring._mono_mul(m, sid)
            image[mm] = image.get(mm, 0) ^ 1
    return ring.reduce(image, mod2=True)


def beta_twisted(ring: KeelRing, poly: dict[Monomial, int]) -> dict[Monomial, int]:
    """beta'(v) = beta(v) + P_{1..n} v over F_2; the multiplication term
    vanishes when the full label set has size two (its class is zero)."""
    out = dict(beta(ring, poly))
    top = ring.sup_index.get(frozenset(ring.labels))
    if top is None:
        return out
    shifted: dict[Monomial, int] = {}
    for m, c in poly.items():
        if c % 2 == 0:
            continue
        mm = ring._mono_mul(m, top)
        shifted[mm] = shifted.get(mm, 0) ^ 1
    for m, c in ring.reduce(shifted, mod2=True).items():
        v = (out.get(m, 0) + c) % 2
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _differential_dims(layers: dict[int, list[Monomial]], apply_d) -> dict[int, int]:
    """dim ker/im per degree for a degree-+1 differential over F_2."""
    index = {d: {m: i for i, m in enumerate(ms)} for d, ms in layers.items()}
    ranks: dict[int, int] = {}
    for d in sorted(layers):
        ech = BitEchelon()
        target = index.get(d + 1, {})
        for m in layers[d]:
            img = apply_d({m: 1})
            row = 0
            for mm, c in img.items():
                if c % 2:
                    row |= 1 << target[mm]
            ech.add(row)
        ranks[d] = ech.rank
    out = {}
    for d in sorted(layers):
        out[d] = len(layers[d]) - ranks.get(d, 0) - ranks.get(d - 1, 0)
    return out


@lru_cache(maxsize=None)
def hbeta_connected_block(m: int) -> tuple:
    """H_beta dimensions by degree on the connected block of {1..m}:
    ((degree, dim), ...); zero for even m, one-dimensional in degree
    (m-1)/2 for odd m (the certified computation, not the assertion)."""
    ring = KeelRing(m)
    block = ring.connected_block()
    layers: dict[int, list[Monomial]] = {}
    for mono in block:
        layers.setdefault(ring.degree(mono), []).append(mono)
    for d in list(layers):
        layers[d] = sorted(layers[d])
    dims = _differential_dims(layers, lambda p: beta(ring, p))
    return tuple(sorted((d, v) for d, v in dims.items() if v))


def assembled_hbeta_dims(n: int) -> dict[int, int]:
    """H_beta dimensions of the full mod-2 ring on n labels, assembled over
    the partition grading (tensor product over parts, convolving degrees)."""
    from .lambda_alg import _partition_count

    def vectors(total_labels):
        pairs = []
        for s in range(3, total_labels + 1):
            vec = dict(hbeta_connected_block(s))
            pairs.append((s, vec))
        return pairs

    per_size = dict(vectors(n))
    out: dict[int, int] = {0: 1}

    def rec(min_size: int, labels_left: int, acc_vec: dict[int, int],
            sizes: list[int], mults: dict):
        count = _partition_count(n, sizes, mults)
        if sizes:
            for d, v in acc_vec.items():
                out[d] = out.get(d, 0) + v * count
        for s in range(max(3, min_size), labels_left + 1):
            block = per_size.get(s, {})
            if not block:
                continue
            conv: dict[int, int] = {}
            for d1, v1 in acc_vec.items():
                for d2, v2 in block.items():
                    conv[d1 + d2] = conv.get(d1 + d2, 0) + v1 * v2
            sizes.append(s)
            key = s
            mults[key] = mults.get(key, 0) + 1
            rec(s, labels_left - s, conv, sizes, mults)
            mults[key] -= 1
            if not mults[key]:
                del mults[key]
            sizes.pop()

    rec(3, n, {0: 1}, [], {})
    return {d: v for d, v in sorted(out.items()) if v}


def bockstein_cohomology(n: int, twisted: bool = False) -> dict[int, int]:
    """Dimensions of the Bockstein cohomology per cohomological degree.

    Plain: assembled over partition blocks.  Twisted: computed on the full
    canonical basis (the extra top-multiplication term is not
    partition-homogeneous)."""
    if not twisted:
        return assembled_hbeta_dims(n)
    ring = KeelRing(n)
    layers: dict[int, list[Monomial]] = {}
    for mono in ring.canonical_monomials():
        layers.setdefault(ring.degree(mono), []).append(mono)
    for d in list(layers):
        layers[d] = sorted(layers[d])
    dims = _differential_dims(layers, lambda p: beta_twisted(ring, p))
    return {d: v for d, v in sorted(dims.items()) if v}


def betti_upper_bound(n: int) -> dict:
    """The certified coefficientwise bound: H_beta dims of the mod-2 ring on
    n labels bound the real (n+1)-point Betti numbers, and equal the skew
    algebra's Hilbert coefficients (the main dimension mechanism)."""
    dims = assembled_hbeta_dims(n)
    formula = odd_square_product_poly(n)
    return {"n": n, "hbeta": dims, "formula": dict(sorted(formula.items())),
            "equal": dims == {d: c for d, c in formula.items() if c}}


def canonical_count_report(n: int) -> dict:
    """Canonical monomial counts per degree against the ODE coefficients."""
    ring = KeelRing(n)
    counts: dict[int, int] = {}
    for m in ring.canonical_monomials():
        counts[ring.degree(m)] = counts.get(ring.degree(m), 0) + 1
    expected = keel_betti_polynomial(n)
    return {"n": n, "counts": dict(sorted(counts.items())),
            "expected": dict(sorted(expected.items())),
            "match": counts == {k: v for k, v in expected.items() if v}}
