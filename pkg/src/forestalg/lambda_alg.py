"""The skew-commutative rings with forest monomial bases, in their three
presentations: four-index antisymmetric generators ("quad"), three-index
antisymmetric generators ("tri"), and three-index symmetric generators
("twisted").

Degreewise quotient dimensions are computed through the partition grading:
every relation is homogeneous for the grading by connected components of the
monomial's triangle graph, so each ideal slice splits into blocks indexed by
set partitions and only connected blocks (cached per size and relabeled) need
actual linear algebra.  The quad presentation has linear relations; those are
eliminated first (the lattice they span is verified unimodular), after which
its quadratic relations are compared against the tri presentation's span.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from . import forests
from .forests import TriangleGraph
from .linalg import FieldEchelon, coordinates_in_basis, smith_divisors
from .rings import GF2, QQ, ZZ
from .skewpoly import (GeneratorUniverse, SkewPoly, ideal_slice,
                       mul_monomials, quotient_dimension)


VARIANTS = ("quad", "tri", "twisted")


class Presentation:
    """One of the three presentations, on an explicit label set.

    quad: generators on 4-subsets, antisymmetric; 5-term linear relations,
    the shared-3-subset quadratic family, and the 6-index 3-term family.
    tri/twisted: generators on 3-subsets (antisymmetric resp. symmetric);
    shared-edge products vanish plus the cyclic 5-term quadratic family.
    """

    def __init__(self, variant: str, labels):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.variant = variant
        self.labels = tuple(sorted(labels))
        arity = 4 if variant == "quad" else 3
        self.universe = GeneratorUniverse(self.labels, arity,
                                          symmetric=(variant == "twisted"))

    @property
    def n(self) -> int:
        """Label count; the quad presentation on n labels matches the tri
        presentation on n-1 labels."""
        return len(self.labels)

    def term(self, indices, coeff=1, ring=ZZ) -> SkewPoly:
        got = self.universe.gen_id(indices)
        if got is None:
            return SkewPoly.zero(ring)
        gid, sign = got
        return SkewPoly.generator(ring, gid, sign * coeff)

    def monomial(self, index_tuples, coeff=1, ring=ZZ) -> SkewPoly:
        acc = SkewPoly.one(ring).scale(coeff)
        for idx in index_tuples:
            acc = acc * self.term(idx, ring=ring)
        return acc

    def monomial_edges(self, monomial: tuple[int, ...]) -> tuple:
        return tuple(self.universe.label_tuple(g) for g in monomial)

    def graph_of(self, monomial: tuple[int, ...]) -> TriangleGraph:
        if self.variant == "quad":
            raise ValueError("triangle graphs index 3-subset monomials only")
        return TriangleGraph.make(self.labels, self.monomial_edges(monomial))

    # -- relations ---------------------------------------------------------

    def relations(self) -> list[SkewPoly]:
        return _relations_cached(self.variant, self.labels)

    def linear_relations(self) -> list[SkewPoly]:
        return [r for r in self.relations() if r.degree() == 1]

    def quadratic_relations(self) -> list[SkewPoly]:
        return [r for r in self.relations() if r.degree() == 2]


def _normalize_relation(p: SkewPoly):
    """Content-reduced, sign-fixed copy plus a hashable dedup key."""
    if not p:
        return None
    from math import gcd
    g = 0
    for c in p.terms.values():
        g = gcd(g, abs(int(c)))
    lead = min(p.terms)
    sign = 1 if p.terms[lead] > 0 else -1
    terms = {m: sign * int(c) // g for m, c in p.terms.items()}
    q = SkewPoly(ZZ)
    q.terms = terms
    return q, tuple(sorted(terms.items()))


@lru_cache(maxsize=None)
def _relations_cached(variant: str, labels: tuple) -> list[SkewPoly]:
    p = Presentation(variant, labels)
    seen = set()
    out: list[SkewPoly] = []

    def push(rel: SkewPoly):
        norm = _normalize_relation(rel)
        if norm is None:
            return
        q, key = norm
        if key not in seen:
            seen.add(key)
            out.append(q)

    if variant == "quad":
        for five in combinations(labels, 5):
            i, j, k, l, m = five
            word = (i, j, k, l, m)
            rel = SkewPoly.zero(ZZ)
            for s in range(5):
                w = word[s:] + word[:s]
                rel = rel + p.term(w[:4])
            push(rel)
        for base in combinations(labels, 3):
            rest = [x for x in labels if x not in base]
            for l, m in combinations(rest, 2):
                push(p.term(base + (l,)) * p.term(base + (m,)))
        for six in combinations(labels, 6):
            for word in permutations(six):
                i, j, k, l, m, q6 = word
                rel = (p.term((i, j, k, l)) * p.term((l, m, q6, i))
                       + p.term((k, l, m, q6)) * p.term((q6, i, j, k))
                       + p.term((m, q6, i, j)) * p.term((j, k, l, m)))
                push(rel)
        return out

    # tri / twisted: shared-edge vanishing plus the cyclic 5-term family
    for pair in combinations(labels, 2):
        rest = [x for x in labels if x not in pair]
        for k, l in combinations(rest, 2):
            push(p.term(pair + (k,)) * p.term(pair + (l,)))
    for five in combinations(labels, 5):
        for word in permutations(five):
            i, j, k, l, m = word
            rel = (p.term((i, j, k)) * p.term((k, l, m))
                   + p.term((j, k, l)) * p.term((l, m, i))
                   + p.term((k, l, m)) * p.term((m, i, j))
                   + p.term((l, m, i)) * p.term((i, j, k))
                   + p.term((m, i, j)) * p.term((j, k, l)))
            push(rel)
    return out


def build_relations(p: Presentation) -> list[SkewPoly]:
    return p.relations()


# ---------------------------------------------------------------------------
# connected blocks of the partition grading


def _connected_filter(universe: GeneratorUniverse):
    all_labels = universe.labels

    def ok(monomial) -> bool:
        edges = [universe.label_tuple(g) for g in monomial]
        if not edges:
            return False
        parts = forests.partition_of_edges(edges, all_labels)
        return len(parts) == 1

    return ok


@lru_cache(maxsize=None)
def block_dimension(variant: str, size: int, edges: int, with_divisors: bool = False):
    """Quotient dimension of the connected block: monomials whose triangle
    graph spans {1..size} in one component, with the given edge count.

    Tree-type blocks (odd size, edges = (size-1)/2) get actual linear algebra;
    every other connected block consists of cyclic monomials only (incidence
    count), and those vanish by the certified cycle rewriting below.  Returns
    dim, or (dim, elementary divisors) over Z when requested.  Blocks inside a
    larger label set have the same dimension by relabeling (the relation
    families are stable under label bijections).
    """
    if variant == "quad":
        raise ValueError("partition blocks exist for 3-index variants only")
    if size < 3 or edges < 1:
        # a single vertex: dimension 1 at 0 edges, nothing else
        dim = 1 if (size == 1 and edges == 0) else 0
        return (dim, []) if with_divisors else dim
    if 3 * edges < size or (size % 2 == 1 and edges < (size - 1) // 2):
        dim = 0  # no connected spanning graphs at all
        return (dim, []) if with_divisors else dim
    if size % 2 == 1 and edges == (size - 1) // 2:
        p = Presentation(variant, range(1, size + 1))
        rels = p.relations()
        if with_divisors:
            return quotient_dimension(rels, edges, p.universe, ZZ,
                                      column_filter=_connected_filter(p.universe),
                                      with_divisors=True)
        return quotient_dimension([r.convert(QQ) for r in rels], edges,
                                  p.universe, QQ,
                                  column_filter=_connected_filter(p.universe))
    # cyclic block: every monomial's graph has a cycle, and every cyclic
    # monomial is certified zero by explicit relation rewriting
    _assert_cyclic_block_dies(size, edges)
    return (0, []) if with_divisors else 0


# ---------------------------------------------------------------------------
# the cycle-killing certificate


def _first_occurrence_form(edge_list) -> tuple:
    """Deterministic relabeling by first occurrence in the sorted edge list.

    Not a true canonical form under isomorphism, only a dedup key; using a
    coarser key would merely repeat work, never change answers.
    """
    edges = sorted(tuple(sorted(e)) for e in edge_list)
    relabel: dict = {}
    for e in edges:
        for v in e:
            if v not in relabel:
                relabel[v] = len(relabel)
    return tuple(sorted(tuple(sorted(relabel[v] for v in e)) for e in edges))


def _immediate_zero(edges: tuple) -> bool:
    """Repeated factor, or two factors sharing two vertices (a relation)."""
    if len(set(edges)) != len(edges):
        return True
    return any(len(set(e1) & set(e2)) >= 2 for e1, e2 in combinations(edges, 2))


def _rewrite_children(edges: tuple):
    """Rewrite options: for each pair of factors sharing exactly one vertex
    and each orientation of the 5-term relation word containing their product,
    the four replacement monomial classes.  The monomial dies if for SOME
    option ALL four replacements die."""
    out = []
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            e1, e2 = edges[a], edges[b]
            shared = set(e1) & set(e2)
            if len(shared) != 1:
                continue
            k = shared.pop()
            p1, q1 = sorted(set(e1) - {k})
            p2, q2 = sorted(set(e2) - {k})
            rest = tuple(e for idx, e in enumerate(edges) if idx not in (a, b))
            words = set()
            for i, j in ((p1, q1), (q1, p1)):
                for l, m in ((p2, q2), (q2, p2)):
                    words.add((i, j, k, l, m))
                    words.add((l, m, k, i, j))
            for i, j, k2, l, m in sorted(words):
                children = []
                for t1, t2 in (((j, k2, l), (l, m, i)), ((k2, l, m), (m, i, j)),
                               ((l, m, i), (i, j, k2)), ((m, i, j), (j, k2, l))):
                    child = _first_occurrence_form(
                        rest + (tuple(sorted(t1)), tuple(sorted(t2))))
                    children.append(child)
                out.append(tuple(children))
    return out


_killed_classes: dict[tuple, bool] = {}


def _close_and_mark(seed_classes) -> None:
    """Least fixed point of the killing rule over the rewrite closure of the
    seeds.  The closure is finite: rewrites never add vertices or edges."""
    frontier = [c for c in seed_classes if c not in _killed_classes]
    universe = set()
    stack = list(frontier)
    children_of: dict[tuple, list] = {}
    while stack:
        cls = stack.pop()
        if cls in universe or cls in _killed_classes:
            continue
        universe.add(cls)
        if _immediate_zero(cls):
            _killed_classes[cls] = True
            continue
        kids = _rewrite_children(cls)
        children_of[cls] = kids
        for group in kids:
            for ch in group:
                if ch not in universe and ch not in _killed_classes:
                    stack.append(ch)
    changed = True
    while changed:
        changed = False
        for cls, kids in children_of.items():
            if _killed_classes.get(cls):
                continue
            for group in kids:
                if all(_killed_classes.get(ch, False) or _immediate_zero(ch)
                       for ch in group):
                    _killed_classes[cls] = True
                    changed = True
                    break


def _cyclic_monomial_dies(edges: tuple) -> bool:
    form = _first_occurrence_form(edges)
    if form in _killed_classes:
        return _killed_classes[form]
    _close_and_mark([form])
    return _killed_classes.get(form, False)


@lru_cache(maxsize=None)
def _assert_cyclic_block_dies(size: int, edges: int) -> None:
    """Every connected spanning graph on {1..size} with this many edges has a
    cycle (incidence count) and gets rewritten to zero; failure would
    falsify the spanning theorem and raises loudly."""
    triples = list(combinations(range(size), 3))
    masks = [sum(1 << v for v in t) for t in triples]
    full = (1 << size) - 1
    forms = set()
    for combo in combinations(range(len(triples)), edges):
        m = 0
        for idx in combo:
            m |= masks[idx]
        if m != full:
            continue
        chosen = [triples[idx] for idx in combo]
        if len(forests.partition_of_edges(chosen, range(size))) != 1:
            continue
        forms.add(_first_occurrence_form(chosen))
    _close_and_mark(sorted(forms))
    for form in sorted(forms):
        if not _killed_classes.get(form, False):
            raise AssertionError(
                f"connected block ({size},{edges}): monomial {form} "
                "did not rewrite to zero")


def _component_type_assignments(total_labels: int, degree: int):
    """Multisets of (size, edges) pairs for the non-singleton components of a
    degree-d monomial: size >= 3, edges >= ceil((size-1)/2) forced by
    connectivity... (actually edges >= (size-1)/2, at least 1), sum of edges
    = degree, sum of sizes <= total_labels.  Yields sorted tuples of pairs."""
    pairs = []
    for s in range(3, total_labels + 1):
        min_e = (s - 1 + 1) // 2  # connected spanning needs >= ceil((s-1)/2)
        for e in range(max(1, min_e), degree + 1):
            if 3 * e >= s:  # e edges cover at most 3e vertices
                pairs.append((s, e))

    out = []

    def rec(start: int, labels_left: int, degree_left: int, acc: list):
        if degree_left == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(pairs)):
            s, e = pairs[idx]
            if s <= labels_left and e <= degree_left:
                acc.append((s, e))
                rec(idx, labels_left - s, degree_left - e, acc)
                acc.pop()

    rec(0, total_labels, degree, [])
    return out


def _partition_count(total: int, sizes: list[int], mults: dict) -> int:
    used = sum(sizes)
    num = factorial(total)
    den = factorial(total - used)
    for s in sizes:
        den *= factorial(s)
    for m in mults.values():
        den *= factorial(m)
    return num // den


def assembled_dimension(variant: str, n_labels: int, degree: int) -> int:
    """Degree-d quotient dimension on n labels, assembled over the partition
    grading from cached connected-block dimensions."""
    if degree == 0:
        return 1
    total = 0
    for assignment in _component_type_assignments(n_labels, degree):
        dims = 1
        for s, e in assignment:
            dims *= block_dimension(variant, s, e)
            if dims == 0:
                break
        if dims == 0:
            continue
        mults: dict = {}
        for pair in assignment:
            mults[pair] = mults.get(pair, 0) + 1
        total += dims * _partition_count(n_labels, [s for s, _ in assignment], mults)
    return total


# ---------------------------------------------------------------------------
# quad presentation: linear elimination and span comparison


@lru_cache(maxsize=None)
def _quad_linear_data(n: int):
    """(substitution, divisors): substitution maps each quad generator id to
    a dict {tri gid: coeff} expressing it in the images of the 3-index
    generators after eliminating the 5-term linear relations; the divisor
    list certifies the relation lattice is a direct summand (all ones)."""
    quad = Presentation("quad", range(1, n + 1))
    tri = Presentation("tri", range(1, n))
    rows = []
    for r in quad.linear_relations():
        rows.append({g[0]: int(c) for g, c in r.terms.items()})
    _, divisors = smith_divisors(rows)
    subst: dict[int, dict[int, int]] = {}
    for gid, tup in enumerate(quad.universe.tuples):
        if n in tup:
            tri_gid, sign = tri.universe.gen_id(tuple(x for x in tup if x != n))
            subst[gid] = {tri_gid: sign}
    for gid, tup in enumerate(quad.universe.tuples):
        if n in tup:
            continue
        a, b, c, d = tup
        expr: dict[int, int] = {}
        for w in ((b, c, d, n), (c, d, n, a), (d, n, a, b), (n, a, b, c)):
            got = quad.universe.gen_id(w)
            assert got is not None
            g2, sign = got
            for tg, s2 in subst[g2].items():
                v = expr.get(tg, 0) - sign * s2
                if v:
                    expr[tg] = v
                else:
                    expr.pop(tg, None)
        subst[gid] = expr
    return subst, tuple(divisors)


def _substitute_quad_poly(p: SkewPoly, subst, ring=ZZ) -> SkewPoly:
    out = SkewPoly.zero(ring)
    for m, c in p.terms.items():
        acc = SkewPoly.one(ring).scale(c)
        for gid in m:
            factor = SkewPoly(ring, {(tg,): v for tg, v in subst[gid].items()})
            acc = acc * factor
        out = out + acc
    return out


@lru_cache(maxsize=None)
def quad_tri_span_match(n: int) -> bool:
    """The substituted quad quadratic relations and the tri relations span
    the same degree-2 subspace (over Q); with the unimodularity certificate
    this transports every degree >= 2 dimension between the presentations."""
    if n < 5:
        return True  # no quadratic relations on either side below five labels
    subst, divisors = _quad_linear_data(n)
    if any(d != 1 for d in divisors):
        return False
    quad = Presentation("quad", range(1, n + 1))
    tri = Presentation("tri", range(1, n))
    left = FieldEchelon(None)
    for r in quad.quadratic_relations():
        q = _substitute_quad_poly(r, subst)
        left.add({_colkey(m): c for m, c in q.terms.items()})
    right = FieldEchelon(None)
    for r in tri.relations():
        right.add({_colkey(m): c for m, c in r.terms.items()})
    return left.same_span(right)


def _colkey(monomial: tuple[int, ...]) -> int:
    # pack a short gid tuple into one int column index (gids < 2**16)
    key = 0
    for g in monomial:
        key = (key << 16) | (g + 1)
    return key


# ---------------------------------------------------------------------------
# Hilbert polynomials and invariants


def hilbert_polynomial(p: Presentation, check_formula: bool = True) -> list[int]:
    """Quotient dimensions by degree, as a coefficient list.

    tri/twisted run on the partition-blocked slices; quad eliminates its
    linear relations first (degree 1 directly, higher degrees through the
    verified span match with the tri presentation).
    """
    from .series import odd_square_product_poly

    if p.variant in ("tri", "twisted"):
        m = p.n
        expected = odd_square_product_poly(m)
        top = max(expected)
        dims = [assembled_dimension(p.variant, m, d) for d in range(top + 2)]
        while dims and dims[-1] == 0:
            dims.pop()
    else:
        n = p.n
        if n < 3:
            raise ValueError("quad presentation needs at least 3 labels")
        expected = odd_square_product_poly(n - 1)
        lin = FieldEchelon(None)
        for r in p.linear_relations():
            lin.add({g[0]: c for g, c in r.terms.items()})
        dims = [1, len(p.universe) - lin.rank]
        if not quad_tri_span_match(n):
            raise AssertionError("quad/tri relation spans differ in degree 2")
        top = max(expected)
        for d in range(2, top + 2):
            dims.append(assembled_dimension("tri", n - 1, d))
        while dims and dims[-1] == 0:
            dims.pop()
    if check_formula:
        want = [expected.get(d, 0) for d in range(max(expected) + 1)]
        if dims != want:
            raise AssertionError(f"Hilbert mismatch: computed {dims}, formula {want}")
    return dims


def euler_characteristic_value(dims: list[int]) -> int:
    return sum((-1) ** d * c for d, c in enumerate(dims))


def double_factorial(k: int) -> int:
    if k <= 0:
        return 1
    out = 1
    while k > 0:
        out *= k
        k -= 2
    return out


def expected_euler_characteristic(n: int) -> int:
    """0 for even n; (-1)^((n+1)/2) (n-2)!! (n-4)!! for odd n (the quad
    presentation on n labels)."""
    if n % 2 == 0:
        return 0
    return (-1) ** ((n + 1) // 2) * double_factorial(n - 2) * double_factorial(n - 4)


# ---------------------------------------------------------------------------
# isomorphism between the quad and tri presentations


def tri_to_quad(x: SkewPoly, tri: Presentation, quad: Presentation) -> SkewPoly:
    """Three-index generator (i,j,k) on labels {1..n-1} maps to the four-index
    generator (i,j,k,n)."""
    n = quad.n
    out = SkewPoly.zero(x.ring)
    for m, c in x.terms.items():
        acc = SkewPoly.one(x.ring).scale(c)
        for gid in m:
            tup = tri.universe.label_tuple(gid)
            acc = acc * quad.term(tup + (n,), ring=x.ring)
        out = out + acc
    return out


def quad_to_tri(x: SkewPoly, quad: Presentation, tri: Presentation) -> SkewPoly:
    """Inverse on generators: solve the unique 5-term linear relation through
    the top label for generators not containing it."""
    subst, _ = _quad_linear_data(quad.n)
    ring = x.ring
    out = SkewPoly.zero(ring)
    for m, c in x.terms.items():
        acc = SkewPoly.one(ring).scale(c)
        for gid in m:
            acc = acc * SkewPoly(ring, {(tg,): v for tg, v in subst[gid].items()})
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# certified forest normal forms


@lru_cache(maxsize=None)
def _degree_slice(variant: str, labels: tuple, degree: int, ring_tag: str):
    ring = {"Q": QQ, "GF2": GF2, "Z": ZZ}[ring_tag]
    p = Presentation(variant, labels)
    rels = [r.convert(ring) for r in p.relations()]
    return ideal_slice(rels, degree, p.universe, ring)


def degree_slice(p: Presentation, degree: int, ring=QQ):
    return _degree_slice(p.variant, p.labels, degree, ring.tag)


@lru_cache(maxsize=None)
def _certified_basis(variant: str, labels: tuple, degree: int):
    """Certify that basic-forest monomials are a quotient basis in this
    degree: their normal forms are independent and counted by the quotient
    dimension.  Returns (basic monomials, their reduced forms, slice, and a
    reusable coordinate solver)."""
    from .linalg import BasisSolver

    p = Presentation(variant, labels)
    sl = _degree_slice(variant, labels, degree, "Q")
    basics = []
    for f in forests.enumerate_basic_forests(labels, degree):
        gids = []
        for e in f.sorted_edges:
            gid, sign = p.universe.gen_id(e)
            assert sign == 1
            gids.append(gid)
        basics.append((f, tuple(sorted(gids))))
    basics.sort(key=lambda t: t[1])
    reduced = []
    ech = FieldEchelon(None)
    for _, m in basics:
        nf = sl.reduce(SkewPoly(QQ, {m: 1}))
        reduced.append(nf)
        if not ech.add({sl.col_of[mm]: c for mm, c in nf.terms.items()}):
            raise AssertionError(
                f"basic monomials dependent modulo the ideal ({variant}, "
                f"{len(labels)} labels, degree {degree})")
    if len(basics) != sl.quotient_dimension():
        raise AssertionError(
            f"basic count {len(basics)} != quotient dimension "
            f"{sl.quotient_dimension()} ({variant}, {len(labels)} labels, degree {degree})")
    solver = BasisSolver(
        [{sl.col_of[mm]: c for mm, c in nf.terms.items()} for nf in reduced])
    return basics, reduced, sl, solver


def forest_normal_form(x: SkewPoly, p: Presentation) -> dict[TriangleGraph, object]:
    """Coordinates of x over the certified basic-forest monomial basis."""
    if p.variant == "quad":
        raise ValueError("forest normal forms apply to 3-index variants")
    if not x:
        return {}
    if not x.is_homogeneous():
        out: dict = {}
        for d in sorted(x.degrees()):
            out.update(forest_normal_form(x.homogeneous_part(d), p))
        return out
    d = x.degree()
    if d == 0:
        return {TriangleGraph.make(p.labels, []): x.terms[()]}
    basics, _reduced, sl, solver = _certified_basis(p.variant, p.labels, d)
    target = sl.reduce(x.convert(QQ))
    vec = {sl.col_of[m]: c for m, c in target.terms.items()}
    coords = solver.coordinates(vec)
    if coords is None:
        raise AssertionError("normal form escaped the basic-forest span")
    out = {}
    for (f, _), c in zip(basics, coords):
        if c:
            out[f] = c
    return out


# ---------------------------------------------------------------------------
# the Whitney differential on forest monomials


def whitney_differential(x: SkewPoly, p: Presentation) -> SkewPoly:
    """Alternating factor-removal differential on forest monomials:
    d(g_1 ... g_l) = sum_i (-1)^(i-1) g_1 ... g_i-hat ... g_l."""
    if p.variant != "twisted":
        raise ValueError("the Whitney differential lives on the twisted variant")
    out = SkewPoly.zero(x.ring)
    ring = x.ring
    for m, c in x.terms.items():
        for i in range(len(m)):
            nm = m[:i] + m[i + 1:]
            term = SkewPoly(ring, {nm: ring.mul(c, (-1) ** (i & 1))})
            out = out + term
    return out


def basic_forest_complex_homology(labels) -> dict[int, int]:
    """Ranks of the homology of (basic forests, Whitney differential),
    including the empty forest in degree 0."""
    labels = tuple(sorted(labels))
    p = Presentation("twisted", labels)
    max_e = (len(labels) - 1) // 2 if len(labels) % 2 else (len(labels) - 2) // 2
    bases: list[list] = []
    index: list[dict] = []
    for e in range(max_e + 1):
        fs = forests.enumerate_basic_forests(labels, e)
        monos = []
        for f in fs:
            gids = tuple(sorted(p.universe.gen_id(ed)[0] for ed in f.sorted_edges))
            monos.append(gids)
        monos.sort()
        bases.append(monos)
        index.append({m: i for i, m in enumerate(monos)})
    boundaries: dict[int, list[dict]] = {}
    for e in range(1, max_e + 1):
        rows = []
        for m in bases[e]:
            img = whitney_differential(SkewPoly(QQ, {m: 1}), p)
            nf = forest_normal_form(img, p)
            row = {}
            for f, c in nf.items():
                gids = tuple(sorted(p.universe.gen_id(ed)[0] for ed in f.sorted_edges))
                row[index[e - 1][gids]] = c
            rows.append(row)
        boundaries[e] = rows
    ranks = {}
    from .linalg import field_rank
    rk = {e: field_rank(boundaries[e]) for e in boundaries}
    for e in range(max_e + 1):
        dim = len(bases[e])
        ranks[e] = dim - rk.get(e, 0) - rk.get(e + 1, 0)
    return ranks


# ---------------------------------------------------------------------------
# partition-graded dimensions


def partition_component_dims(p: Presentation) -> dict:
    """Per-partition dimensions of the basic-forest basis, with the block
    product cross-check: parts of even size force zero, and a partition's
    dimension is the product over parts of the connected-block dimensions."""
    if p.variant == "quad":
        raise ValueError("partition grading lives on 3-index variants")
    by_partition: dict[tuple, list] = {}
    max_e = len(p.labels) // 2
    for e in range(0, max_e + 1):
        for f in forests.enumerate_basic_forests(p.labels, e):
            by_partition.setdefault(forests.components(f), []).append(f)
    out = {}
    for part, fs in sorted(by_partition.items()):
        prod = 1
        for block in part:
            s = len(block)
            if s == 1:
                continue
            e = (s - 1) // 2 if s % 2 else None
            if e is None:
                prod = 0
                break
            prod *= block_dimension(p.variant, s, e)
        if len(fs) != prod:
            raise AssertionError(f"partition {part}: {len(fs)} basic forests, "
                                 f"block product {prod}")
        out[part] = {"dimension": prod, "basis": fs}
    return out
