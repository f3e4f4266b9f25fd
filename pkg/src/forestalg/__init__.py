"""forestalg: exact computational algebra for forest-indexed cohomology rings.

Everything is exact (integers, rationals, F_2, Z/4); nothing is floating
point.  The package constructs and cross-validates:

- skew-commutative rings on three- and four-index odd generators, with
  certified basic-forest monomial bases and partition-blocked Hilbert
  series (``lambda_alg``, ``skewpoly``, ``forests``);
- the poset of odd set partitions, its reduced and Whitney homology over Z,
  and the tree-to-cycle map (``poset_homology``);
- the divisor-class ring of the complex moduli space in inclusion-sum
  generators, with laminar canonical monomials, grevlex rewriting, and the
  Bockstein differential mod 2 (``keel``);
- the cooperad structure maps, the odd ternary operation, the 10-term
  identity, and the triangular pairing certificate (``operad``);
- the quadratic dual algebra and its graded Lie dimensions
  (``quadratic_dual``);
- exact truncated bivariate generating functions tying all the dimension
  counts together (``series``).

The command-line entry point ``forestalg`` exposes each verification; the
``all-acceptance`` subcommand runs the full acceptance suite.
"""

__version__ = "0.1.0"

__all__ = [
    "acceptance", "cli", "forests", "keel", "lambda_alg", "linalg", "operad",
    "poset_homology", "quadratic_dual", "rings", "series", "skewpoly",
]
