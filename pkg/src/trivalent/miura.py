"""The combinatorial Miura transformation and its tripod-local census.

The value map sends a residue m to (p - m - 1)/2 when m is even and to
(m - 1)/2 when m is odd; both are integers for odd p and land in
0..(p-1)/2.  On an edge of a strict branch numbering the two slots
carry m and p - m, one even and one odd, and both map to the same
value, so the transformation of a strict numbering is a well defined
edge numbering.  The transform computes both slots' values and checks
the agreement at runtime instead of trusting one side.

That the image always satisfies the balanced vertex condition is not
assumed anywhere in this module; it is exercised by the test suite and
by the verification layer on every enumerated numbering.

``tripod_strict_set`` and ``check_pp004`` work on the one-vertex,
three-leg graph, where a branch numbering is identified with the triple
of values on the vertex-side branches.  The census collects all triples
whose sum is 1 mod p, and the checked equivalence is: such a triple is
strict (nonzero entries summing to exactly p + 1) if and only if its
componentwise image satisfies the balanced triple condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .numbering import (
    BranchNumbering,
    EdgeNumbering,
    _check_residue,
    balanced_triple,
    check_prime,
    is_strict,
)
from .semigraph import MarkedSemiGraph


def mu_value(p: int, m: int) -> int:
    _check_residue(p, m)
    return (p - m - 1) // 2 if m % 2 == 0 else (m - 1) // 2


def miura_transform(m: MarkedSemiGraph, a: BranchNumbering) -> EdgeNumbering:
    """Image of a strict branch numbering, one value per edge.

    Raises ValueError when a is not strict on m.  If a has exponent
    vector e then the image has radii equal to the componentwise
    mu_value of e.
    """
    if not is_strict(m, a):
        raise ValueError("miura_transform requires a strict branch numbering")
    out = {}
    for e in m.graph.edges:
        v0 = mu_value(a.p, a.values[(e.id, 0)])
        v1 = mu_value(a.p, a.values[(e.id, 1)])
        if v0 != v1:
            raise RuntimeError(
                f"edge {e.id!r}: branch images disagree ({v0} vs {v1})"
            )
        out[e.id] = v0
    return EdgeNumbering(a.p, out)


def tripod_strict_set(p: int) -> list[tuple[tuple[int, int, int], bool]]:
    """All triples in {0..p-1}^3 with sum 1 mod p, flagged strict or not."""
    check_prime(p)
    out = []
    for triple in itertools.product(range(p), repeat=3):
        if sum(triple) % p != 1:
            continue
        strict = all(triple) and sum(triple) == p + 1
        out.append((triple, strict))
    return out


@dataclass(frozen=True)
class Pp004Result:
    holds: bool
    counterexamples: tuple


def check_pp004(p: int) -> Pp004Result:
    """Strictness matches balancedness of the image across the whole census."""
    bad = []
    for triple, strict in tripod_strict_set(p):
        image = tuple(mu_value(p, x) for x in triple)
        if strict != balanced_triple(p, *image):
            bad.append({"triple": triple, "image": image, "strict": strict})
    return Pp004Result(not bad, tuple(bad))
