"""Branch and edge numberings over the residue set {0, ..., p-1}.

Residues are stored as plain Python ints with the identity as the
bijection onto the field; the involution sends 0 to 0 and m to p - m
otherwise, so it realizes negation mod p.

Two families matter here.  A *branch numbering* assigns a residue to
every branch so that the two slots of each edge carry involution
partners; it is *strict* when every value is nonzero and each vertex's
three incident branch values sum to exactly p + 1.  A *balanced edge
numbering* assigns one residue per edge such that at every vertex the
three incident edge values (a self-loop counting twice) satisfy the
triangle condition |m2 - m3| <= m1 <= m2 + m3 together with the bound
m1 + m2 + m3 <= p - 2; the displayed one-sided form is equivalent to
the fully symmetric one, so the check does not depend on the order of
the three values.

Exponent vectors (for branch numberings) and radii vectors (for edge
numberings) read the values on the open branches of the legs, in
marking order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .semigraph import Branch, MarkedSemiGraph, StructureError

ExponentVector = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p) -> int:
    """Validate p as an odd prime > 2; returns p."""
    if not isinstance(p, int) or isinstance(p, bool) or p <= 2 or not _is_prime(p):
        raise ValueError(f"p must be a prime greater than 2, got {p!r}")
    return p


def _check_residue(p: int, m) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or not 0 <= m < p:
        raise ValueError(f"value {m!r} is not a residue in 0..{p - 1}")
    return m


def inv(p: int, m: int) -> int:
    """The involution fixing 0 and swapping m with p - m (negation mod p)."""
    _check_residue(p, m)
    return 0 if m == 0 else p - m


def balanced_triple(p: int, m1: int, m2: int, m3: int) -> bool:
    """Vertex condition for balanced numberings; symmetric in its arguments."""
    return abs(m2 - m3) <= m1 <= m2 + m3 and m1 + m2 + m3 <= p - 2


@dataclass(frozen=True)
class BranchNumbering:
    """A residue per branch, involution-paired across each edge.

    Keys of ``values`` are (edge id, slot) pairs; both slots of every
    mentioned edge must be present.  Not hashable (the mapping field).
    """

    p: int
    values: Mapping[Branch, int]

    def __post_init__(self):
        check_prime(self.p)
        vals = dict(self.values)
        object.__setattr__(self, "values", vals)
        slots: dict[str, dict[int, int]] = {}
        for key, m in vals.items():
            if (
                not isinstance(key, tuple)
                or len(key) != 2
                or not isinstance(key[0], str)
                or key[1] not in (0, 1)
            ):
                raise ValueError(f"bad branch key {key!r}")
            _check_residue(self.p, m)
            slots.setdefault(key[0], {})[key[1]] = m
        for edge_id, pair in slots.items():
            if set(pair) != {0, 1}:
                raise ValueError(f"edge {edge_id!r} is missing a branch slot")
            if pair[1] != inv(self.p, pair[0]):
                raise ValueError(
                    f"edge {edge_id!r} breaks the involution: "
                    f"{pair[0]} paired with {pair[1]}"
                )


@dataclass(frozen=True)
class EdgeNumbering:
    """A residue per edge.  Not hashable (the mapping field)."""

    p: int
    values: Mapping[str, int]

    def __post_init__(self):
        check_prime(self.p)
        vals = dict(self.values)
        object.__setattr__(self, "values", vals)
        for edge_id, m in vals.items():
            if not isinstance(edge_id, str):
                raise ValueError(f"bad edge key {edge_id!r}")
            _check_residue(self.p, m)


def _branch_value(a: BranchNumbering, b: Branch):
    try:
        return a.values[b]
    except KeyError:
        raise ValueError(f"numbering has no value for branch {b!r}") from None


def is_branch_numbering(m: MarkedSemiGraph, p: int, assignment: Mapping[Branch, int]) -> bool:
    """True iff the candidate assignment pairs every edge's slots under the involution.

    The assignment must cover all branches of m; values outside
    0..p-1 simply fail the test.
    """
    check_prime(p)
    for e in m.graph.edges:
        try:
            x, y = assignment[(e.id, 0)], assignment[(e.id, 1)]
        except KeyError as missing:
            raise ValueError(f"assignment misses branch {missing.args[0]!r}") from None
        if not (0 <= x < p and 0 <= y < p):
            return False
        if y != (0 if x == 0 else p - x):
            return False
    return True


def is_strict(m: MarkedSemiGraph, a: BranchNumbering) -> bool:
    """All branch values nonzero and every vertex sum equal to p + 1."""
    g = m.graph
    for e in g.edges:
        if _branch_value(a, (e.id, 0)) == 0 or _branch_value(a, (e.id, 1)) == 0:
            return False
    for v in g.vertices:
        if sum(_branch_value(a, b) for b in g.branches_at[v]) != a.p + 1:
            return False
    return True


def is_balanced(m: MarkedSemiGraph, a: EdgeNumbering) -> bool:
    """The balanced vertex condition at every vertex (self-loops count twice)."""
    g = m.graph
    for e in g.edges:
        if e.id not in a.values:
            raise ValueError(f"numbering has no value for edge {e.id!r}")
    for v in g.vertices:
        ms = [a.values[b[0]] for b in g.branches_at[v]]
        if not balanced_triple(a.p, *ms):
            return False
    return True


def exponent_of(m: MarkedSemiGraph, a: BranchNumbering) -> ExponentVector:
    """Values on the open branches, in marking order."""
    return tuple(_branch_value(a, b) for b in m.marked_branches())


def radii_of(m: MarkedSemiGraph, a: EdgeNumbering) -> ExponentVector:
    """Leg edge values in marking order (open branches carry the edge value)."""
    out = []
    for edge_id in m.marking:
        if edge_id not in a.values:
            raise ValueError(f"numbering has no value for edge {edge_id!r}")
        out.append(a.values[edge_id])
    return tuple(out)


# ---------------------------------------------------------------------------
# serialization
#
# {"p": 11, "kind": "balanced", "edge_values": {"e1": 4, ...}}
# {"p": 11, "kind": "strict", "branch_values": {"e1.0": 1, "e1.1": 10, ...}}
#
# Branch keys are "<edge id>.<slot>".  Canonical output orders values by
# the graph's edge declaration order (slot 0 before slot 1), one line
# per numbering, so streams re-serialize byte-identically.

def numbering_to_json_obj(m: MarkedSemiGraph, a: BranchNumbering | EdgeNumbering) -> dict:
    if isinstance(a, EdgeNumbering):
        values = {}
        for e in m.graph.edges:
            if e.id not in a.values:
                raise ValueError(f"numbering has no value for edge {e.id!r}")
            values[e.id] = a.values[e.id]
        return {"p": a.p, "kind": "balanced", "edge_values": values}
    values = {}
    for e in m.graph.edges:
        for slot in (0, 1):
            values[f"{e.id}.{slot}"] = _branch_value(a, (e.id, slot))
    return {"p": a.p, "kind": "strict", "branch_values": values}


def numbering_from_json_obj(obj) -> BranchNumbering | EdgeNumbering:
    if not isinstance(obj, dict):
        raise StructureError("numbering document must be a JSON object")
    p = obj.get("p")
    if not isinstance(p, int):
        raise StructureError("numbering document needs an integer p")
    kind = obj.get("kind")
    if kind == "balanced":
        values = obj.get("edge_values")
        if not isinstance(values, dict):
            raise StructureError("balanced numbering needs an edge_values object")
        return EdgeNumbering(p, values)
    if kind == "strict":
        values = obj.get("branch_values")
        if not isinstance(values, dict):
            raise StructureError("strict numbering needs a branch_values object")
        parsed: dict[Branch, int] = {}
        for key, m in values.items():
            edge_id, _, slot = key.rpartition(".")
            if not edge_id or slot not in ("0", "1"):
                raise StructureError(f"bad branch key {key!r}")
            parsed[(edge_id, int(slot))] = m
        return BranchNumbering(p, parsed)
    raise StructureError(f"unknown numbering kind {kind!r}")


def dumps_numbering(m: MarkedSemiGraph, a: BranchNumbering | EdgeNumbering) -> str:
    return json.dumps(numbering_to_json_obj(m, a))


def loads_numbering(text: str) -> BranchNumbering | EdgeNumbering:
    return numbering_from_json_obj(json.loads(text))
