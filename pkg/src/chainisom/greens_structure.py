"""Green's preorders and equivalences, structural predicates, and quotients.

Two independent routes to the Green's relations are kept side by side:

* the criterion route works directly on elements (domain containment for
  the R order, image containment for L, gap-signature matching for D);
* the oracle route works on a finished multiplication table using nothing
  but principal ideals, with an implicit external identity adjoined so the
  same code is correct on sub-tables and quotients that lack one.

The test suite checks that both routes induce identical partitions.

Tables are immutable after construction and every predicate here only
reads them, so concurrent use is safe.  Witness searches scan elements in
index order, so a reported violation is always the lexicographically first
one and reruns are reproducible.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .chain_maps import PartialInjection, compose, gap_signature, to_json
from .errors import (
    DomainError,
    LimitExceeded,
    MismatchedChain,
    NoZero,
    NotAssociative,
    NotClosed,
)
from .isometry_families import DEFAULT_ENUMERATION_CAP, Family, enumerate_fast

# Tables are dense k*k index matrices; beyond ~2000 elements they stop
# being "desk scale" (the 9-chain already has 2950 isometries).
TABLE_ELEMENT_CAP = 2000

RELATIONS = ("R", "L", "H", "D")


class _SentinelElement:
    """Opaque table label: the adjoined quotient zero or external identity."""

    __slots__ = ("label",)

    def __init__(self, label: str):
        self.label = label

    def __repr__(self):
        return f"<{self.label}>"


ADJOINED_ZERO = _SentinelElement("0")
ADJOINED_IDENTITY = _SentinelElement("1")


def element_text(el) -> str:
    """Display form of a table element (matrix notation, or the bare label)."""
    if isinstance(el, _SentinelElement):
        return el.label
    return str(el)


def element_json(el) -> dict:
    if isinstance(el, _SentinelElement):
        return {"label": el.label}
    return to_json(el)


# ---------------------------------------------------------------------------
# Element-level preorders and the D relation

def _same_chain(a: PartialInjection, b: PartialInjection) -> None:
    if a.n != b.n:
        raise MismatchedChain(f"maps live on chains of size {a.n} and {b.n}")


def r_le(a: PartialInjection, b: PartialInjection) -> bool:
    """R-order: a is a right multiple of b, i.e. Dom a is contained in Dom b."""
    _same_chain(a, b)
    return set(a.domain) <= set(b.domain)


def l_le(a: PartialInjection, b: PartialInjection) -> bool:
    """L-order: Im a is contained in Im b."""
    _same_chain(a, b)
    return set(a.image) <= set(b.image)


def h_le(a: PartialInjection, b: PartialInjection) -> bool:
    _same_chain(a, b)
    return set(a.domain) <= set(b.domain) and set(a.image) <= set(b.image)


def _signature_targets(sig, family: Family) -> set:
    if family is Family.DP:
        return {sig.diffs, sig.diffs[::-1]}
    return {sig.diffs}


def d_le(a: PartialInjection, b: PartialInjection, family: Family) -> bool:
    """D-order: Dom a embeds distance-preservingly into Dom b.

    For the order-preserving family only translated copies count; for the
    full family reflected copies do too.  The search is a plain scan over
    the |Dom b| choose |Dom a| candidate subsets, which is the point: this
    is the slow verification route, with signature comparison
    (:func:`d_related`) as the fast one.
    """
    _same_chain(a, b)
    k = a.height
    if k > b.height:
        return False
    targets = _signature_targets(gap_signature(a.domain), family)
    return any(
        gap_signature(sub).diffs in targets for sub in combinations(b.domain, k)
    )


def d_related(a: PartialInjection, b: PartialInjection, family: Family) -> bool:
    """Mutual D-order via signatures: equal heights and matching domain type."""
    _same_chain(a, b)
    if a.height != b.height:
        return False
    return gap_signature(b.domain).diffs in _signature_targets(
        gap_signature(a.domain), family
    )


# ---------------------------------------------------------------------------
# Partitions

@dataclass(frozen=True)
class GreensClasses:
    """A partition of element indices under one of R, L, H, D.

    Blocks are sorted internally and listed by their smallest member, so
    two partitions are equal exactly when the objects compare equal.
    """

    relation: str
    partition: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = [i for block in self.partition for i in block]
        if len(seen) != len(set(seen)):
            raise DomainError("partition blocks overlap")

    def block_sizes(self) -> list[int]:
        return [len(block) for block in self.partition]


def _norm_relation(relation: str) -> str:
    rel = str(relation).upper()
    if rel not in RELATIONS:
        raise DomainError(f"unknown Green's relation {relation!r}")
    return rel


def _partition_from_keys(keys) -> tuple[tuple[int, ...], ...]:
    blocks = defaultdict(list)
    for i, key in enumerate(keys):
        blocks[key].append(i)
    return tuple(
        tuple(block) for block in sorted(blocks.values(), key=lambda b: b[0])
    )


def greens_classes_criterion(
    elements, family: Family, relation: str
) -> GreensClasses:
    """Partition by the direct structural criteria (no table needed)."""
    rel = _norm_relation(relation)
    elements = list(elements)
    if any(el.n != elements[0].n for el in elements):
        raise MismatchedChain("all elements must live on the same chain")
    if rel == "R":
        keys = [el.domain for el in elements]
    elif rel == "L":
        keys = [el.image for el in elements]
    elif rel == "H":
        keys = [(el.domain, el.image) for el in elements]
    else:
        keys = []
        for el in elements:
            sig = gap_signature(el.domain).diffs
            if family is Family.DP:
                sig = min(sig, sig[::-1])
            keys.append((el.height, sig))
    return GreensClasses(rel, _partition_from_keys(keys))


# ---------------------------------------------------------------------------
# Multiplication tables

class SemigroupTable:
    """An indexed element list with a dense multiplication table.

    ``zero_index`` marks the absorbing element when there is one (the empty
    map, or an adjoined quotient zero); ``identity_adjoined`` records that
    a synthetic identity label was appended during construction.
    """

    def __init__(self, elements, mult, zero_index=None, identity_adjoined=False):
        self.elements = tuple(elements)
        self.mult = tuple(tuple(row) for row in mult)
        self.zero_index = zero_index
        self.identity_adjoined = identity_adjoined
        k = len(self.elements)
        if len(self.mult) != k or any(len(row) != k for row in self.mult):
            raise DomainError("multiplication table must be square over the elements")
        if zero_index is not None:
            z = zero_index
            if any(
                self.mult[z][i] != z or self.mult[i][z] != z for i in range(k)
            ):
                raise DomainError("marked zero is not absorbing")
        self._associative = None

    def __len__(self) -> int:
        return len(self.elements)

    def product(self, i: int, j: int) -> int:
        return self.mult[i][j]

    def is_associative(self) -> bool:
        """Exhaustive check, cached; k^3 steps on first use."""
        if self._associative is None:
            self._associative = self._check_associative()
        return self._associative

    def _check_associative(self) -> bool:
        mult = self.mult
        for row_a in mult:
            for b, row_b in enumerate(mult):
                if mult[row_a[b]] != tuple(map(row_a.__getitem__, row_b)):
                    return False
        return True


def build_table(elements, adjoin_identity: bool = False) -> SemigroupTable:
    """Multiply out a composition-closed element set.

    Raises :class:`NotClosed` (carrying the offending factor pair) when a
    product escapes the set, and :class:`LimitExceeded` beyond desk scale.
    """
    elements = list(elements)
    if len(elements) > TABLE_ELEMENT_CAP:
        raise LimitExceeded(
            f"table over {len(elements)} elements exceeds the cap {TABLE_ELEMENT_CAP}"
        )
    index = {el: i for i, el in enumerate(elements)}
    if len(index) != len(elements):
        raise DomainError("duplicate elements")
    if elements and any(el.n != elements[0].n for el in elements):
        raise MismatchedChain("all elements must live on the same chain")
    mult = []
    for a in elements:
        row = []
        for b in elements:
            c = compose(a, b)
            i = index.get(c)
            if i is None:
                raise NotClosed(
                    f"product {element_text(a)} * {element_text(b)} = "
                    f"{element_text(c)} is outside the element set",
                    pair=(a, b),
                )
            row.append(i)
        mult.append(row)
    zero_index = index.get(PartialInjection(elements[0].n, ())) if elements else None
    if adjoin_identity:
        one = len(elements)
        for i, row in enumerate(mult):
            row.append(i)
        mult.append(list(range(one + 1)))
        elements.append(ADJOINED_IDENTITY)
    return SemigroupTable(elements, mult, zero_index, adjoin_identity)


def build_family_table(
    n: int, family: Family, cap: int = DEFAULT_ENUMERATION_CAP
) -> SemigroupTable:
    """Table of the whole family on the chain of size ``n``."""
    return build_table(list(enumerate_fast(n, family, cap=cap)))


def _principal_right_sets(table: SemigroupTable):
    # aS^1 = {a} | aS; including a itself stands in for the external identity.
    return [frozenset(row) | {a} for a, row in enumerate(table.mult)]


def _principal_left_sets(table: SemigroupTable):
    k = len(table)
    return [
        frozenset(table.mult[s][a] for s in range(k)) | {a} for a in range(k)
    ]


def _class_ids(keys) -> list[int]:
    ids: dict = {}
    out = []
    for key in keys:
        out.append(ids.setdefault(key, len(ids)))
    return out


def d_compositions_commute(table: SemigroupTable) -> bool:
    """Check that composing R after L and L after R relate the same pairs.

    True in every finite semigroup; exposed so the tests can confirm the
    oracle's D construction is well defined on these tables.
    """
    r_id = _class_ids(_principal_right_sets(table))
    l_id = _class_ids(_principal_left_sets(table))
    present = {(r, l) for r, l in zip(r_id, l_id)}
    k = len(table)
    return all(
        ((r_id[a], l_id[b]) in present) == ((r_id[b], l_id[a]) in present)
        for a in range(k)
        for b in range(k)
    )


def greens_classes_oracle(table: SemigroupTable, relation: str) -> GreensClasses:
    """Partition by principal ideals of the multiplication table alone."""
    rel = _norm_relation(relation)
    if not table.is_associative():
        raise NotAssociative("oracle requires an associative table")
    if rel in ("R", "L"):
        sets = (
            _principal_right_sets(table) if rel == "R" else _principal_left_sets(table)
        )
        return GreensClasses(rel, _partition_from_keys(sets))
    right = _principal_right_sets(table)
    left = _principal_left_sets(table)
    if rel == "H":
        return GreensClasses(rel, _partition_from_keys(list(zip(right, left))))
    # D as the composite of R and L.  The two compositions agree (checked),
    # so grouping jointly by reachable (R-class, L-class) pairs partitions
    # correctly: two elements are D-related when some element shares its
    # R-class with one and its L-class with the other.
    if not d_compositions_commute(table):
        raise NotAssociative("R and L do not compose symmetrically")
    r_id = _class_ids(right)
    l_id = _class_ids(left)
    parent = list(range(len(table)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    first_r: dict = {}
    first_l: dict = {}
    for a in range(len(table)):
        union(a, first_r.setdefault(r_id[a], a))
        union(a, first_l.setdefault(l_id[a], a))
    return GreensClasses("D", _partition_from_keys([find(a) for a in range(len(table))]))


# ---------------------------------------------------------------------------
# Structural predicates

def idempotents(table: SemigroupTable) -> frozenset[int]:
    return frozenset(i for i in range(len(table)) if table.mult[i][i] == i)


def is_inverse(table: SemigroupTable) -> bool:
    """Every element regular, and idempotents commute."""
    mult = table.mult
    k = len(table)
    for a in range(k):
        row_a = mult[a]
        if not any(mult[row_a[x]][a] == a for x in range(k)):
            return False
    idem = sorted(idempotents(table))
    return all(
        mult[e][f] == mult[f][e] for e, f in combinations(idem, 2)
    )


@dataclass(frozen=True)
class Witness:
    """A minimal element tuple certifying a structural failure.

    ``elements`` holds table indices; :func:`replay_witness` re-runs the
    defining products and confirms the violation.
    """

    kind: str
    elements: tuple[int, ...]


def _require_zero(table: SemigroupTable) -> int:
    if table.zero_index is None:
        raise NoZero("this check needs a marked zero element")
    return table.zero_index


def is_zero_e_unitary(table: SemigroupTable):
    """Nonzero idempotent times s landing on a nonzero idempotent forces s
    idempotent.  Returns (True, None) or (False, first witness (e, s))."""
    z = _require_zero(table)
    mult = table.mult
    idem = idempotents(table)
    for e in sorted(idem):
        if e == z:
            continue
        row = mult[e]
        for s in range(len(table)):
            es = row[s]
            if es != z and es in idem and s not in idem:
                return False, Witness("not_0_E_unitary", (e, s))
    return True, None


def is_categorical(table: SemigroupTable):
    """abc = 0 implies ab = 0 or bc = 0.  Returns (True, None) or
    (False, first witness (a, b, c))."""
    z = _require_zero(table)
    mult = table.mult
    k = len(table)
    for a in range(k):
        row_a = mult[a]
        for b in range(k):
            ab = row_a[b]
            if ab == z:
                continue
            row_ab = mult[ab]
            row_b = mult[b]
            for c in range(k):
                if row_ab[c] == z and row_b[c] != z:
                    return False, Witness("not_categorical", (a, b, c))
    return True, None


def replay_witness(table: SemigroupTable, witness: Witness) -> bool:
    """Re-run the witness products; True when the violation reproduces."""
    z = _require_zero(table)
    mult = table.mult
    if witness.kind == "not_0_E_unitary":
        e, s = witness.elements
        idem = idempotents(table)
        es = mult[e][s]
        return e in idem and e != z and es in idem and es != z and s not in idem
    if witness.kind == "not_categorical":
        a, b, c = witness.elements
        ab = mult[a][b]
        return ab != z and mult[b][c] != z and mult[ab][c] == z
    raise DomainError(f"unknown witness kind {witness.kind!r}")


# ---------------------------------------------------------------------------
# Ideals and Rees quotients

@dataclass(frozen=True)
class ReesQuotient:
    """The height-p layer of the order-preserving family with a zero glued on.

    Nonzero elements are the height-p members; a product stands when it
    keeps height p and collapses to the adjoined zero otherwise (all lower
    heights form an ideal, so this is well defined).
    """

    n: int
    p: int
    table: SemigroupTable


def build_rees_quotient(
    n: int, p: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> ReesQuotient:
    if not 1 <= p <= n:
        raise DomainError(f"need 1 <= p <= n, got p={p}, n={n}")
    layer = list(enumerate_fast(n, Family.ODP, height=p, cap=cap))
    if len(layer) + 1 > TABLE_ELEMENT_CAP:
        raise LimitExceeded(
            f"quotient with {len(layer) + 1} elements exceeds the cap {TABLE_ELEMENT_CAP}"
        )
    index = {el: i + 1 for i, el in enumerate(layer)}
    k = len(layer) + 1
    mult = [[0] * k]
    for a in layer:
        row = [0]
        for b in layer:
            c = compose(a, b)
            row.append(index[c] if c.height == p else 0)
        mult.append(row)
    table = SemigroupTable([ADJOINED_ZERO] + layer, mult, zero_index=0)
    return ReesQuotient(n, p, table)


# ---------------------------------------------------------------------------
# Exports

def table_to_csv(table: SemigroupTable) -> str:
    """Dense CSV: header row of column indices, then one row per element."""
    k = len(table)
    lines = ["," + ",".join(str(j) for j in range(k))]
    for i, row in enumerate(table.mult):
        lines.append(f"{i}," + ",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def table_manifest(table: SemigroupTable) -> dict:
    """JSON-ready element manifest accompanying the CSV table."""
    return {
        "elements": [
            {"index": i, **element_json(el)} for i, el in enumerate(table.elements)
        ],
        "zero_index": table.zero_index,
        "identity_adjoined": table.identity_adjoined,
    }


def witness_to_json(table: SemigroupTable, witness: Witness) -> dict:
    return {
        "kind": witness.kind,
        "elements": [
            {"index": i, **element_json(table.elements[i])}
            for i in witness.elements
        ],
    }
