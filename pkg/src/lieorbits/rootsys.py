"""Reduced root systems of the simple Lie types, with exact integer arithmetic.

Roots are stored as integer coordinate vectors in the simple-root basis.
The Cartan matrix is oriented as ``cartan[i][j] = <alpha_j, alphacheck_i>``,
so the pairing of a root ``gamma`` against the coroot of node ``j`` is
``sum(cartan[j][i] * gamma[i])``.  Node indices are 0-based throughout the
library; only the CLI speaks 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Optional, Sequence

#: admissible ranks per type: (minimum, maximum or None for unbounded)
RANK_RULES = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class Root:
    """A root, as integer coefficients over the simple roots."""

    coords: tuple[int, ...]

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords))

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return any(c > 0 for c in self.coords)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.coords) if c != 0)


def _chain_cartan(rank: int) -> list[list[int]]:
    m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    return m


def cartan_matrix(lie_type: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix in the Bourbaki labelling, rows indexed by coroots."""
    validate_type(lie_type, rank)
    if lie_type == "A":
        m = _chain_cartan(rank)
    elif lie_type == "B":
        # last simple root short
        m = _chain_cartan(rank)
        m[rank - 1][rank - 2] = -2
    elif lie_type == "C":
        # last simple root long
        m = _chain_cartan(rank)
        m[rank - 2][rank - 1] = -2
    elif lie_type == "D":
        m = _chain_cartan(rank)
        m[rank - 2][rank - 1] = 0
        m[rank - 1][rank - 2] = 0
        m[rank - 3][rank - 1] = -1
        m[rank - 1][rank - 3] = -1
    elif lie_type == "E":
        # chain 1-3-4-...-n with node 2 hanging off node 4
        m = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        chain = [0] + list(range(2, rank))
        for a, b in zip(chain, chain[1:]):
            m[a][b] = m[b][a] = -1
        m[1][3] = m[3][1] = -1
    elif lie_type == "F":
        m = _chain_cartan(4)
        m[2][1] = -2
    else:  # G
        m = [[2, -3], [-1, 2]]
    return tuple(tuple(row) for row in m)


def validate_type(lie_type: str, rank: int) -> None:
    rule = RANK_RULES.get(lie_type)
    if rule is None:
        raise ValueError(
            f"unknown type {lie_type!r}; admissible types are A, B, C, D, E, F, G"
        )
    lo, hi = rule
    if rank < lo or (hi is not None and rank > hi):
        bound = f"{lo}..{hi}" if hi is not None else f">= {lo}"
        raise ValueError(f"type {lie_type} requires rank {bound}, got {rank}")


def generate_roots(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Saturate the simple roots under all simple reflections.

    Returns every root, positives first (sorted by height then coordinates),
    negatives mirrored in the same order.
    """
    rank = len(cartan)
    simples = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        fresh = []
        for c in frontier:
            for i in range(rank):
                p = sum(cartan[i][k] * c[k] for k in range(rank))
                r = tuple(c[k] - (p if k == i else 0) for k in range(rank))
                if r not in seen:
                    seen.add(r)
                    fresh.append(r)
        frontier = fresh
    positives = sorted(
        (c for c in seen if all(x >= 0 for x in c)),
        key=lambda c: (sum(c), c),
    )
    for c in seen:
        if not (all(x >= 0 for x in c) or all(x <= 0 for x in c)):
            raise AssertionError(f"mixed-sign vector generated: {c}")
    if 2 * len(positives) != len(seen):
        raise AssertionError("positives do not account for half the roots")
    return positives + [tuple(-x for x in c) for c in positives]


class RootDatum:
    """All roots of one simple type, with pairings and lookup tables.

    Immutable after construction; instances compare by identity and may be
    shared freely.  The only mutable state is a private Bruhat-order memo
    used by :mod:`lieorbits.weyl`, which is safe under CPython's GIL for the
    single-writer uses in this library.
    """

    def __init__(self, lie_type: str, rank: int, cartan, roots: list[tuple[int, ...]]):
        self.lie_type = lie_type
        self.rank = rank
        self.cartan = cartan
        self.roots = tuple(Root(c) for c in roots)
        self.positive_count = len(roots) // 2
        self.root_index = {c: i for i, c in enumerate(roots)}
        self._simple_index = {
            i: self.root_index[tuple(1 if k == i else 0 for k in range(rank))]
            for i in range(rank)
        }
        self._reflections: Optional[tuple[tuple[int, ...], ...]] = None
        self._bruhat_memo: dict = {}

    def __repr__(self) -> str:
        return f"RootDatum({self.lie_type}{self.rank}, {len(self.roots)} roots)"

    def pairing(self, coords: Sequence[int], j: int) -> int:
        """``<gamma, alphacheck_j>`` for ``gamma`` in simple-root coordinates."""
        return sum(self.cartan[j][i] * coords[i] for i in range(self.rank))

    def simple_root_index(self, i: int) -> int:
        return self._simple_index[i]

    def node_of_simple(self, idx: int) -> int:
        root = self.roots[idx]
        if root.height != 1 or min(root.coords) < 0:
            raise ValueError(f"root {root.coords} is not a simple root")
        return root.coords.index(1)

    def negative_index(self, idx: int) -> int:
        n = self.positive_count
        return idx + n if idx < n else idx - n

    def is_positive_index(self, idx: int) -> bool:
        return idx < self.positive_count

    def index_of(self, root: Root) -> int:
        idx = self.root_index.get(root.coords)
        if idx is None:
            raise ValueError(f"{root.coords} is not a root of {self!r}")
        return idx

    def sum_index(self, i: int, j: int) -> Optional[int]:
        """Index of ``roots[i] + roots[j]`` when that sum is a root."""
        a, b = self.roots[i].coords, self.roots[j].coords
        return self.root_index.get(tuple(x + y for x, y in zip(a, b)))

    def reflection_perms(self) -> tuple[tuple[int, ...], ...]:
        """Permutation of the root list induced by each simple reflection."""
        if self._reflections is None:
            perms = []
            for i in range(self.rank):
                perm = []
                for r in self.roots:
                    p = self.pairing(r.coords, i)
                    img = tuple(
                        c - (p if k == i else 0) for k, c in enumerate(r.coords)
                    )
                    perm.append(self.root_index[img])
                perms.append(tuple(perm))
            self._reflections = tuple(perms)
        return self._reflections

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        out = {}
        for i in range(self.rank):
            out[i] = tuple(
                j for j in range(self.rank) if j != i and self.cartan[i][j] != 0
            )
        return out


@lru_cache(maxsize=None)
def build_root_system(lie_type: str, rank: int) -> RootDatum:
    """Construct the reduced root system of the given simple type.

    ``(D, 3)`` is accepted and normalised to ``(A, 3)``, reflecting the
    low-rank coincidence of the two diagrams.
    """
    validate_type(lie_type, rank)
    if lie_type == "D" and rank == 3:
        return build_root_system("A", 3)
    cartan = cartan_matrix(lie_type, rank)
    roots = generate_roots(cartan)
    return RootDatum(lie_type, rank, cartan, roots)


def root_sum(rd: RootDatum, gamma: Root, delta: Root) -> Optional[Root]:
    """``gamma + delta`` as a Root when the sum is again a root, else None."""
    i, j = rd.index_of(gamma), rd.index_of(delta)
    k = rd.sum_index(i, j)
    return rd.roots[k] if k is not None else None


def cartan_pairing(rd: RootDatum, lam, j: int, basis: str = "weight") -> int:
    """Pairing ``<lam, alphacheck_j>``.

    ``lam`` may be a :class:`Root` (simple-root basis) or a plain integer
    vector whose basis the caller states: ``"weight"`` for fundamental-weight
    coordinates (the pairing is then the j-th entry) or ``"root"``.
    """
    if not 0 <= j < rd.rank:
        raise ValueError(f"node index {j} out of range 0..{rd.rank - 1}")
    if isinstance(lam, Root):
        return rd.pairing(lam.coords, j)
    if basis == "weight":
        return lam[j]
    if basis == "root":
        return rd.pairing(lam, j)
    raise ValueError(f"unknown basis {basis!r} (expected 'weight' or 'root')")


@dataclass(frozen=True)
class DiagramComponent:
    """A connected piece of the Dynkin diagram after deleting nodes."""

    lie_type: str
    rank: int
    nodes: tuple[int, ...]  # original node labels, ascending
    relabel: tuple[tuple[int, int], ...]  # (original node, standard node)

    @property
    def relabel_map(self) -> dict[int, int]:
        return dict(self.relabel)


def _match_relabel(sub, std, perm) -> bool:
    k = len(perm)
    return all(
        sub[a][b] == std[perm[a]][perm[b]] for a in range(k) for b in range(k)
    )


def _candidate_types(k: int) -> list[str]:
    out = ["A"]
    if k >= 2:
        out += ["B", "C"]
    if k >= 3:
        out.append("D")
    if k in (6, 7, 8):
        out.append("E")
    if k == 4:
        out.append("F")
    if k == 2:
        out.append("G")
    return out


def classify_subdiagram(rd: RootDatum, nodes: Sequence[int]) -> DiagramComponent:
    """Identify the simple type of a connected induced subdiagram.

    The identity relabelling (ascending original labels) is preferred over
    permuted ones so that e.g. an untouched C2 reports as C2 rather than the
    isomorphic B2.
    """
    nodes = tuple(sorted(nodes))
    k = len(nodes)
    sub = [[rd.cartan[a][b] for b in nodes] for a in nodes]
    candidates = _candidate_types(k)
    identity = tuple(range(k))
    for t in candidates:
        if _match_relabel(sub, cartan_matrix(t, k), identity):
            return DiagramComponent(t, k, nodes, tuple(zip(nodes, identity)))
    for t in candidates:
        std = cartan_matrix(t, k)
        for perm in permutations(range(k)):
            if _match_relabel(sub, std, perm):
                return DiagramComponent(t, k, nodes, tuple(zip(nodes, perm)))
    raise AssertionError(f"subdiagram on nodes {nodes} is not of simple type")


def diagram_components_after_removal(
    rd: RootDatum, removed: Iterable[int]
) -> list[DiagramComponent]:
    """Connected components of the Dynkin diagram minus the given nodes."""
    removed = frozenset(removed)
    for i in removed:
        if not 0 <= i < rd.rank:
            raise ValueError(f"node index {i} out of range 0..{rd.rank - 1}")
    adj = rd.adjacency()
    left = [i for i in range(rd.rank) if i not in removed]
    seen: set[int] = set()
    components = []
    for start in left:
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for nxt in adj[cur]:
                if nxt not in removed and nxt not in comp:
                    comp.add(nxt)
                    frontier.append(nxt)
        seen |= comp
        components.append(classify_subdiagram(rd, sorted(comp)))
    return components


def longest_element_perm(rd: RootDatum) -> tuple[int, ...]:
    """Root permutation of the longest Weyl element, built greedily."""
    perms = rd.reflection_perms()
    n = len(rd.roots)
    w = tuple(range(n))
    while True:
        i = next(
            (
                i
                for i in range(rd.rank)
                if rd.is_positive_index(w[rd.simple_root_index(i)])
            ),
            None,
        )
        if i is None:
            return w
        s = perms[i]
        w = tuple(w[s[r]] for r in range(n))  # w := w o s_i


def involution_i(rd: RootDatum) -> tuple[int, ...]:
    """The diagram involution ``j -> node of -w0(alpha_j)``.

    Always computed from the longest element's action, never from a lookup
    table; the result is asserted to be an involutive diagram automorphism.
    """
    w0 = longest_element_perm(rd)
    perm = []
    for j in range(rd.rank):
        img = w0[rd.simple_root_index(j)]
        perm.append(rd.node_of_simple(rd.negative_index(img)))
    for a in range(rd.rank):
        if perm[perm[a]] != a:
            raise AssertionError("-w0 does not induce an involution")
        for b in range(rd.rank):
            if rd.cartan[perm[a]][perm[b]] != rd.cartan[a][b]:
                raise AssertionError("-w0 does not preserve the Cartan matrix")
    return tuple(perm)


def dynkin_dot(rd: RootDatum) -> str:
    """DOT rendering of the Dynkin diagram.

    Edge multiplicity is drawn as parallel edges; double and triple edges
    carry an arrowhead pointing at the short root.
    """
    lines = ["graph dynkin {", "  rankdir=LR;", "  node [shape=circle];"]
    for i in range(rd.rank):
        lines.append(f"  n{i + 1} [label=\"{i + 1}\"];")
    for i in range(rd.rank):
        for j in range(i + 1, rd.rank):
            cij, cji = rd.cartan[i][j], rd.cartan[j][i]
            if cij == 0:
                continue
            mult = max(abs(cij), abs(cji))
            if mult == 1:
                lines.append(f"  n{i + 1} -- n{j + 1};")
            else:
                # cartan[i][j] = -mult means alpha_i is the short root
                short, long_ = (i, j) if abs(cij) == mult else (j, i)
                for _ in range(mult):
                    lines.append(
                        f"  n{long_ + 1} -- n{short + 1} "
                        f"[dir=forward, arrowhead=normal];"
                    )
    lines.append("}")
    return "\n".join(lines) + "\n"
