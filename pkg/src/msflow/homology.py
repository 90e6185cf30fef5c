"""First homology of Seifert and graph manifolds by integer presentation matrices.

The closed Seifert presentation uses generators
(a_1, b_1, ..., a_g, b_g, h, mu_1, ..., mu_n) where h is the regular fiber
and mu_j the meridian of the j-th exceptional torus.  Relations are

* the closing row        e*h + mu_1 + ... + mu_n = 0, and
* one fiber row per j    p_j*mu_j - q_j*h = 0.

The sign in the fiber row is the one that makes the (g=0, e=-1) surgeries
(2,1), (3,1), (5,1) produce the trivial group, which pins the orientation
convention for the whole module.  Bounded pieces keep the same generators
plus boundary classes delta_1..delta_{k-1} and drop the closing row; the
section curve on boundary slot 0 is then the combination
-sum(delta_c) - sum(mu_j).

Everything is exact arbitrary-precision integer arithmetic; matrices at the
sizes arising here stay tiny, so no modular tricks are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionMismatch
from .manifolds import (
    GraphManifold,
    HomologyClassExpr,
    SeifertClosed,
    SeifertPiece,
)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with explicit shape (rows may be zero)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(v) for v in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @staticmethod
    def from_rows(rows: "list[tuple[int, ...]] | tuple[tuple[int, ...], ...]", cols: int) -> "IntMatrix":
        return IntMatrix(len(rows), cols, tuple(rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = tuple(
            tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                  for j in range(other.cols))
            for i in range(self.rows))
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vector: tuple[int, ...]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} against {self.rows}x{self.cols} matrix")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def det(self) -> int:
        """Determinant by fraction-free Gaussian elimination (Bareiss)."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form S = U @ A @ V with unimodular transforms U, V."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.s.entries[i][i] for i in range(min(self.s.rows, self.s.cols)))


def smith_normal_form(a: IntMatrix) -> SNFResult:
    """Diagonalize A over the integers, tracking the row and column transforms.

    The returned diagonal is non-negative and satisfies the divisibility chain
    d_1 | d_2 | ...; U and V collect the elementary row and column operations,
    so U @ A @ V = S holds exactly.
    """
    m, n = a.rows, a.cols
    s = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, factor: int) -> None:
        s[dst] = [x + factor * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, factor: int) -> None:
        for row in s:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if s[i][j] != 0 and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot[0] != t:
                swap_rows(t, pivot[0])
            if pivot[1] != t:
                swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, m):
                if s[i][t] != 0:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j] != 0:
                    add_col(j, t, -(s[t][j] // s[t][t]))
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            # below/right of the pivot is clear; enforce the divisibility chain
            offender = None
            for i in range(t + 1, m):
                if any(s[i][j] % s[t][t] != 0 for j in range(t + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
    for t in range(min(m, n)):
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return SNFResult(IntMatrix(m, m, tuple(tuple(r) for r in u)),
                     IntMatrix(m, n, tuple(tuple(r) for r in s)),
                     IntMatrix(n, n, tuple(tuple(r) for r in v)))


def solve_in_image(a: IntMatrix, v: tuple[int, ...]) -> tuple[int, ...] | None:
    """Return an integer x with A @ x = v, or None when v is not in the image.

    Solving S y = U v in the Smith basis reduces the question to divisibility
    by the diagonal entries; any returned solution is re-multiplied through A
    as a final guard.
    """
    if len(v) != a.rows:
        raise DimensionMismatch(f"vector of length {len(v)} against {a.rows}x{a.cols} matrix")
    snf = smith_normal_form(a)
    w = snf.u.apply(tuple(int(x) for x in v))
    y = [0] * a.cols
    rank_bound = min(a.rows, a.cols)
    for i, wi in enumerate(w):
        d = snf.s.entries[i][i] if i < rank_bound else 0
        if d == 0:
            if wi != 0:
                return None
        else:
            if wi % d != 0:
                return None
            y[i] = wi // d
    x = snf.v.apply(tuple(y))
    if a.apply(x) != tuple(int(e) for e in v):
        raise ArithmeticError("smith-basis solution failed re-multiplication")
    return x


@dataclass(frozen=True)
class H1Group:
    """H_1 as free rank, invariant factors, and the presentation they came from.

    `presentation` has one row per relation over `generator_names`.  The
    invariant factors keep only entries >= 2 and satisfy d_i | d_{i+1}.
    """

    free_rank: int
    invariant_factors: tuple[int, ...]
    presentation: IntMatrix
    generator_names: tuple[str, ...]

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def torsion_order(self) -> int:
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order

    def is_trivial_class(self, vector: tuple[int, ...]) -> bool:
        """Whether the generator-coordinate vector lies in the relation lattice."""
        if len(vector) != len(self.generator_names):
            raise DimensionMismatch(
                f"class vector of length {len(vector)} over {len(self.generator_names)} generators")
        return solve_in_image(self.presentation.transpose(), tuple(vector)) is not None

    def to_json(self) -> dict:
        return {
            "group": self.describe(),
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
            "generators": list(self.generator_names),
        }


def group_from_presentation(relations: IntMatrix, names: tuple[str, ...]) -> H1Group:
    if relations.cols != len(names):
        raise DimensionMismatch(f"{relations.cols} columns for {len(names)} generators")
    diag = [d for d in smith_normal_form(relations).diagonal() if d != 0]
    return H1Group(
        free_rank=len(names) - len(diag),
        invariant_factors=tuple(d for d in diag if d > 1),
        presentation=relations,
        generator_names=names,
    )


# ---------------------------------------------------------------------------
# Seifert manifolds

def _closed_names(m: SeifertClosed) -> tuple[str, ...]:
    names = []
    for i in range(1, m.genus + 1):
        names += [f"a{i}", f"b{i}"]
    names.append("h")
    names += [f"mu{j}" for j in range(1, m.n + 1)]
    return tuple(names)


def _piece_names(p: SeifertPiece) -> tuple[str, ...]:
    names = []
    for i in range(1, p.genus + 1):
        names += [f"a{i}", f"b{i}"]
    names.append("h")
    names += [f"mu{j}" for j in range(1, p.n + 1)]
    names += [f"delta{c}" for c in range(1, p.boundary)]
    return tuple(names)


def _fiber_rows(m: SeifertClosed | SeifertPiece, width: int) -> list[tuple[int, ...]]:
    h = 2 * m.genus
    rows = []
    for j, f in enumerate(m.fibers):
        row = [0] * width
        row[h] = -f.q
        row[h + 1 + j] = f.p
        rows.append(tuple(row))
    return rows


@lru_cache(maxsize=None)
def seifert_h1(m: SeifertClosed) -> H1Group:
    """H_1 of a closed Seifert manifold from the surgery presentation."""
    names = _closed_names(m)
    width = len(names)
    closing = [0] * width
    closing[2 * m.genus] = m.euler
    for j in range(m.n):
        closing[2 * m.genus + 1 + j] = 1
    rows = [tuple(closing)] + _fiber_rows(m, width)
    return group_from_presentation(IntMatrix.from_rows(rows, width), names)


@lru_cache(maxsize=None)
def piece_h1(p: SeifertPiece) -> H1Group:
    """H_1 of a bounded piece: fiber relations only, no closing row."""
    names = _piece_names(p)
    rows = _fiber_rows(p, len(names))
    return group_from_presentation(IntMatrix.from_rows(rows, len(names)), names)


def _core_pair(f) -> tuple[int, int]:
    # (r, s) with p*s - q*r = 1 and 0 <= s < |q|
    q = abs(f.q)
    s = 0 if q == 1 else pow(f.p, -1, q)
    r = (f.p * s - 1) // f.q
    return r, s


def core_class_vector(m: SeifertClosed | SeifertPiece, j: int) -> tuple[int, ...]:
    """[gamma_j] in generator coordinates: h for j = 0, r_j*mu_j + s_j*h else."""
    names = _closed_names(m) if isinstance(m, SeifertClosed) else _piece_names(m)
    vec = [0] * len(names)
    h = 2 * m.genus
    if j == 0:
        vec[h] = 1
    else:
        r, s = _core_pair(m.fibers[j - 1])
        vec[h] = s
        vec[h + j] = r
    return tuple(vec)


def expr_to_vector(m: SeifertClosed | SeifertPiece, c: HomologyClassExpr) -> tuple[int, ...]:
    """Expand a (beta, gamma, delta) class into generator coordinates.

    beta_i is realized as the surface generator a_i; gamma classes expand via
    :func:`core_class_vector`; delta_c is its own generator (pieces only).
    """
    names = _closed_names(m) if isinstance(m, SeifertClosed) else _piece_names(m)
    vec = [0] * len(names)
    for i, coeff in enumerate(c.lam):
        vec[2 * i] += coeff
    for j, coeff in enumerate(c.alpha):
        if coeff:
            core = core_class_vector(m, j)
            for idx, entry in enumerate(core):
                vec[idx] += coeff * entry
    if c.tau:
        base = 2 * m.genus + 1 + m.n
        for cidx, coeff in enumerate(c.tau):
            vec[base + cidx] += coeff
    return tuple(vec)


def section_vector(p: SeifertPiece, slot: int) -> tuple[int, ...]:
    """Class of the section curve on a boundary slot, in piece generators.

    Slots 1..k-1 carry the generators delta_1..delta_{k-1}; the slot-0 section
    balances them against the exceptional meridians.
    """
    vec = [0] * len(_piece_names(p))
    mu_base = 2 * p.genus + 1
    delta_base = mu_base + p.n
    if slot == 0:
        for j in range(p.n):
            vec[mu_base + j] = -1
        for c in range(p.boundary - 1):
            vec[delta_base + c] = -1
    else:
        vec[delta_base + slot - 1] = 1
    return tuple(vec)


def fiber_vector(m: SeifertClosed | SeifertPiece) -> tuple[int, ...]:
    """Class of a regular fiber: the generator h."""
    names = _closed_names(m) if isinstance(m, SeifertClosed) else _piece_names(m)
    vec = [0] * len(names)
    vec[2 * m.genus] = 1
    return tuple(vec)


# ---------------------------------------------------------------------------
# Graph manifolds

@dataclass(frozen=True)
class GraphPresentation:
    """Assembled presentation of a graph manifold's first homology.

    Generators are the piece generators (prefixed ``p<i>.``) followed by one
    free generator ``t<m>`` per non-tree edge; `piece_offsets[i]` locates piece
    i's block.  `cycle_projection` reads off the ``t`` coordinates, i.e. the
    class's image in the cycle space of the gluing multigraph.
    """

    generator_names: tuple[str, ...]
    relations: IntMatrix
    piece_offsets: tuple[int, ...]
    tree_edges: tuple[int, ...]
    nontree_edges: tuple[int, ...]
    cycle_projection: IntMatrix


def _spanning_tree(g: GraphManifold) -> tuple[tuple[int, ...], tuple[int, ...]]:
    parent = list(range(g.l))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, nontree = [], []
    for idx, e in enumerate(g.edges):
        ra, rb = find(e.piece_a), find(e.piece_b)
        if ra != rb:
            parent[ra] = rb
            tree.append(idx)
        else:
            nontree.append(idx)
    return tuple(tree), tuple(nontree)


@lru_cache(maxsize=None)
def graph_presentation(g: GraphManifold) -> GraphPresentation:
    offsets = []
    names: list[str] = []
    for i, pc in enumerate(g.pieces):
        offsets.append(len(names))
        names += [f"p{i}.{name}" for name in _piece_names(pc)]
    tree, nontree = _spanning_tree(g)
    t_base = len(names)
    names += [f"t{idx}" for idx in nontree]
    width = len(names)

    def embedded(piece: int, local: tuple[int, ...]) -> list[int]:
        vec = [0] * width
        for k, entry in enumerate(local):
            vec[offsets[piece] + k] = entry
        return vec

    rows: list[tuple[int, ...]] = []
    for i, pc in enumerate(g.pieces):
        for local in _fiber_rows(pc, len(_piece_names(pc))):
            rows.append(tuple(embedded(i, local)))
    # each gluing identifies (fiber, section) of side a with the matrix image
    # of (fiber, section) of side b; a non-tree edge additionally contributes
    # the free generator t<idx> of the gluing graph's cycle space
    for e in g.edges:
        (a, b), (c, d) = e.matrix
        h_a = embedded(e.piece_a, fiber_vector(g.pieces[e.piece_a]))
        s_a = embedded(e.piece_a, section_vector(g.pieces[e.piece_a], e.slot_a))
        h_b = embedded(e.piece_b, fiber_vector(g.pieces[e.piece_b]))
        s_b = embedded(e.piece_b, section_vector(g.pieces[e.piece_b], e.slot_b))
        rows.append(tuple(x - a * y - c * z for x, y, z in zip(h_a, h_b, s_b)))
        rows.append(tuple(x - b * y - d * z for x, y, z in zip(s_a, h_b, s_b)))

    projection_rows = []
    for k in range(len(nontree)):
        row = [0] * width
        row[t_base + k] = 1
        projection_rows.append(tuple(row))
    return GraphPresentation(
        generator_names=tuple(names),
        relations=IntMatrix.from_rows(rows, width),
        piece_offsets=tuple(offsets),
        tree_edges=tree,
        nontree_edges=nontree,
        cycle_projection=IntMatrix.from_rows(projection_rows, width),
    )


def graph_h1(g: GraphManifold) -> tuple[H1Group, IntMatrix]:
    """H_1 of the glued manifold plus the projection onto graph cycles."""
    pres = graph_presentation(g)
    return group_from_presentation(pres.relations, pres.generator_names), pres.cycle_projection


def graph_class_vector(
    g: GraphManifold,
    per_piece: tuple[HomologyClassExpr, ...],
    cycles: tuple[int, ...] | None = None,
) -> tuple[int, ...]:
    """Assemble per-piece class expressions (and optional cycle coordinates)
    into a vector over the graph presentation's generators."""
    pres = graph_presentation(g)
    if len(per_piece) != g.l:
        raise DimensionMismatch(f"expected {g.l} per-piece classes, got {len(per_piece)}")
    vec = [0] * len(pres.generator_names)
    for i, (pc, expr) in enumerate(zip(g.pieces, per_piece)):
        local = expr_to_vector(pc, expr)
        for k, entry in enumerate(local):
            vec[pres.piece_offsets[i] + k] = entry
    b1 = len(pres.nontree_edges)
    if cycles is not None:
        if len(cycles) != b1:
            raise DimensionMismatch(f"expected {b1} cycle coordinates, got {len(cycles)}")
        t_base = len(pres.generator_names) - b1
        for k, entry in enumerate(cycles):
            vec[t_base + k] = int(entry)
    return tuple(vec)


def class_is_admissible(g: GraphManifold, vector: tuple[int, ...]) -> bool:
    """A class is realizable by a nMS field iff it projects to zero in the
    cycle space of the gluing graph."""
    pres = graph_presentation(g)
    if len(vector) != len(pres.generator_names):
        raise DimensionMismatch(
            f"class vector of length {len(vector)} over {len(pres.generator_names)} generators")
    return all(v == 0 for v in pres.cycle_projection.apply(tuple(vector)))


def class_is_maximal(
    m: SeifertClosed | SeifertPiece | GraphManifold,
    c: "HomologyClassExpr | tuple[HomologyClassExpr, ...]",
) -> bool:
    """Whether every constrained coefficient avoids {-1, 0, 1}.

    alpha_0 is exempt exactly when the manifold is closed with |e| = 1, since
    that coefficient is forced to vanish there.
    """
    if isinstance(m, GraphManifold):
        return all(class_is_maximal(pc, expr) for pc, expr in zip(m.pieces, c))  # type: ignore[arg-type]
    assert isinstance(c, HomologyClassExpr)
    small = {-1, 0, 1}
    alpha = c.alpha
    if isinstance(m, SeifertClosed) and abs(m.euler) == 1:
        alpha = alpha[1:]
    coeffs = list(c.lam) + list(alpha) + list(c.tau or ())
    return all(v not in small for v in coeffs)
