"""Constructive orbit budgets for non-singular Morse-Smale fields.

The closed-form bounds (:func:`bound_seifert`, :func:`bound_piece`,
:func:`bound_graph`, :func:`bound_sum`) are plain arithmetic.  The rest of
the module replays the construction behind them as an auditable pipeline:

1. pick a Morse-Smale skeleton on the base surface (attracting/repelling
   singularities, saddles, and periodic orbits beta_i / delta_c);
2. lift it: every singularity becomes a periodic fiber orbit, every base
   periodic orbit an invariant torus;
3. destroy each invariant torus into a (lambda, 1)-curve pair;
4. replace fiber orbits whose target coefficient needs it by Wada's 5th
   operation, leaving a survivor plus two (1, q)-cables;
5. reverse the flow in a tube around the link of orbits realizing the
   requested class, which accumulates exactly that class into d^2;
6. adjust the homotopy class of the plane field, adding six orbits.

Every step appends :class:`OrbitRecord` values to an immutable
:class:`Ledger`; the step descriptors are plain JSON-safe dicts, and
:func:`replay` rebuilds the identical orbit list from them alone.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

from .errors import (
    AlreadyAdjusted,
    MalformedSpec,
    NotFiberOrbit,
    SaddleInLink,
    SinglePiece,
    UnknownTorus,
    ZeroCoefficient,
)
from .manifolds import (
    GraphManifold,
    HomologyClassExpr,
    SeifertClosed,
    SeifertPiece,
    validate_class,
)

ATTRACTING = "attracting"
REPELLING = "repelling"
SADDLE = "saddle"

_PROVENANCES = frozenset(
    {"lift", "torus_destruction", "wada5_cable", "wada5_survivor", "reversal", "homotopy_adjust"})

_PIECE_PREFIX = re.compile(r"^p(\d+)\.")


# ---------------------------------------------------------------------------
# Closed-form bounds

def bound_seifert(genus: int, euler: int, n: int) -> int:
    """Orbit bound for a closed Seifert manifold with `n` exceptional fibers.

    4g + 4n + 8, minus 4 when |e| = 1, plus a correction of 2 (resp. 4 when
    |e| = 1) for the sphere without exceptional fibers.
    """
    if genus < 0 or n < 0:
        raise ValueError("genus and fiber count must be non-negative")
    d_euler = 1 if abs(euler) == 1 else 0
    d_sphere = 1 if genus == 0 and n == 0 else 0
    return 4 * genus + 4 * n + 8 - 4 * d_euler + 2 * (1 + d_euler) * d_sphere


def bound_piece(genus: int, n: int, k: int) -> int:
    """Orbit budget contributed by one bounded piece with `k` boundary tori."""
    if genus < 0 or n < 0:
        raise ValueError("genus and fiber count must be non-negative")
    if k < 1:
        raise ValueError("a piece has at least one boundary torus")
    d_sphere = 1 if genus == 0 and n == 0 else 0
    return 4 * genus + 4 * n + 8 + 2 * d_sphere + 2 * (k - 1)


def _beta(g: GraphManifold) -> int:
    return 2 * sum(
        2 * pc.genus + 2 * pc.n + (1 if pc.genus == 0 and pc.n == 0 else 0) + pc.boundary
        for pc in g.pieces)


def bound_graph(g: GraphManifold) -> int:
    """Orbit bound for a graph manifold with more than one piece.

    Equals 6 + sum over pieces of (bound_piece - 6); single-piece inputs are
    Seifert manifolds in disguise and are rejected.
    """
    if g.l == 1:
        raise SinglePiece("the graph bound needs at least two pieces; use the Seifert bound instead")
    return 6 + _beta(g)


def bound_sum(components: "list[GraphManifold] | tuple[GraphManifold, ...]") -> int:
    """Bound for a connected sum: 6 plus each component's budget above 6.

    Single-piece components are allowed here (their budget term is the same
    algebraic expression); an empty list degenerates to 6.
    """
    return 6 + sum(_beta(c) for c in components)


# ---------------------------------------------------------------------------
# Base-surface skeletons

@dataclass(frozen=True)
class SurfaceSkeleton:
    """Morse-Smale data on the base: periodic orbits as (label, stability)
    pairs and singularities as (label, index) pairs with index +1 for
    attractors/repellors and -1 for saddles."""

    genus: int
    periodic_orbits: tuple[tuple[str, str], ...]
    singularities: tuple[tuple[str, int], ...]
    case_tag: str


def _alternate(position: int) -> str:
    return ATTRACTING if position % 2 == 0 else REPELLING


def surface_skeleton(y: "SeifertClosed | SeifertPiece") -> SurfaceSkeleton:
    """Skeleton whose lift starts the construction on `y`.

    Closed bases get one singularity per exceptional point (plus one for a
    section of the bundle unless |e| = 1 forbids it) and 2g+n-1 saddles
    (2g+n-2 when |e| = 1); bounded pieces behave like the |e| != 1 case and
    additionally carry the boundary-parallel orbits delta_c.  Whenever the
    saddle count would go negative, attractor/repellor-saddle pairs are added
    until all counts are non-negative, which preserves the index sum.
    """
    if isinstance(y, SeifertPiece):
        case_tag = "BoundedPiece"
        fiber_slots = range(0, y.n + 1)
        base_saddles = 2 * y.genus + y.n - 1
        orbit_labels = [f"beta{i}" for i in range(1, y.genus + 1)]
        orbit_labels += [f"delta{c}" for c in range(1, y.boundary)]
    elif isinstance(y, SeifertClosed):
        unit_euler = abs(y.euler) == 1
        if y.genus == 0 and y.n == 0:
            case_tag = "Case4" if unit_euler else "Case3"
        else:
            case_tag = "Case2" if unit_euler else "Case1"
        fiber_slots = range(1, y.n + 1) if unit_euler else range(0, y.n + 1)
        base_saddles = 2 * y.genus + y.n - (2 if unit_euler else 1)
        orbit_labels = [f"beta{i}" for i in range(1, y.genus + 1)]
    else:
        raise MalformedSpec(f"cannot build a skeleton for {type(y).__name__}")

    pad = max(0, -base_saddles)
    singularities = [(f"gamma{j}", 1) for j in fiber_slots]
    singularities += [(f"aux{t}", 1) for t in range(1, pad + 1)]
    singularities += [(f"saddle{s}", -1) for s in range(1, base_saddles + pad + 1)]
    orbits = tuple((label, _alternate(i)) for i, label in enumerate(orbit_labels))
    return SurfaceSkeleton(
        genus=y.genus,
        periodic_orbits=orbits,
        singularities=tuple(singularities),
        case_tag=case_tag,
    )


def check_poincare_hopf(s: SurfaceSkeleton) -> bool:
    """Whether the singularity indices sum to the Euler characteristic 2-2g."""
    if s.case_tag == "BoundedPiece":
        raise ValueError("index-sum check applies to closed bases only")
    return sum(index for _, index in s.singularities) == 2 - 2 * s.genus


# ---------------------------------------------------------------------------
# Orbit records and the ledger

@dataclass(frozen=True)
class OrbitRecord:
    """One periodic orbit of the field under construction."""

    id: int
    kind: str
    label: str
    orbit_class: HomologyClassExpr
    provenance: str
    cable: tuple[int, int] | None = None
    piece: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in (ATTRACTING, REPELLING, SADDLE):
            raise ValueError(f"unknown orbit kind {self.kind!r}")
        if self.provenance not in _PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.provenance == "wada5_cable":
            if self.cable is None:
                raise ValueError("cable records must carry their (p, q) pair")
            p, q = self.cable
            if math.gcd(abs(p), abs(q)) != 1:
                raise ValueError(f"cable pair {self.cable} is not coprime")

    def to_json(self) -> dict:
        cls = self.orbit_class.to_json()
        if self.piece is not None:
            cls["piece"] = self.piece
        doc = {
            "id": self.id,
            "kind": self.kind,
            "label": self.label,
            "class": cls,
            "provenance": self.provenance,
        }
        if self.cable is not None:
            doc["cable"] = list(self.cable)
        return doc


@dataclass(frozen=True)
class InvariantTorus:
    """Marker for an invariant torus awaiting destruction."""

    label: str
    base_kind: str
    unit_class: HomologyClassExpr
    piece: int | None = None


@dataclass(frozen=True)
class Ledger:
    """Audit trail of the construction.

    `steps` holds JSON-safe step descriptors sufficient to rebuild `orbits`
    (see :func:`replay`); `d2_accumulated` is the class realized so far by
    flow reversal, one expression per piece for graph manifolds.  Step
    functions never mutate; they return a new ledger.
    """

    manifold: "SeifertClosed | SeifertPiece | GraphManifold | None" = None
    target_class: "HomologyClassExpr | tuple[HomologyClassExpr, ...] | None" = None
    steps: tuple[dict, ...] = ()
    orbits: tuple[OrbitRecord, ...] = ()
    d2_accumulated: "HomologyClassExpr | tuple[HomologyClassExpr, ...] | None" = None
    tori: tuple[InvariantTorus, ...] = ()
    adjusted: bool = False

    @property
    def total(self) -> int:
        return len(self.orbits)

    def to_json(self) -> dict:
        if isinstance(self.target_class, tuple):
            target = {"pieces": [c.to_json() for c in self.target_class]}
        else:
            target = None if self.target_class is None else self.target_class.to_json()
        if isinstance(self.d2_accumulated, tuple):
            d2 = {
                "pieces": [c.to_json() for c in self.d2_accumulated],
                "reference_offsets": [f"e_{i + 1}" for i in range(len(self.d2_accumulated))],
            }
        else:
            d2 = None if self.d2_accumulated is None else self.d2_accumulated.to_json()
        return {
            "manifold": None if self.manifold is None else self.manifold.to_json(),
            "target_class": target,
            "steps": [dict(s) for s in self.steps],
            "orbits": [o.to_json() for o in self.orbits],
            "d2": d2,
            "total": self.total,
        }


def _label_piece(label: str) -> int | None:
    m = _PIECE_PREFIX.match(label)
    return int(m.group(1)) if m else None


def _unit_class(m: "SeifertClosed | SeifertPiece", block: str, index: int) -> HomologyClassExpr:
    lam = [0] * m.genus
    alpha = [0] * (m.n + 1)
    tau = [0] * (m.boundary - 1) if isinstance(m, SeifertPiece) else None
    if block == "lam":
        lam[index] = 1
    elif block == "alpha":
        alpha[index] = 1
    else:
        assert tau is not None
        tau[index] = 1
    return HomologyClassExpr(tuple(lam), tuple(alpha), None if tau is None else tuple(tau))


def _lift_step_doc(m: "SeifertClosed | SeifertPiece", skeleton: SurfaceSkeleton, prefix: str) -> dict:
    fibers = []
    saddles = []
    position = 0
    for label, index in skeleton.singularities:
        if index == 1:
            slot = int(label[5:]) if label.startswith("gamma") else 0
            cls = _unit_class(m, "alpha", slot)
            fibers.append([prefix + label, _alternate(position), cls.to_json()])
            position += 1
        else:
            saddles.append([prefix + label, _unit_class(m, "alpha", 0).to_json()])
    tori = []
    for label, stability in skeleton.periodic_orbits:
        if label.startswith("beta"):
            unit = _unit_class(m, "lam", int(label[4:]) - 1)
        else:
            unit = _unit_class(m, "tau", int(label[5:]) - 1)
        tori.append([prefix + label, stability, unit.to_json()])
    return {"op": "lift", "fibers": fibers, "saddles": saddles, "tori": tori}


def _apply_lift_step(ledger: Ledger, step: dict) -> Ledger:
    records = list(ledger.orbits)
    for label, kind, cls in step["fibers"]:
        records.append(OrbitRecord(len(records), kind, label,
                                   HomologyClassExpr.from_json(cls), "lift",
                                   piece=_label_piece(label)))
    for label, cls in step["saddles"]:
        records.append(OrbitRecord(len(records), SADDLE, label,
                                   HomologyClassExpr.from_json(cls), "lift",
                                   piece=_label_piece(label)))
    markers = list(ledger.tori)
    for label, base_kind, unit in step["tori"]:
        markers.append(InvariantTorus(label, base_kind,
                                      HomologyClassExpr.from_json(unit),
                                      piece=_label_piece(label)))

    sample = None
    for entry in step["fibers"]:
        sample = entry[2]
        break
    if sample is None:
        for entry in step["saddles"]:
            sample = entry[1]
            break
    if sample is None:
        for entry in step["tori"]:
            sample = entry[2]
            break
    if sample is None:
        raise MalformedSpec("lift step carries no orbits, saddles, or tori")
    zero = HomologyClassExpr.from_json(sample).scale(0)
    labels = [e[0] for e in step["fibers"]] + [e[0] for e in step["saddles"]] \
        + [e[0] for e in step["tori"]]
    step_piece = _label_piece(labels[0])
    if step_piece is None:
        d2: "HomologyClassExpr | tuple[HomologyClassExpr, ...]" = zero \
            if ledger.d2_accumulated is None else ledger.d2_accumulated
    else:
        current = ledger.d2_accumulated if isinstance(ledger.d2_accumulated, tuple) else ()
        if len(current) != step_piece:
            raise MalformedSpec(f"lift for piece {step_piece} arrived out of order")
        d2 = current + (zero,)
    return replace(ledger, steps=ledger.steps + (step,), orbits=tuple(records),
                   tori=tuple(markers), d2_accumulated=d2)


# ---------------------------------------------------------------------------
# Construction steps

def destroy_torus_step(ledger: Ledger, label: str, lam: int) -> Ledger:
    """Destroy the invariant torus over `label` into a (lambda, 1)-curve pair.

    Appends two orbits of class lambda*[label]: one keeps the base orbit's
    stability, the companion is a saddle.
    """
    if not isinstance(lam, int) or isinstance(lam, bool) or lam == 0:
        raise ValueError("torus destruction needs a nonzero integer coefficient")
    marker = next((t for t in ledger.tori if t.label == label), None)
    if marker is None:
        raise UnknownTorus(f"no invariant torus labeled {label!r}")
    cls = marker.unit_class.scale(lam)
    base = len(ledger.orbits)
    added = (
        OrbitRecord(base, marker.base_kind, label, cls, "torus_destruction", piece=marker.piece),
        OrbitRecord(base + 1, SADDLE, f"{label}.saddle", cls, "torus_destruction", piece=marker.piece),
    )
    step = {"op": "destroy_torus", "torus": label, "lambda": lam}
    return replace(ledger, steps=ledger.steps + (step,),
                   orbits=ledger.orbits + added,
                   tori=tuple(t for t in ledger.tori if t.label != label))


def wada5_step(ledger: Ledger, orbit_label: str, q: int) -> Ledger:
    """Replace a fiber orbit by Wada's 5th operation with cable slope (1, q).

    The original orbit survives (relabeled as the survivor) and two parallel
    cables appear; the replacement cable carries the class q*[orbit].
    """
    if not isinstance(q, int) or isinstance(q, bool):
        raise ValueError("cable coefficient must be an integer")
    if q == 0:
        raise ZeroCoefficient("Wada's operation needs a nonzero cable coefficient")
    index = next((i for i, o in enumerate(ledger.orbits) if o.label == orbit_label), None)
    if index is None:
        raise NotFiberOrbit(f"no orbit labeled {orbit_label!r}")
    orb = ledger.orbits[index]
    bare = orbit_label.split(".", 1)[1] if _label_piece(orbit_label) is not None else orbit_label
    if orb.provenance != "lift" or orb.kind == SADDLE or not bare.startswith("gamma"):
        raise NotFiberOrbit(f"orbit {orbit_label!r} is not an attracting or repelling fiber lift")
    survivor = replace(orb, provenance="wada5_survivor")
    records = list(ledger.orbits)
    records[index] = survivor
    base = len(records)
    cls = orb.orbit_class.scale(q)
    records.append(OrbitRecord(base, orb.kind, f"{orbit_label}.cable", cls,
                               "wada5_cable", cable=(1, q), piece=orb.piece))
    records.append(OrbitRecord(base + 1, SADDLE, f"{orbit_label}.cable_saddle", cls,
                               "wada5_cable", cable=(1, q), piece=orb.piece))
    step = {"op": "wada5", "orbit": orbit_label, "q": q, "p": 1}
    return replace(ledger, steps=ledger.steps + (step,), orbits=tuple(records))


def reverse_link_step(ledger: Ledger, link: "set[int] | list[int] | tuple[int, ...]") -> Ledger:
    """Reverse the flow in a tube around the given orbits.

    Adds their classes to d2_accumulated and marks them with provenance
    ``reversal``; the orbit count is unchanged.  Saddles cannot be reversed.
    """
    ids = sorted(set(int(i) for i in link))
    by_id = {o.id: i for i, o in enumerate(ledger.orbits)}
    records = list(ledger.orbits)
    d2 = ledger.d2_accumulated
    for oid in ids:
        if oid not in by_id:
            raise ValueError(f"no orbit with id {oid}")
        orb = records[by_id[oid]]
        if orb.kind == SADDLE:
            raise SaddleInLink(f"orbit {orb.label!r} is a saddle and cannot be reversed")
        if isinstance(d2, tuple):
            if orb.piece is None:
                raise ValueError(f"orbit {orb.label!r} belongs to no piece of the graph manifold")
            d2 = d2[:orb.piece] + (d2[orb.piece] + orb.orbit_class,) + d2[orb.piece + 1:]
        else:
            d2 = orb.orbit_class if d2 is None else d2 + orb.orbit_class
        records[by_id[oid]] = replace(orb, provenance="reversal")
    step = {"op": "reverse_link", "link": ids}
    return replace(ledger, steps=ledger.steps + (step,),
                   orbits=tuple(records), d2_accumulated=d2)


def homotopy_adjust_step(ledger: Ledger) -> Ledger:
    """Fix the homotopy class of the transverse plane field.

    Adds six orbits in three canceling pairs, so d2_accumulated is unchanged;
    the pairs are recorded with the trivial class.  Applicable once.
    """
    if ledger.adjusted:
        raise AlreadyAdjusted("the homotopy adjustment was already applied")
    if isinstance(ledger.d2_accumulated, HomologyClassExpr):
        zero = ledger.d2_accumulated.scale(0)
    else:
        zero = HomologyClassExpr((), (), None)
    base = len(ledger.orbits)
    kinds = (ATTRACTING, REPELLING, ATTRACTING, REPELLING, SADDLE, SADDLE)
    added = tuple(
        OrbitRecord(base + i, kind, f"adjust{i + 1}", zero, "homotopy_adjust")
        for i, kind in enumerate(kinds))
    step = {"op": "homotopy_adjust"}
    return replace(ledger, steps=ledger.steps + (step,),
                   orbits=ledger.orbits + added, adjusted=True)


# ---------------------------------------------------------------------------
# Full pipelines

def _orbit_coeff(c: HomologyClassExpr, bare_label: str) -> int:
    if bare_label.startswith("beta"):
        return c.lam[int(bare_label[4:]) - 1]
    return (c.tau or ())[int(bare_label[5:]) - 1]


def _destroy_and_wada(ledger: Ledger, skeleton: SurfaceSkeleton,
                      c: HomologyClassExpr, prefix: str) -> Ledger:
    for label, _stability in skeleton.periodic_orbits:
        coeff = _orbit_coeff(c, label)
        ledger = destroy_torus_step(ledger, prefix + label, coeff if coeff != 0 else 1)
    for label, index in skeleton.singularities:
        if index == 1 and label.startswith("gamma"):
            a = c.alpha[int(label[5:])]
            if a not in (0, 1):
                ledger = wada5_step(ledger, prefix + label, a)
    return ledger


def _link_ids(ledger: Ledger, c: HomologyClassExpr, piece: int | None) -> list[int]:
    # the link realizing c: destroyed-torus orbits with nonzero target
    # coefficient, replacement cables, and plain fiber lifts at coefficient 1
    ids = []
    for orb in ledger.orbits:
        if orb.piece != piece or orb.kind == SADDLE:
            continue
        bare = orb.label.split(".", 1)[1] if piece is not None else orb.label
        if orb.provenance == "torus_destruction" and "." not in bare:
            if _orbit_coeff(c, bare) != 0:
                ids.append(orb.id)
        elif orb.provenance == "wada5_cable":
            ids.append(orb.id)
        elif orb.provenance == "lift" and bare.startswith("gamma"):
            if c.alpha[int(bare[5:])] == 1:
                ids.append(orb.id)
    return ids


def plan_seifert(y: "SeifertClosed | SeifertPiece", c: HomologyClassExpr) -> Ledger:
    """Run the whole construction on one Seifert manifold or piece.

    The resulting ledger satisfies d2_accumulated == c, and for a maximal
    class its total matches the closed-form bound (except at the two
    degenerate sphere cells with |e| = 1 and one exceptional fiber, where the
    construction needs two more orbits than the closed-form value).
    """
    if not isinstance(y, (SeifertClosed, SeifertPiece)):
        raise MalformedSpec(f"cannot plan on {type(y).__name__}")
    validated = validate_class(y, c)
    assert isinstance(validated, HomologyClassExpr)
    skeleton = surface_skeleton(y)
    ledger = Ledger(manifold=y, target_class=validated)
    ledger = _apply_lift_step(ledger, _lift_step_doc(y, skeleton, ""))
    ledger = _destroy_and_wada(ledger, skeleton, validated, "")
    ledger = reverse_link_step(ledger, _link_ids(ledger, validated, None))
    ledger = homotopy_adjust_step(ledger)
    if ledger.d2_accumulated != validated:
        raise ArithmeticError("link bookkeeping failed to reproduce the target class")
    return ledger


def plan_graph(g: GraphManifold,
               per_piece: "list[HomologyClassExpr] | tuple[HomologyClassExpr, ...]") -> Ledger:
    """Run per-piece pipelines and glue: one reversal and one adjustment.

    Orbit labels are prefixed ``p<i>.`` with the piece index; the accumulated
    class is tracked per piece, relative to the symbolic reference offsets
    e_1..e_l of the fiberwise fields.
    """
    if g.l == 1:
        raise SinglePiece("a one-piece graph manifold is planned as a Seifert piece")
    classes = validate_class(g, tuple(per_piece))
    assert isinstance(classes, tuple)
    ledger = Ledger(manifold=g, target_class=classes)
    skeletons = [surface_skeleton(pc) for pc in g.pieces]
    for idx, (skeleton, ci) in enumerate(zip(skeletons, classes)):
        ledger = _apply_lift_step(ledger, _lift_step_doc(g.pieces[idx], skeleton, f"p{idx}."))
        ledger = _destroy_and_wada(ledger, skeleton, ci, f"p{idx}.")
    link: list[int] = []
    for idx, ci in enumerate(classes):
        link += _link_ids(ledger, ci, idx)
    ledger = reverse_link_step(ledger, link)
    ledger = homotopy_adjust_step(ledger)
    if ledger.d2_accumulated != classes:
        raise ArithmeticError("link bookkeeping failed to reproduce the target classes")
    return ledger


def replay(steps, manifold=None, target_class=None) -> Ledger:
    """Rebuild a ledger from serialized step descriptors.

    The orbit list, totals, and d2 accumulation depend only on the steps, so
    replaying a ledger's steps reproduces its orbits exactly.
    """
    ledger = Ledger(manifold=manifold, target_class=target_class)
    for step in steps:
        op = step.get("op") if isinstance(step, dict) else None
        if op == "lift":
            ledger = _apply_lift_step(ledger, step)
        elif op == "destroy_torus":
            ledger = destroy_torus_step(ledger, step["torus"], step["lambda"])
        elif op == "wada5":
            ledger = wada5_step(ledger, step["orbit"], step["q"])
        elif op == "reverse_link":
            ledger = reverse_link_step(ledger, step["link"])
        elif op == "homotopy_adjust":
            ledger = homotopy_adjust_step(ledger)
        else:
            raise ValueError(f"unknown step {step!r}")
    return ledger
