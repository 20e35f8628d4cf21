"""
Quantum-Torus Orbifold Calculator – Cohomology Engine
═════════════════════════════════════════════════════
Windowed Hochschild cohomology of every twisted sector and the orbifold table.

Truncation protocol (K = max support shift of the sector, M = IMAGE_MARGIN):
    degree 0  kernel of alpha1 on box_N.  Kernels truncate exactly because
              every output index is an input index plus a shift.
    degree 1  dim ker(alpha2 on box_N) - dim(im alpha1 ∩ box_N); the image
              is generated from box_{N+M}.
    degree 2  box_N modulo (im alpha2 ∩ box_N), image generated from
              box_{N+M} and written on box_{N+M+K}.  Coordinates outside
              box_N are eliminated first, then inner coordinates from the
              largest monomial key down, so the surviving representatives
              are the smallest monomials of their classes.
A sector is "stable" when the last STABILITY_RUN radii give the same value.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from algebra.groups import FiniteSubgroup, GroupElement
from algebra.scalars import ZERO, Scalar
from algebra.torus import (
    Lattice,
    TorusElement,
    lattice_box,
    monomial,
    monomial_order_key,
    sup_norm,
)
from cohomology.koszul import (
    RANKS,
    TwistedCochain,
    alpha1,
    alpha2,
    koszul_coboundary,
    max_shift,
)
from config.settings import (
    IMAGE_MARGIN,
    REFERENCE_HH_TABLE,
    REDUCTION_ESCALATION,
    STABILITY_RUN,
    TOP_DEGREE,
)
from linalg.exact import (
    NO_SOLUTION,
    RowReducer,
    SparseMatrix,
    quotient_data,
    rank_and_kernel,
    solve_linear,
)
from linalg.numeric import numeric_rank

logger = logging.getLogger("engine")

# (slot, point): slot is the free-generator index of the Koszul cochain
Coordinate = Tuple[int, Lattice]


class InconsistencyError(RuntimeError):
    """A computation contradicted a mathematical guarantee (lift missing, ranks disagreeing, ...)."""


# ═══════════════════════════════════════════════
# Data Structures
# ═══════════════════════════════════════════════

@dataclass(frozen=True)
class Window:
    radius: int

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError(f"window radius must be >= 1 (got {self.radius})")

    @property
    def points(self) -> Tuple[Lattice, ...]:
        return lattice_box(self.radius)

    def grown(self, by: int) -> "Window":
        return Window(self.radius + by)


@dataclass
class CohomologyReport:
    """Dimension evidence for HH^degree of one sector, plus representatives."""
    group: str
    power: int
    sector: GroupElement
    degree: int
    window_dims: List[Tuple[int, int]]
    stable: bool
    representatives: List[TwistedCochain]
    labels: List[Lattice] = field(default_factory=list)
    invariant_dim: Optional[int] = None
    certificate: Optional[object] = None   # transport.InvarianceCertificate

    @property
    def raw_dim(self) -> int:
        return self.window_dims[-1][1] if self.window_dims else 0

    @property
    def radius(self) -> int:
        return self.window_dims[-1][0] if self.window_dims else 0


@dataclass
class OrbifoldTable:
    group: FiniteSubgroup
    degrees: Tuple[int, ...]
    sectors: List[CohomologyReport]
    totals: Dict[str, int]
    expected: Dict[str, int]
    match: Dict[str, bool]

    @property
    def stable(self) -> bool:
        return all(r.stable for r in self.sectors)

    @property
    def all_match(self) -> bool:
        return all(self.match.values())

    def reports(self, degree: int) -> List[CohomologyReport]:
        return [r for r in self.sectors if r.degree == degree]


# ═══════════════════════════════════════════════
# Cochain <-> coordinate helpers
# ═══════════════════════════════════════════════

def cochain_coordinates(cochain: TwistedCochain) -> Dict[Coordinate, Scalar]:
    out: Dict[Coordinate, Scalar] = {}
    for slot, comp in enumerate(cochain.components):
        for v, c in comp.items():
            out[(slot, v)] = c
    return out


def cochain_from_coordinates(
    gamma: GroupElement, degree: int, coords: Dict[Coordinate, Scalar]
) -> TwistedCochain:
    parts: List[Dict[Lattice, Scalar]] = [dict() for _ in range(RANKS[degree])]
    for (slot, v), c in coords.items():
        parts[slot][v] = c
    return TwistedCochain(gamma, degree, tuple(TorusElement(p) for p in parts))


def basis_cochain(gamma: GroupElement, degree: int, slot: int, v: Lattice) -> TwistedCochain:
    comps = [TorusElement.zero()] * RANKS[degree]
    comps[slot] = monomial(*v)
    return TwistedCochain(gamma, degree, tuple(comps))


@lru_cache(maxsize=None)
def _coboundary_column(gamma: GroupElement, degree: int, slot: int, v: Lattice) -> Dict[Coordinate, Scalar]:
    """d_K of the basis cochain x(v) in ``slot``: -alpha1 in degree 0, alpha2 in degree 1."""
    return cochain_coordinates(koszul_coboundary(basis_cochain(gamma, degree, slot, v)))


class _Index:
    """Assigns consecutive integers to hashable labels in first-seen order."""

    def __init__(self, labels: Sequence[Hashable] = ()):
        self.labels: List[Hashable] = []
        self._pos: Dict[Hashable, int] = {}
        for label in labels:
            self[label]

    def __getitem__(self, label: Hashable) -> int:
        pos = self._pos.get(label)
        if pos is None:
            pos = self._pos[label] = len(self.labels)
            self.labels.append(label)
        return pos

    def __len__(self) -> int:
        return len(self.labels)


def _source_columns(gamma: GroupElement, degree: int, radius: int) -> List[Tuple[Coordinate, Dict[Coordinate, Scalar]]]:
    """(source coordinate, d_K column) for all degree-``degree`` basis cochains on box_radius."""
    return [
        ((slot, v), _coboundary_column(gamma, degree, slot, v))
        for slot in range(RANKS[degree])
        for v in lattice_box(radius)
    ]


def _cross_check(M: SparseMatrix, exact_rank: int, theta: Optional[float], what: str) -> None:
    if theta is None:
        return
    approx = numeric_rank(M, theta)
    if approx != exact_rank:
        raise InconsistencyError(
            f"{what}: exact rank {exact_rank} but numeric rank {approx} at theta={theta}"
        )


# ═══════════════════════════════════════════════
# Map matrices
# ═══════════════════════════════════════════════

def assemble_map_matrix(gamma: GroupElement, degree: int, window: Window) -> SparseMatrix:
    """
    Matrix of gamma-alpha1 (degree 1) or gamma-alpha2 (degree 2) from the
    monomial basis of ``window`` to the basis of the window grown by K.
    """
    if degree not in (1, 2):
        raise ValueError(f"map matrices exist for degrees 1 and 2 (got {degree})")
    target = window.grown(max_shift(gamma))
    if degree == 1:
        row_labels = [(slot, p) for slot in range(2) for p in target.points]
        col_labels = [(0, v) for v in window.points]
        columns = []
        for _, v in col_labels:
            a, b = alpha1(gamma, monomial(*v))
            columns.append(cochain_coordinates(TwistedCochain(gamma, 1, (a, b))))
    else:
        row_labels = [(0, p) for p in target.points]
        col_labels = [(slot, v) for slot in range(2) for v in window.points]
        columns = []
        for slot, v in col_labels:
            args = [TorusElement.zero(), TorusElement.zero()]
            args[slot] = monomial(*v)
            columns.append({(0, p): c for p, c in alpha2(gamma, *args).items()})
    rows = _Index(row_labels)
    indexed = [{rows[label]: c for label, c in col.items()} for col in columns]
    if len(rows) != len(row_labels):
        raise InconsistencyError("an image left the enlarged window; shift bound violated")
    return SparseMatrix.from_columns(len(rows), indexed, row_labels=row_labels, col_labels=col_labels)


# ═══════════════════════════════════════════════
# One window
# ═══════════════════════════════════════════════

def _hh0(gamma: GroupElement, window: Window, theta: Optional[float]):
    M = assemble_map_matrix(gamma, 1, window)
    r, kernel = rank_and_kernel(M)
    _cross_check(M, r, theta, "alpha1")
    reps = []
    for vec in kernel:
        phi = TorusElement({M.col_labels[c][1]: x for c, x in vec.items()})
        a, b = alpha1(gamma, phi)
        if a or b:
            raise InconsistencyError("truncated kernel vector is not a true 0-cocycle")
        reps.append(TwistedCochain(gamma, 0, (phi,)))
    labels = [rep.components[0].support()[0] for rep in reps]
    return len(kernel), reps, labels


def _hh1(gamma: GroupElement, window: Window, theta: Optional[float]):
    A2 = assemble_map_matrix(gamma, 2, window)
    r2, kernel = rank_and_kernel(A2)
    _cross_check(A2, r2, theta, "alpha2")

    # im alpha1 intersected with the inner box
    N = window.radius
    sources = _source_columns(gamma, 0, N + IMAGE_MARGIN)
    outer = lattice_box(N + IMAGE_MARGIN + max_shift(gamma))
    outside = [(s, p) for s in range(2) for p in outer if sup_norm(p) > N]
    ambient = _Index(outside + list(A2.col_labels))
    generators = [{ambient[k]: c for k, c in col.items()} for _, col in sources]
    if len(ambient) != len(outside) + len(A2.col_labels):
        raise InconsistencyError("an image left the enlarged window; shift bound violated")
    qdim, _, img_rank = quotient_data(len(ambient), generators, leading=len(outside))
    if theta is not None:
        _cross_check(SparseMatrix.from_columns(len(ambient), generators), img_rank, theta, "im alpha1")
    intersection = len(A2.col_labels) - qdim
    dim = len(kernel) - intersection

    reducer = RowReducer.from_rows(generators, range(len(ambient)))
    reps, labels = [], []
    for vec in kernel:
        lifted = {ambient[A2.col_labels[c]]: x for c, x in vec.items()}
        if reducer.add(lifted):
            coords = {A2.col_labels[c]: x for c, x in vec.items()}
            cochain = cochain_from_coordinates(gamma, 1, coords)
            if alpha2(gamma, *cochain.components):
                raise InconsistencyError("truncated kernel vector is not a true 1-cocycle")
            reps.append(cochain)
            slot, point = min(coords, key=lambda k: monomial_order_key(k[1]))
            # dual-pairing label: the negated support
            labels.append((-point[0], -point[1]))
    if len(reps) != dim:
        raise InconsistencyError(f"selected {len(reps)} degree-1 representatives for dimension {dim}")
    return dim, reps, labels


def _hh2(gamma: GroupElement, window: Window, theta: Optional[float]):
    N = window.radius
    sources = _source_columns(gamma, 1, N + IMAGE_MARGIN)
    outer = lattice_box(N + IMAGE_MARGIN + max_shift(gamma))
    outside = [(0, p) for p in outer if sup_norm(p) > N]
    inner = [(0, p) for p in sorted(window.points, key=monomial_order_key, reverse=True)]
    ambient = _Index(outside + inner)
    generators = [{ambient[k]: c for k, c in col.items()} for _, col in sources]
    if len(ambient) != len(outside) + len(inner):
        raise InconsistencyError("an image left the enlarged window; shift bound violated")
    dim, rep_idx, img_rank = quotient_data(len(ambient), generators, leading=len(outside))
    if theta is not None:
        _cross_check(SparseMatrix.from_columns(len(ambient), generators), img_rank, theta, "im alpha2")
    points = sorted((ambient.labels[i][1] for i in rep_idx), key=monomial_order_key)
    reps = [TwistedCochain(gamma, 2, (monomial(*p),)) for p in points]
    return dim, reps, points


_DEGREE_RUNNERS = {0: _hh0, 1: _hh1, 2: _hh2}


def hh_dim(
    gamma: GroupElement,
    degree: int,
    window: Window,
    theta: Optional[float] = None,
    group: str = "",
    power: int = 0,
) -> CohomologyReport:
    """HH^degree of the gamma-twisted sector on a single window."""
    if degree not in _DEGREE_RUNNERS:
        raise ValueError(f"degree must be 0, 1 or 2 (got {degree})")
    dim, reps, labels = _DEGREE_RUNNERS[degree](gamma, window, theta)
    logger.debug("sector %s degree %d radius %d: dim %d", gamma.matrix, degree, window.radius, dim)
    return CohomologyReport(
        group=group,
        power=power,
        sector=gamma,
        degree=degree,
        window_dims=[(window.radius, dim)],
        stable=False,
        representatives=reps,
        labels=list(labels),
    )


def sector_report(
    group: FiniteSubgroup,
    power: int,
    degree: int,
    max_window: int,
    theta: Optional[float] = None,
) -> CohomologyReport:
    """Run the last STABILITY_RUN radii up to max_window and merge them."""
    gamma = group.element(power)
    radii = range(max(1, max_window - STABILITY_RUN + 1), max_window + 1)
    final = None
    dims: List[Tuple[int, int]] = []
    for radius in radii:
        final = hh_dim(gamma, degree, Window(radius), theta, group.label, power)
        dims.extend(final.window_dims)
    values = [d for _, d in dims]
    if degree == 2 and any(b > a for a, b in zip(values, values[1:])) and not gamma.is_identity():
        logger.warning("sector %s degree 2 dims not monotone: %s", gamma.matrix, dims)
    final.window_dims = dims
    final.stable = len(dims) >= STABILITY_RUN and len(set(values)) == 1
    logger.info(
        "%s sector g^%d degree %d: dims %s%s",
        group.label, power, degree, values, "" if final.stable else " (unstable)",
    )
    return final


# ═══════════════════════════════════════════════
# Reduction to representatives
# ═══════════════════════════════════════════════

def _solve_with_sources(
    gamma: GroupElement,
    target: TwistedCochain,
    reps: Sequence[TwistedCochain],
    source_degree: Optional[int],
) -> Optional[Tuple[List[Scalar], Optional[TwistedCochain]]]:
    """
    Write target = sum c_i reps_i + d_K(psi) with psi supported on a window
    that grows until the system is solvable.
    """
    coords = cochain_coordinates(target)
    span = [sup_norm(v) for _, v in coords] + [
        sup_norm(v) for r in reps for _, v in cochain_coordinates(r)
    ]
    base = max(span, default=0) + 1
    escalation = REDUCTION_ESCALATION if source_degree is not None else 0
    for radius in range(base, base + escalation + 1):
        rows = _Index()
        columns = [{rows[k]: c for k, c in cochain_coordinates(r).items()} for r in reps]
        labels: List[Coordinate] = []
        if source_degree is not None:
            for label, col in _source_columns(gamma, source_degree, radius):
                labels.append(label)
                columns.append({rows[k]: c for k, c in col.items()})
        rhs = {rows[k]: c for k, c in coords.items()}
        M = SparseMatrix.from_columns(len(rows), columns)
        solution = solve_linear(M, rhs)
        if solution is NO_SOLUTION:
            logger.debug("reduction in radius %d failed, growing", radius)
            continue
        n = len(reps)
        coefficients = [solution.get(i, ZERO) for i in range(n)]
        preimage = None
        if source_degree is not None:
            pre = {labels[i - n]: x for i, x in solution.items() if i >= n}
            preimage = cochain_from_coordinates(gamma, source_degree, pre)
        return coefficients, preimage
    return None


def reduce_cocycle(report: CohomologyReport, cochain: TwistedCochain) -> List[Scalar]:
    """Coordinates of the class of ``cochain`` in the report's representative basis."""
    gamma, degree = report.sector, report.degree
    if cochain.degree != degree:
        raise ValueError("cochain degree does not match the report")
    if cochain.sector != gamma:
        raise ValueError("cochain lives in a different sector")
    if degree < TOP_DEGREE and not koszul_coboundary(cochain).is_zero():
        raise ValueError("input is not a cocycle")
    if cochain.is_zero():
        return [ZERO] * len(report.representatives)
    source = degree - 1 if degree > 0 else None
    found = _solve_with_sources(gamma, cochain, report.representatives, source)
    if found is None:
        raise InconsistencyError(
            f"could not reduce a degree-{degree} cocycle in sector {gamma.matrix}"
        )
    return found[0]


def koszul_preimage(gamma: GroupElement, cochain: TwistedCochain) -> Optional[TwistedCochain]:
    """psi with d_K(psi) = cochain, or None when the class is nonzero."""
    if cochain.degree == 0:
        return None if not cochain.is_zero() else TwistedCochain.zero(gamma, 0)
    if cochain.is_zero():
        return TwistedCochain.zero(gamma, cochain.degree - 1)
    found = _solve_with_sources(gamma, cochain, (), cochain.degree - 1)
    return None if found is None else found[1]


# ═══════════════════════════════════════════════
# Orbifold assembly
# ═══════════════════════════════════════════════

def invariant_dim(
    group: FiniteSubgroup,
    report: CohomologyReport,
    lift=None,
    verify: bool = True,
) -> int:
    """Rank of the Reynolds projector of the transported action on the sector's classes."""
    from cohomology.transport import invariance_certificate

    certificate = invariance_certificate(group, report, lift=lift, verify=verify)
    report.invariant_dim = certificate.rank
    report.certificate = certificate
    return certificate.rank


def orbifold_table(
    group: FiniteSubgroup,
    max_window: int,
    degrees: Sequence[int] = (0, 1, 2),
    theta: Optional[float] = None,
    verify_invariance: bool = True,
    lift=None,
) -> OrbifoldTable:
    """Sum of invariant sector dimensions per degree, compared against the reference table."""
    from cohomology.comparison import ComparisonLift

    lift = lift or ComparisonLift()
    sectors: List[CohomologyReport] = []
    totals: Dict[str, int] = {}
    for degree in degrees:
        total = 0
        for power, _ in group.sectors():
            report = sector_report(group, power, degree, max_window, theta)
            total += invariant_dim(group, report, lift=lift, verify=verify_invariance)
            sectors.append(report)
        totals[f"hh{degree}"] = total
    expected = {k: v for k, v in REFERENCE_HH_TABLE[group.label].items() if k in totals}
    match = {k: totals[k] == expected[k] for k in expected}
    logger.info("%s totals %s (expected %s)", group.label, totals, expected)
    return OrbifoldTable(group, tuple(degrees), sectors, totals, expected, match)
