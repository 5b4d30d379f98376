"""Topological conjugacy of linear operators x -> Ax on 1- and 2-dimensional
real and complex spaces.

The spectrum is partitioned by modulus into four blocks (zero, inside the
unit circle, on it, outside it). Over C the decision compares: zero blocks up
to similarity, inside block sizes, the unit block plus its entrywise
conjugate up to similarity, and outside block sizes. Over R it compares zero
and unit blocks up to similarity, inside and outside block sizes, and
additionally requires det(A_in B_in) > 0 and det(A_out B_out) > 0.

A bridge connects Moebius maps to determinant-1 operators on C^2: f and g
are topologically conjugate on the sphere exactly when x -> M_f x is
topologically conjugate to x -> M_g x or to x -> -M_g x.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, InvalidInputError, UnsupportedSizeError
from .extended_plane import Infinity, format_point, parse_point
from .moebius import EPS_UNIT, MoebiusMap

REAL = "real"
COMPLEX = "complex"

__all__ = [
    "COMPLEX",
    "ComplexConditions",
    "EigenDatum",
    "OperatorMatrix",
    "REAL",
    "RealConditions",
    "SpectralPartition",
    "complex_conditions",
    "diag_unimodular_decision",
    "format_matrix",
    "moebius_operator_branches",
    "moebius_operator_equiv",
    "operator_from_map",
    "parse_matrix",
    "real_conditions",
    "root_of_unity",
    "similar",
    "spectral_partition",
    "topo_conjugate_complex",
    "topo_conjugate_real",
]


class OperatorMatrix:
    """Square real or complex matrix acting as x -> A x."""

    __slots__ = ("rows", "field")

    def __init__(self, rows, field: str = COMPLEX):
        if field not in (REAL, COMPLEX):
            raise InvalidInputError(f"unknown field tag {field!r}")
        data = tuple(tuple(complex(v) for v in row) for row in rows)
        n = len(data)
        if n == 0 or any(len(r) != n for r in data):
            raise InvalidInputError("matrix must be square and nonempty")
        for r in data:
            for v in r:
                if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                    raise InvalidInputError("matrix entries must be finite")
                if field == REAL and v.imag != 0.0:
                    raise InvalidInputError("real-field matrix has a nonreal entry")
        self.rows = data
        self.field = field

    @property
    def size(self) -> int:
        return len(self.rows)

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(tuple(tuple(-v for v in r) for r in self.rows), self.field)

    def complexified(self) -> "OperatorMatrix":
        return OperatorMatrix(self.rows, COMPLEX)

    def to_numpy(self):
        return np.array(self.rows, dtype=complex)

    def __repr__(self):
        return f"OperatorMatrix({format_matrix(self)!r}, field={self.field!r})"


@dataclass(frozen=True)
class EigenDatum:
    """One eigenvalue with its algebraic and geometric multiplicity."""

    value: complex
    algebraic: int
    geometric: int


@dataclass(frozen=True)
class SpectralPartition:
    """Eigenvalues grouped by modulus: 0, (0, 1), the unit circle, (1, inf)."""

    zero: tuple
    inside: tuple
    unit: tuple
    outside: tuple

    @property
    def block_sizes(self) -> tuple:
        return tuple(sum(d.algebraic for d in block)
                     for block in (self.zero, self.inside, self.unit, self.outside))


def _eigen_structure_small(A: OperatorMatrix, eps: float):
    # Closed forms at sizes 1 and 2; real matrices get exactly conjugate pairs.
    if A.size == 1:
        return [EigenDatum(A.rows[0][0], 1, 1)]
    (a, b), (c, d) = A.rows
    tr = a + d
    det = a * d - b * c
    disc = tr * tr - 4.0 * det
    # Repeated-root gate on the discriminant: the root separation is
    # sqrt(disc), so a rounding-level disc must merge (a gate on the
    # separation itself would miss exactly repeated inputs computed in
    # floating point, e.g. determinant-1 matrices with trace +-2).
    if abs(disc) <= eps * (1.0 + abs(tr)) ** 2:
        lam = tr / 2.0
        off = max(abs(b), abs(c), abs(a - lam), abs(d - lam))
        geo = 2 if off <= eps * (1.0 + abs(lam)) else 1
        return [EigenDatum(lam, 2, geo)]
    if A.field == REAL:
        tr_r, det_r = tr.real, det.real
        disc_r = disc.real
        if disc_r < 0.0:
            half = math.sqrt(-disc_r) / 2.0
            lam1 = complex(tr_r / 2.0, half)
            lam2 = lam1.conjugate()
        else:
            s = math.sqrt(disc_r)
            q = (tr_r + s) / 2.0 if tr_r >= 0.0 else (tr_r - s) / 2.0
            lam1, lam2 = complex(q), complex(det_r / q)
    else:
        s = cmath.sqrt(disc)
        if (tr.conjugate() * s).real < 0.0:
            s = -s
        q = (tr + s) / 2.0
        lam1, lam2 = q, det / q
    return [EigenDatum(lam1, 1, 1), EigenDatum(lam2, 1, 1)]


def _eigen_structure(A: OperatorMatrix, eps: float):
    if A.size <= 2:
        return _eigen_structure_small(A, eps)
    arr = A.to_numpy()
    values = sorted((complex(v) for v in np.linalg.eigvals(arr)),
                    key=lambda z: (z.real, z.imag))
    clusters: list[list[complex]] = []
    for v in values:
        for cluster in clusters:
            if abs(v - cluster[0]) <= eps * (1.0 + abs(v)):
                cluster.append(v)
                break
        else:
            clusters.append([v])
    eye = np.eye(A.size)
    data = []
    for cluster in clusters:
        lam = complex(sum(cluster) / len(cluster))
        alg = len(cluster)
        if alg == 1:
            geo = 1
        else:
            singular = np.linalg.svd(arr - lam * eye, compute_uv=False)
            rank = int(np.sum(singular > 1e-8 * (1.0 + singular[0])))
            geo = A.size - rank
        data.append(EigenDatum(lam, alg, geo))
    return data


def similar(A: OperatorMatrix, B: OperatorMatrix, eps: float = EPS_UNIT) -> bool:
    """Eigenvalue multisets agree (within eps) with matching geometric
    multiplicities; sufficient for similarity at the sizes compared here
    (direct sums of blocks no larger than 2x2)."""
    if A.size != B.size:
        raise InvalidInputError("similarity test requires equal sizes")
    if A.size > 4:
        raise UnsupportedSizeError("similarity test implemented for sizes 1 to 4")
    return _structures_match(_eigen_structure(A, eps), _eigen_structure(B, eps), eps)


def _structures_match(da, db, eps: float) -> bool:
    # Greedy tolerance matching: sorting complex values and zipping is
    # unstable when rounding dust reorders near-equal keys.
    if len(da) != len(db):
        return False
    remaining = list(db)
    for x in da:
        for i, y in enumerate(remaining):
            if (abs(x.value - y.value) <= eps
                    and x.algebraic == y.algebraic
                    and x.geometric == y.geometric):
                del remaining[i]
                break
        else:
            return False
    return True


def spectral_partition(A: OperatorMatrix, eps: float = EPS_UNIT) -> SpectralPartition:
    """Assign eigenvalues (with multiplicities) to the four modulus blocks."""
    if A.size > 2:
        raise UnsupportedSizeError("spectral partition implemented for sizes 1 and 2")
    zero, inside, unit, outside = [], [], [], []
    for d in _eigen_structure_small(A, eps):
        m = abs(d.value)
        if m <= eps:
            zero.append(d)
        elif abs(m - 1.0) <= eps:
            unit.append(d)
        elif m < 1.0:
            inside.append(d)
        else:
            outside.append(d)
    key = lambda d: (d.value.real, d.value.imag)
    return SpectralPartition(
        tuple(sorted(zero, key=key)),
        tuple(sorted(inside, key=key)),
        tuple(sorted(unit, key=key)),
        tuple(sorted(outside, key=key)),
    )


def _block_size(data) -> int:
    return sum(d.algebraic for d in data)


def _block_matrix(data) -> OperatorMatrix | None:
    # Canonical representative of a block from its eigen data. Jordan blocks
    # never exceed 2x2 at the sizes handled here.
    cells = []
    for d in data:
        if d.algebraic == 1:
            cells.append(((d.value,),))
        elif d.geometric == 2:
            cells.append(((d.value, 0j), (0j, d.value)))
        else:
            cells.append(((d.value, 1 + 0j), (0j, d.value)))
    if not cells:
        return None
    n = sum(len(c) for c in cells)
    rows = [[0j] * n for _ in range(n)]
    at = 0
    for cell in cells:
        k = len(cell)
        for i in range(k):
            for j in range(k):
                rows[at + i][at + j] = cell[i][j]
        at += k
    return OperatorMatrix(rows, COMPLEX)


def _conjugated(data):
    return [EigenDatum(d.value.conjugate(), d.algebraic, d.geometric) for d in data]


def _blocks_similar(da, db, eps: float) -> bool:
    if _block_size(da) != _block_size(db):
        return False
    if not da and not db:
        return True
    return similar(_block_matrix(da), _block_matrix(db), eps)


def _block_det_real(data) -> float:
    prod = 1 + 0j
    for d in data:
        prod *= d.value ** d.algebraic
    return prod.real


@dataclass(frozen=True)
class ComplexConditions:
    zero_similar: bool
    inside_size_match: bool
    unit_sum_similar: bool
    outside_size_match: bool

    def all(self) -> bool:
        return (self.zero_similar and self.inside_size_match
                and self.unit_sum_similar and self.outside_size_match)


def complex_conditions(A: OperatorMatrix, B: OperatorMatrix,
                       eps: float = EPS_UNIT) -> ComplexConditions:
    if A.field != COMPLEX or B.field != COMPLEX:
        raise InvalidInputError("complex-field decision requires complex matrices")
    if A.size != B.size:
        raise InvalidInputError("operators act on spaces of different dimension")
    if A.size > 2:
        raise UnsupportedSizeError("complex decision implemented for sizes 1 and 2")
    pa = spectral_partition(A, eps)
    pb = spectral_partition(B, eps)
    unit_a = list(pa.unit) + _conjugated(pa.unit)
    unit_b = list(pb.unit) + _conjugated(pb.unit)
    return ComplexConditions(
        zero_similar=_blocks_similar(pa.zero, pb.zero, eps),
        inside_size_match=_block_size(pa.inside) == _block_size(pb.inside),
        unit_sum_similar=_blocks_similar(unit_a, unit_b, eps),
        outside_size_match=_block_size(pa.outside) == _block_size(pb.outside),
    )


def topo_conjugate_complex(A: OperatorMatrix, B: OperatorMatrix,
                           eps: float = EPS_UNIT) -> bool:
    """Modulus-partition decision over C (sizes 1 and 2)."""
    return complex_conditions(A, B, eps).all()


@dataclass(frozen=True)
class RealConditions:
    zero_similar: bool
    inside_size_match: bool
    inside_det_positive: bool
    unit_similar: bool
    outside_size_match: bool
    outside_det_positive: bool

    def all(self) -> bool:
        return (self.zero_similar and self.inside_size_match
                and self.inside_det_positive and self.unit_similar
                and self.outside_size_match and self.outside_det_positive)


def real_conditions(A: OperatorMatrix, B: OperatorMatrix,
                    eps: float = EPS_UNIT) -> RealConditions:
    if A.field != REAL or B.field != REAL:
        raise InvalidInputError("real-field decision requires real matrices")
    if A.size != B.size:
        raise InvalidInputError("operators act on spaces of different dimension")
    if A.size > 2:
        raise UnsupportedSizeError(
            "real decision implemented for sizes 1 and 2; larger sizes are "
            "not decided (this is not a negative verdict)"
        )
    pa = spectral_partition(A, eps)
    pb = spectral_partition(B, eps)

    def det_positive(block_a, block_b) -> bool:
        # Vacuously true for empty or size-mismatched blocks; the size
        # condition carries the falsity in the mismatched case.
        if _block_size(block_a) != _block_size(block_b) or not block_a:
            return True
        return _block_det_real(block_a) * _block_det_real(block_b) > 0.0

    return RealConditions(
        zero_similar=_blocks_similar(pa.zero, pb.zero, eps),
        inside_size_match=_block_size(pa.inside) == _block_size(pb.inside),
        inside_det_positive=det_positive(pa.inside, pb.inside),
        unit_similar=_blocks_similar(pa.unit, pb.unit, eps),
        outside_size_match=_block_size(pa.outside) == _block_size(pb.outside),
        outside_det_positive=det_positive(pa.outside, pb.outside),
    )


def topo_conjugate_real(A: OperatorMatrix, B: OperatorMatrix,
                        eps: float = EPS_UNIT) -> bool:
    """Modulus-partition decision over R (sizes 1 and 2), with the two
    orientation conditions det(A_in B_in) > 0 and det(A_out B_out) > 0."""
    return real_conditions(A, B, eps).all()


def _is_identity_matrix(A: OperatorMatrix, eps: float) -> bool:
    return all(
        abs(v - (1.0 if i == j else 0.0)) <= eps
        for i, row in enumerate(A.rows)
        for j, v in enumerate(row)
    )


def diag_unimodular_decision(A: OperatorMatrix, B: OperatorMatrix,
                             eps: float = EPS_UNIT) -> bool:
    """Eigenvalue test for diagonalizable determinant-1 nonidentity operators
    on C^2: conjugate exactly when both moduli differ from 1, or the
    eigenvalues agree, or they agree after conjugation."""
    structures = []
    for M, label in ((A, "A"), (B, "B")):
        if M.field != COMPLEX or M.size != 2:
            raise InvalidInputError(f"matrix {label} must be complex 2x2")
        det = M.rows[0][0] * M.rows[1][1] - M.rows[0][1] * M.rows[1][0]
        if abs(det - 1.0) > eps:
            raise InvalidInputError(f"matrix {label} must have determinant 1")
        if _is_identity_matrix(M, eps):
            raise InvalidInputError(f"matrix {label} is the identity operator")
        data = _eigen_structure_small(M, eps)
        if len(data) == 1 and data[0].geometric == 1:
            raise InvalidInputError(f"matrix {label} is not diagonalizable")
        structures.append(data)
    la = structures[0][0].value
    lb = structures[1][0].value
    both_off = abs(abs(la) - 1.0) > eps and abs(abs(lb) - 1.0) > eps
    return both_off or abs(la - lb) <= eps or abs(la - lb.conjugate()) <= eps


def operator_from_map(f: MoebiusMap) -> OperatorMatrix:
    """The determinant-1 operator x -> M_f x on C^2 (canonical representative)."""
    m = f.normalize()
    return OperatorMatrix(((m.m11, m.m12), (m.m21, m.m22)), COMPLEX)


def moebius_operator_branches(f: MoebiusMap, g: MoebiusMap,
                              eps: float = EPS_UNIT) -> tuple:
    """Verdicts of the two operator comparisons (against M_g and against -M_g)."""
    op_f = operator_from_map(f)
    op_g = operator_from_map(g)
    return (
        topo_conjugate_complex(op_f, op_g, eps),
        topo_conjugate_complex(op_f, -op_g, eps),
    )


def moebius_operator_equiv(f: MoebiusMap, g: MoebiusMap,
                           eps: float = EPS_UNIT) -> bool:
    """Whether x -> M_f x is topologically conjugate to x -> M_g x or to
    x -> -M_g x; equals topological conjugacy of f and g on the sphere."""
    plus, minus = moebius_operator_branches(f, g, eps)
    return plus or minus


def root_of_unity(lam, k_max: int = 64, tol: float = 1e-9) -> bool:
    """Whether lam^k = 1 (within tol) for some 1 <= k <= k_max."""
    if k_max < 1:
        raise InvalidInputError("k_max must be >= 1")
    lam = complex(lam)
    # |lam^k - 1| >= ||lam|^k - 1| >= ||lam| - 1| for every k >= 1.
    if abs(abs(lam) - 1.0) > tol:
        return False
    power = 1 + 0j
    for _ in range(k_max):
        power *= lam
        if abs(power - 1.0) <= tol:
            return True
    return False


def parse_matrix(text: str, field: str = COMPLEX) -> OperatorMatrix:
    """Parse row-major text: rows separated by ';', entries by ','."""
    rows = []
    for r, row_text in enumerate(text.split(";")):
        row = []
        for c, cell in enumerate(row_text.split(",")):
            value = parse_point(cell)
            if isinstance(value, Infinity):
                raise InputError(f"matrix entry ({r + 1},{c + 1}) must be finite")
            row.append(value)
        rows.append(row)
    try:
        return OperatorMatrix(rows, field)
    except InvalidInputError as exc:
        raise InputError(str(exc)) from exc


def format_matrix(A: OperatorMatrix) -> str:
    return ";".join(",".join(format_point(v) for v in row) for row in A.rows)
