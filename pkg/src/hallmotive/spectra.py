"""Eigen-decomposition of presented lower-triangular operators over Q(q).

A :class:`SpectralProblem` holds a square matrix ``M`` (row-major;
column j is the image of basis vector j) that must be lower triangular with
pairwise distinct diagonal entries.  In ``local`` mode the differences of
diagonal entries must moreover be units of the localization at q = 1, so that
every eigenprojection is defined over Q[q] localized at (q-1).
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .combinatorics import partitions
from .qscalar import ParseError, QRat, is_regular, ord_at_one, parse_qrat, partition_poly

__all__ = [
    "SpectralError",
    "SpectralProblem",
    "eigen_decompose",
    "inverse_unit_lower",
    "decompose_vector",
    "match_partition",
    "ord_grouped_sums",
    "ord_group_rationality",
    "mat_mul",
    "local_soundness",
]

Vector = Tuple[QRat, ...]
Matrix = Tuple[Tuple[QRat, ...], ...]


class SpectralError(ValueError):
    """The presented operator violates the triangular-spectrum hypotheses."""


def _q(x) -> QRat:
    if isinstance(x, QRat):
        return x
    if isinstance(x, str):
        return parse_qrat(x)
    return QRat(x)


@dataclass(frozen=True)
class SpectralProblem:
    labels: Tuple[str, ...]
    matrix: Matrix
    vectors: Dict[str, Vector] = field(default_factory=dict)
    mode: str = "field"

    def __post_init__(self):
        labels = tuple(self.labels)
        matrix = tuple(tuple(_q(x) for x in row) for row in self.matrix)
        vectors = {k: tuple(_q(x) for x in v) for k, v in dict(self.vectors).items()}
        n = len(matrix)
        if len(labels) != n or any(len(row) != n for row in matrix):
            raise SpectralError(f"need a square {len(labels)}x{len(labels)} matrix "
                                "matching the labels")
        for name, v in vectors.items():
            if len(v) != n:
                raise SpectralError(f"vector {name!r} has length {len(v)}, expected {n}")
        if self.mode not in ("field", "local"):
            raise SpectralError(f"mode must be 'field' or 'local', got {self.mode!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "vectors", vectors)

    @property
    def size(self) -> int:
        return len(self.labels)

    def diagonal(self) -> Vector:
        return tuple(self.matrix[i][i] for i in range(self.size))

    def validate(self) -> None:
        n = self.size
        for i in range(n):
            for j in range(i + 1, n):
                if self.matrix[i][j]:
                    raise SpectralError(f"matrix is not lower triangular: entry "
                                        f"({i},{j}) is {self.matrix[i][j]}")
        d = self.diagonal()
        for i in range(n):
            for j in range(i):
                diff = d[i] - d[j]
                if not diff:
                    raise SpectralError(f"repeated diagonal entries at positions "
                                        f"{j} and {i}: {d[i]}")
                if self.mode == "local" and ord_at_one(diff) != 0:
                    raise SpectralError(
                        f"local mode: diagonal difference d[{i}] - d[{j}] = {diff} "
                        "is not a unit at q=1")

    def vector(self, name: str) -> Vector:
        try:
            return self.vectors[name]
        except KeyError:
            raise SpectralError(f"no vector named {name!r}; known: "
                                f"{sorted(self.vectors)}") from None

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "matrix": [[x.format() for x in row] for row in self.matrix],
            "vectors": {k: [x.format() for x in v] for k, v in self.vectors.items()},
            "mode": self.mode,
        }

    @classmethod
    def from_json(cls, data) -> "SpectralProblem":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ParseError(f"problem file is not valid JSON: {exc}") from exc
        try:
            return cls(tuple(data["labels"]),
                       tuple(tuple(str(x) for x in row) for row in data["matrix"]),
                       {k: tuple(str(x) for x in v)
                        for k, v in data.get("vectors", {}).items()},
                       data.get("mode", "field"))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError("problem JSON needs 'labels' and 'matrix'") from exc

    @classmethod
    def load(cls, path) -> "SpectralProblem":
        return cls.from_json(Path(path).read_text())


def mat_mul(a: Sequence[Sequence[QRat]], b: Sequence[Sequence[QRat]]) -> Matrix:
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(m)), QRat(0))
                       for j in range(p)) for i in range(n))


def eigen_decompose(p: SpectralProblem) -> Tuple[Vector, Matrix]:
    """Eigenvalues (the diagonal) and the unit lower triangular P with M P = P D.

    Column j is the eigenvector with pivot coordinate j equal to 1, found by
    back-substitution: v_i = sum_{j <= l < i} M[i][l] v_l / (d_j - d_i).
    """
    p.validate()
    n = p.size
    M = p.matrix
    d = p.diagonal()
    cols = []
    for j in range(n):
        v = [QRat(0)] * n
        v[j] = QRat(1)
        for i in range(j + 1, n):
            acc = sum((M[i][l] * v[l] for l in range(j, i)), QRat(0))
            v[i] = acc / (d[j] - d[i])
        cols.append(v)
    P = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return d, P


def inverse_unit_lower(P: Matrix) -> Matrix:
    """Inverse of a unit lower triangular matrix by forward substitution."""
    n = len(P)
    cols = []
    for j in range(n):
        x = [QRat(0)] * n
        x[j] = QRat(1)
        for i in range(j + 1, n):
            x[i] = -sum((P[i][l] * x[l] for l in range(j, i)), QRat(0))
        cols.append(x)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _solve_unit_lower(P: Matrix, v: Sequence[QRat]) -> List[QRat]:
    c = []
    for i in range(len(P)):
        c.append(v[i] - sum((P[i][l] * c[l] for l in range(i)), QRat(0)))
    return c


def decompose_vector(p: SpectralProblem, v) -> Dict[QRat, Vector]:
    """Eigencomponents of v, keyed by eigenvalue in basis order; they sum to v."""
    v = tuple(_q(x) for x in (p.vector(v) if isinstance(v, str) else v))
    if len(v) != p.size:
        raise SpectralError(f"vector has length {len(v)}, expected {p.size}")
    d, P = eigen_decompose(p)
    c = _solve_unit_lower(P, v)
    return {d[j]: tuple(c[j] * P[i][j] for i in range(p.size)) for j in range(p.size)}


def match_partition(value: QRat, degree_bound: int) -> Optional[tuple]:
    """The partition lambda with prod (q^{lambda_i} - 1) == value, |lambda| <= bound."""
    value = _q(value)
    for n in range(degree_bound + 1):
        for lam in partitions(n):
            if partition_poly(lam) == value:
                return lam
    return None


def ord_grouped_sums(p: SpectralProblem, v) -> Dict[int, Vector]:
    """Sum of the eigencomponents of v whose eigenvalues vanish to order r at q=1."""
    # a zero eigenvalue vanishes to infinite order and gets the key None
    groups: Dict[Optional[int], list] = defaultdict(lambda: [QRat(0)] * p.size)
    for lam, comp in decompose_vector(p, v).items():
        acc = groups[ord_at_one(lam) if lam else None]
        for i, x in enumerate(comp):
            acc[i] = acc[i] + x
    order = sorted(groups, key=lambda r: (r is None, r or 0))
    return {r: tuple(groups[r]) for r in order}


def ord_group_rationality(p: SpectralProblem, v) -> bool:
    """True iff every ord-grouped sum of eigencomponents has constant entries."""
    return all(x.is_constant() for vec in ord_grouped_sums(p, v).values() for x in vec)


def local_soundness(p: SpectralProblem) -> bool:
    """Every entry of P and its inverse is regular at q = 1."""
    _, P = eigen_decompose(p)
    return all(is_regular(x) for M in (P, inverse_unit_lower(P)) for row in M for x in row)
