"""Finite kernels and the cycle/gauge/cocycle helpers built on them.

A kernel is a function of two points from a finite labelled set, stored as a
square matrix of exact field values.  Everything downstream compares products
of entries along oriented cycles and principal minors of the matrix, so this
module also owns cycles, diagonal gauges and two-point ratio tables.
"""

from __future__ import annotations

import itertools

from .errors import FieldMismatch, LabelMismatch
from .fields import determinant, field_from_doc


class Cycle:
    """An oriented cycle of pairwise-distinct vertex indices.

    Stored rotated so the smallest vertex comes first: (2, 0, 1) and
    (0, 1, 2) are the same cycle, (0, 2, 1) is its reversal.  Length-1 and
    length-2 cycles are allowed; a 1-cycle's only edge is the loop (v, v).
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vs = tuple(vertices)
        if not vs:
            raise ValueError("a cycle needs at least one vertex")
        for v in vs:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"vertices must be nonnegative ints, got {v!r}")
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in cycle {vs!r}")
        low = vs.index(min(vs))
        self.vertices = vs[low:] + vs[:low]

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        """The oriented edges (v0,v1), (v1,v2), ..., (v_last,v0)."""
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def reverse(self):
        return Cycle(self.vertices[::-1])

    def __eq__(self, other):
        return isinstance(other, Cycle) and other.vertices == self.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Cycle({self.vertices!r})"


class Kernel:
    """A labelled square matrix of exact field values."""

    __slots__ = ("field", "labels", "rows", "_index")

    def __init__(self, field, labels, rows):
        labels = tuple(labels)
        if not labels:
            raise ValueError("a kernel needs at least one point")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"labels must be nonempty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        n = len(labels)
        rows = list(rows)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"entries must form an {n} x {n} matrix")
        self.field = field
        self.labels = labels
        self.rows = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        self._index = {lab: i for i, lab in enumerate(labels)}

    @property
    def n(self):
        return len(self.labels)

    def entry(self, i, j):
        return self.rows[i][j]

    def label_index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown label {label!r}") from None

    def principal_minor(self, indices):
        """det of the submatrix on the given distinct point indices.

        The empty index set gives the field's one.
        """
        idx = tuple(indices)
        if len(set(idx)) != len(idx):
            raise ValueError(f"repeated index in {idx!r}")
        for i in idx:
            if not 0 <= i < self.n:
                raise IndexError(f"index {i} out of range for n={self.n}")
        sub = [[self.rows[i][j] for j in idx] for i in idx]
        return determinant(self.field, sub)

    def transpose(self):
        n = self.n
        return Kernel(self.field, self.labels,
                      [[self.rows[j][i] for j in range(n)] for i in range(n)])

    def conjugate(self, gauge):
        """The kernel (x, y) -> g(x) K(x, y) g(y)^(-1)."""
        if gauge.field != self.field:
            raise FieldMismatch("gauge and kernel live over different fields")
        if gauge.labels != self.labels:
            raise LabelMismatch("gauge and kernel have different labels")
        f = self.field
        n = self.n
        inv = [f.inv(gauge.values[j]) for j in range(n)]
        return Kernel(f, self.labels,
                      [[f.mul(f.mul(gauge.values[i], self.rows[i][j]), inv[j])
                        for j in range(n)] for i in range(n)])

    def apply_cocycle(self, cocycle):
        """Entrywise product (x, y) -> c(x, y) K(x, y)."""
        if cocycle.field != self.field:
            raise FieldMismatch("cocycle and kernel live over different fields")
        if cocycle.n != self.n:
            raise LabelMismatch(
                f"cocycle is {cocycle.n}-point, kernel is {self.n}-point")
        f = self.field
        n = self.n
        return Kernel(f, self.labels,
                      [[f.mul(cocycle.rows[i][j], self.rows[i][j])
                        for j in range(n)] for i in range(n)])

    def to_doc(self):
        f = self.field
        return {
            "field": f.to_doc(),
            "labels": list(self.labels),
            "entries": [[f.format(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_doc(cls, doc):
        if not isinstance(doc, dict):
            raise ValueError("kernel document must be a JSON object")
        for key in ("field", "labels", "entries"):
            if key not in doc:
                raise ValueError(f"kernel document lacks {key!r}")
        field = field_from_doc(doc["field"])
        labels = doc["labels"]
        entries = doc["entries"]
        if not isinstance(entries, list):
            raise ValueError("entries must be a list of rows")
        rows = [[field.parse(cell) for cell in row] for row in entries]
        return cls(field, labels, rows)

    def __eq__(self, other):
        return (isinstance(other, Kernel) and other.field == self.field
                and other.labels == self.labels and other.rows == self.rows)

    def __hash__(self):
        return hash((self.field, self.labels, self.rows))

    def __repr__(self):
        return f"Kernel(n={self.n}, field={self.field!r})"


class Gauge:
    """A nonzero scalar attached to each labelled point."""

    __slots__ = ("field", "labels", "values")

    def __init__(self, field, labels, values):
        labels = tuple(labels)
        vals = tuple(field.coerce(v) for v in values)
        if len(vals) != len(labels):
            raise ValueError("one gauge value per label required")
        for lab, v in zip(labels, vals):
            if field.is_zero(v):
                raise ValueError(f"gauge value at {lab!r} is zero")
        self.field = field
        self.labels = labels
        self.values = vals

    def to_doc(self):
        f = self.field
        return {lab: f.format(v) for lab, v in zip(self.labels, self.values)}

    def __eq__(self, other):
        return (isinstance(other, Gauge) and other.field == self.field
                and other.labels == self.labels and other.values == self.values)

    def __repr__(self):
        return f"Gauge(n={len(self.labels)}, field={self.field!r})"


class Cocycle:
    """A two-point table c(x, y), candidate for the multiplicative cocycle laws.

    Construction does not validate the laws; ``recovery.verify_cocycle``
    does.  ``from_gauge`` builds the table c(x, y) = g(x) / g(y), which
    satisfies them by construction.
    """

    __slots__ = ("field", "labels", "rows")

    def __init__(self, field, labels, rows):
        labels = tuple(labels)
        n = len(labels)
        rows = list(rows)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"cocycle table must be {n} x {n}")
        self.field = field
        self.labels = labels
        self.rows = tuple(tuple(field.coerce(v) for v in row) for row in rows)

    @property
    def n(self):
        return len(self.labels)

    def entry(self, i, j):
        return self.rows[i][j]

    @classmethod
    def from_gauge(cls, gauge):
        f = gauge.field
        n = len(gauge.labels)
        inv = [f.inv(v) for v in gauge.values]
        return cls(f, gauge.labels,
                   [[f.mul(gauge.values[i], inv[j]) for j in range(n)]
                    for i in range(n)])

    def __repr__(self):
        return f"Cocycle(n={self.n}, field={self.field!r})"


def require_same_points(k, q):
    """Shared precondition for every two-kernel operation."""
    if k.field != q.field:
        raise FieldMismatch(f"kernels over {k.field!r} and {q.field!r}")
    if k.labels != q.labels:
        raise LabelMismatch("kernels are over different labelled point sets")


def cycle_product(k, cycle):
    """Product of kernel entries along the cycle's oriented edges."""
    for v in cycle.vertices:
        if v >= k.n:
            raise IndexError(f"vertex {v} out of range for n={k.n}")
    f = k.field
    out = f.one
    for a, b in cycle.edges():
        out = f.mul(out, k.rows[a][b])
    return out


def reversed_cycle_product(k, cycle):
    """Same as cycle_product with every edge traversed backwards."""
    for v in cycle.vertices:
        if v >= k.n:
            raise IndexError(f"vertex {v} out of range for n={k.n}")
    f = k.field
    out = f.one
    for a, b in cycle.edges():
        out = f.mul(out, k.rows[b][a])
    return out


def enumerate_3cycles(n):
    """Both orientations of every 3-subset of range(n), lexicographically.

    Returns 2 * C(n, 3) cycles sorted by their normalized vertex tuples.
    """
    if n < 3:
        raise ValueError(f"need at least 3 points, got n={n}")
    cycles = []
    for a, b, c in itertools.combinations(range(n), 3):
        cycles.append(Cycle((a, b, c)))
        cycles.append(Cycle((a, c, b)))
    cycles.sort(key=lambda cy: cy.vertices)
    return cycles
