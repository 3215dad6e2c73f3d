"""Sparse exact linear algebra over a scalar field from cgva.fields.

Vectors (and every other linear combination in the package: Lie algebra
elements, symmetric tensors, vertex algebra states) are LinComb objects,
dicts from hashable keys to nonzero scalars.  Matrices are dicts from
(row, col) to nonzero scalars.

Elimination processes columns left to right, so pivot columns are always
the leftmost independent set; inside a column the sparsest eligible row
wins, with the row index as tie-break.  Before eliminating, a matrix is
split into connected components of its nonzero pattern; components do not
interact, so rank and kernel are assembled from the pieces.  The split is
what keeps large block-diagonal instances (Chevalley bases sorted by
weight) cheap without any special-casing.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .fields import FieldError


class LinComb:
    """A finite linear combination of hashable keys with nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {k: v for k, v in dict(terms).items() if v}

    @classmethod
    def term(cls, key, coeff) -> "LinComb":
        x = cls.__new__(cls)
        x.terms = {key: coeff} if coeff else {}
        return x

    @classmethod
    def _raw(cls, terms: dict) -> "LinComb":
        # internal: caller guarantees no zero values
        x = cls.__new__(cls)
        x.terms = terms
        return x

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def get(self, key, default=0):
        return self.terms.get(key, default)

    def __getitem__(self, key):
        return self.terms.get(key, 0)

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return LinComb._raw(out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = -v
            else:
                w = w - v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return LinComb._raw(out)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "LinComb":
        # c may be a plain int; over a prime field it can be a multiple of p,
        # truthy as an int but zero once reduced, so filter the products.
        if not c:
            return LinComb()
        out = {}
        for k, v in self.terms.items():
            w = c * v
            if w:
                out[k] = w
        return LinComb._raw(out)

    def map_keys(self, f) -> "LinComb":
        out = {}
        for k, v in self.terms.items():
            k2 = f(k)
            w = out.get(k2)
            out[k2] = v if w is None else w + v
        return LinComb(out)

    def __repr__(self) -> str:
        if not self.terms:
            return "LinComb(0)"
        parts = " + ".join(f"{v}*{k}" for k, v in sorted(self.terms.items(), key=repr))
        return f"LinComb({parts})"


def lincomb_sum(items: Iterable[LinComb]) -> LinComb:
    out: dict = {}
    for x in items:
        for k, v in x.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w:
                    out[k] = w
                else:
                    del out[k]
    return LinComb._raw(out)


class Matrix:
    """Sparse exact matrix with entries in a fixed field."""

    __slots__ = ("nrows", "ncols", "field", "entries")

    def __init__(self, nrows: int, ncols: int, field, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.entries = {k: v for k, v in dict(entries or {}).items() if v}

    @classmethod
    def identity(cls, n: int, field) -> "Matrix":
        one = field.one
        return cls(n, n, field, {(i, i): one for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int, field) -> "Matrix":
        return cls(nrows, ncols, field, {})

    @classmethod
    def from_dense(cls, rows, field) -> "Matrix":
        entries = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(len(rows), len(rows[0]) if rows else 0, field, entries)

    @classmethod
    def from_columns(cls, cols: list[LinComb], nrows: int, field) -> "Matrix":
        entries = {}
        for c, col in enumerate(cols):
            for r, v in col.items():
                entries[(r, c)] = v
        return cls(nrows, len(cols), field, entries)

    def get(self, r: int, c: int):
        return self.entries.get((r, c), self.field.zero)

    def row(self, r: int) -> LinComb:
        return LinComb({c: v for (rr, c), v in self.entries.items() if rr == r})

    def column(self, c: int) -> LinComb:
        return LinComb({r: v for (r, cc), v in self.entries.items() if cc == c})

    def rows_as_dicts(self) -> list[dict]:
        rows: list[dict] = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, self.field,
                      {(c, r): v for (r, c), v in self.entries.items()})

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return Matrix(self.nrows, self.ncols, self.field, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-self.field.one)

    def __neg__(self) -> "Matrix":
        return self.scale(-self.field.one)

    def scale(self, c) -> "Matrix":
        if not c:
            return Matrix(self.nrows, self.ncols, self.field, {})
        return Matrix(self.nrows, self.ncols, self.field,
                      {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        other_rows = other.rows_as_dicts()
        out: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in other_rows[k].items():
                key = (r, c)
                acc = out.get(key)
                if acc is None:
                    out[key] = v * w
                else:
                    acc = acc + v * w
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        return Matrix(self.nrows, other.ncols, self.field, out)

    def mul_vec(self, vec: LinComb) -> LinComb:
        out: dict = {}
        for (r, c), v in self.entries.items():
            w = vec.terms.get(c)
            if w is None:
                continue
            acc = out.get(r)
            if acc is None:
                out[r] = v * w
            else:
                acc = acc + v * w
                if acc:
                    out[r] = acc
                else:
                    del out[r]
        return LinComb._raw(out)

    def trace(self):
        t = self.field.zero
        for i in range(min(self.nrows, self.ncols)):
            v = self.entries.get((i, i))
            if v is not None:
                t = t + v
        return t

    def is_symmetric(self) -> bool:
        for (r, c), v in self.entries.items():
            if self.entries.get((c, r)) != v:
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) \
            and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, frozenset(self.entries.items())))

    def _check_shape(self, other: "Matrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("dimension mismatch")

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, {len(self.entries)} nonzero)"


def _split_components(rows: list[dict], ncols: int) -> list[tuple[list[int], list[dict]]]:
    """Split the nonzero pattern into connected components.

    Returns (columns, rows) pairs; the column lists are sorted and disjoint.
    Columns with no nonzero entry are not listed (they are trivially kernel
    directions).  Each nonempty row lands in exactly one component.
    """
    parent = list(range(ncols))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen = [False] * ncols
    for row in rows:
        it = iter(row)
        try:
            first = next(it)
        except StopIteration:
            continue
        seen[first] = True
        ra = find(first)
        for c in it:
            seen[c] = True
            rb = find(c)
            if ra != rb:
                parent[rb] = ra
                ra = find(ra)
    cols_of: dict[int, list[int]] = {}
    for c in range(ncols):
        if seen[c]:
            cols_of.setdefault(find(c), []).append(c)
    rows_of: dict[int, list[dict]] = {root: [] for root in cols_of}
    for row in rows:
        if row:
            rows_of[find(next(iter(row)))].append(row)
    return [(sorted(cols_of[root]), rows_of[root])
            for root in sorted(cols_of, key=lambda r: min(cols_of[r]))]


def _reduce_rows(rows: list[dict], cols: list[int], field,
                 reduced: bool = True) -> tuple[list[int], list[dict]]:
    """Row echelon form of the given rows restricted to the given column order.

    Mutates nothing; returns (pivot_cols, pivot_rows) with pivot entries 1
    and pivots increasing in the order of `cols`.  With reduced=True (the
    default) pivot columns are also cleared from the other pivot rows, i.e.
    the result is the RREF.
    """
    active = [dict(r) for r in rows if r]
    piv_cols: list[int] = []
    piv_rows: list[dict] = []
    for col in cols:
        best = -1
        best_sz = -1
        for idx, row in enumerate(active):
            if col in row:
                sz = len(row)
                if best < 0 or sz < best_sz:
                    best, best_sz = idx, sz
        if best < 0:
            continue
        prow = active.pop(best)
        inv = field.one / prow[col]
        if inv != field.one:
            prow = {c: inv * v for c, v in prow.items()}
        for idx in range(len(active)):
            row = active[idx]
            f = row.get(col)
            if f is None:
                continue
            new = dict(row)
            for c, v in prow.items():
                w = new.get(c)
                if w is None:
                    new[c] = -f * v
                else:
                    w = w - f * v
                    if w:
                        new[c] = w
                    else:
                        del new[c]
            active[idx] = new
        piv_cols.append(col)
        piv_rows.append(prow)
    if not reduced:
        return piv_cols, piv_rows
    # back substitution: clear each pivot column from the rows above it
    for k in range(len(piv_rows) - 1, -1, -1):
        col = piv_cols[k]
        prow = piv_rows[k]
        for l in range(k):
            row = piv_rows[l]
            f = row.get(col)
            if f is None:
                continue
            new = dict(row)
            for c, v in prow.items():
                w = new.get(c)
                if w is None:
                    new[c] = -f * v
                else:
                    w = w - f * v
                    if w:
                        new[c] = w
                    else:
                        del new[c]
            piv_rows[l] = new
    return piv_cols, piv_rows


def row_reduce(m: Matrix) -> tuple[list[int], list[LinComb]]:
    """Reduced row echelon form of m.  Returns (pivot_cols, rows).

    Assembled from connected components; their column supports are disjoint,
    so the merged rows, sorted by pivot, are the RREF of the whole matrix.
    """
    pairs: list[tuple[int, dict]] = []
    for cols, sub in _split_components(m.rows_as_dicts(), m.ncols):
        piv_cols, piv_rows = _reduce_rows(sub, cols, m.field)
        pairs.extend(zip(piv_cols, piv_rows))
    pairs.sort(key=lambda pc: pc[0])
    return [p for p, _ in pairs], [LinComb._raw(r) for _, r in pairs]


def matrix_rank(m: Matrix) -> int:
    rank = 0
    for cols, sub in _split_components(m.rows_as_dicts(), m.ncols):
        piv, _ = _reduce_rows(sub, cols, m.field, reduced=False)
        rank += len(piv)
    return rank


def rank_and_kernel(m: Matrix) -> tuple[int, "Subspace"]:
    """Rank of m and its right kernel as a canonical (RREF-basis) subspace."""
    field = m.field
    one = field.one
    touched: set[int] = set()
    kernel_vecs: list[LinComb] = []
    rank = 0
    for cols, sub in _split_components(m.rows_as_dicts(), m.ncols):
        touched.update(cols)
        piv_cols, piv_rows = _reduce_rows(sub, cols, field)
        rank += len(piv_cols)
        piv_set = set(piv_cols)
        piv_index = {c: i for i, c in enumerate(piv_cols)}
        comp_kernel: list[dict] = []
        for free in cols:
            if free in piv_set:
                continue
            vec = {free: one}
            for c, i in piv_index.items():
                v = piv_rows[i].get(free)
                if v is not None:
                    vec[c] = -v
            comp_kernel.append(vec)
        if comp_kernel:
            # canonicalize this component's kernel basis
            kp, kr = _reduce_rows(comp_kernel, cols, field)
            kernel_vecs.extend(LinComb._raw(r) for r in kr)
    for c in range(m.ncols):
        if c not in touched:
            kernel_vecs.append(LinComb.term(c, one))
    kernel_vecs.sort(key=lambda v: min(v.keys()))
    return rank, Subspace._from_rref(kernel_vecs, m.ncols, field)


def solve(m: Matrix, b: LinComb) -> Optional[LinComb]:
    """One solution x of m x = b, or None if the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    rows = m.rows_as_dicts()
    aug = m.ncols  # the appended right-hand-side column
    for r, v in b.items():
        if not (0 <= r < m.nrows):
            raise ValueError("dimension mismatch")
        rows[r][aug] = v
    piv_cols, piv_rows = _reduce_rows(rows, list(range(m.ncols + 1)), m.field)
    sol: dict = {}
    for c, row in zip(piv_cols, piv_rows):
        if c == aug:
            return None
        v = row.get(aug)
        if v is not None:
            sol[c] = v
    return LinComb._raw(sol)


def matrix_inverse(m: Matrix) -> Optional[Matrix]:
    """Inverse of a square matrix, or None if singular."""
    if m.nrows != m.ncols:
        raise ValueError("dimension mismatch")
    n = m.nrows
    rows = m.rows_as_dicts()
    for r in range(n):
        rows[r][n + r] = m.field.one
    piv_cols, piv_rows = _reduce_rows(rows, list(range(2 * n)), m.field)
    if piv_cols[:n] != list(range(n)):
        return None
    entries = {}
    for r, row in enumerate(piv_rows[:n]):
        for c, v in row.items():
            if c >= n:
                entries[(r, c - n)] = v
    return Matrix(n, n, m.field, entries)


class Subspace:
    """A subspace of field^n, stored as an RREF basis with increasing pivots."""

    __slots__ = ("ambient_dim", "field", "basis", "_pivots")

    def __init__(self, vectors: Iterable[LinComb], ambient_dim: int, field):
        rows = [dict(v.terms) for v in vectors]
        _, rref = _reduce_rows(rows, list(range(ambient_dim)), field)
        self.ambient_dim = ambient_dim
        self.field = field
        self.basis = tuple(LinComb._raw(r) for r in rref)
        self._pivots = tuple(min(b.keys()) for b in self.basis)

    @classmethod
    def _from_rref(cls, basis: list[LinComb], ambient_dim: int, field) -> "Subspace":
        s = cls.__new__(cls)
        s.ambient_dim = ambient_dim
        s.field = field
        s.basis = tuple(basis)
        s._pivots = tuple(min(b.keys()) for b in basis)
        return s

    @classmethod
    def zero(cls, ambient_dim: int, field) -> "Subspace":
        return cls._from_rref([], ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def reduce(self, vec: LinComb) -> LinComb:
        """Canonical representative of vec modulo this subspace.

        Linear and idempotent; the kernel of the map is exactly the subspace.
        """
        out = vec
        for p, b in zip(self._pivots, self.basis):
            c = out.terms.get(p)
            if c:
                out = out - b.scale(c)
        return out

    def contains(self, vec: LinComb) -> bool:
        return not self.reduce(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def add(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(list(self.basis) + list(other.basis), self.ambient_dim, self.field)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: RREF of [[b, b], [c, 0]]; rows with zero left half
        carry the intersection in their right half."""
        self._check(other)
        n = self.ambient_dim
        rows: list[dict] = []
        for b in self.basis:
            row = dict(b.terms)
            for k, v in b.terms.items():
                row[k + n] = v
            rows.append(row)
        for c in other.basis:
            rows.append(dict(c.terms))
        _, rref = _reduce_rows(rows, list(range(2 * n)), self.field)
        inter = []
        for row in rref:
            if min(row.keys()) >= n:
                inter.append(LinComb._raw({k - n: v for k, v in row.items()}))
        return Subspace(inter, n, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValueError("dimension mismatch")

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def is_symmetric_map(m: Matrix, form: Matrix) -> bool:
    """Whether m is self-adjoint for the symmetric bilinear form.

    The form must be symmetric and nondegenerate; anything else is a usage
    error, not a "False".
    """
    _check_form(m, form)
    return (form @ m) == (m.transpose() @ form)


def is_skew_symmetric_map(m: Matrix, form: Matrix) -> bool:
    """Whether m is skew-adjoint for the symmetric bilinear form."""
    _check_form(m, form)
    return (form @ m) == -(m.transpose() @ form)


def _check_form(m: Matrix, form: Matrix) -> None:
    if m.nrows != m.ncols or form.nrows != form.ncols or m.nrows != form.nrows:
        raise ValueError("dimension mismatch")
    if not form.is_symmetric():
        raise FieldError("form is not symmetric")
    if matrix_rank(form) != form.nrows:
        raise FieldError("form is degenerate")
