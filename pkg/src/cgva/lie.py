"""Finite-dimensional Lie algebras with an invariant symmetric bilinear form.

An algebra is a basis with structure constants, stored only for i < j
(antisymmetry fills in the rest), plus a form matrix.  Built-in classical
families are realized by integer matrices and their structure constants are
computed over Q once, then mapped into the requested field; exceptional
algebras come in through JSON files only.

Conventions.  Basis indices are 0-based everywhere; JSON files use the
same convention.  The Killing form is K(a, b) = tr(ad_a ad_b).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Union

from .fields import QQ, FieldError, Rationals, _RATIONAL_TYPES, field_spec_string
from .linalg import (LinComb, Matrix, lincomb_sum, matrix_inverse, matrix_rank,
                     rank_and_kernel, Subspace)


class AlgebraError(ValueError):
    """Malformed algebra data or a failed structural validation."""


DUAL_COXETER = {"sl": lambda n: n, "so": lambda n: n - 2, "sp": lambda n: n // 2 + 1}


@dataclass
class ValidationReport:
    """Outcome of the structural and admissibility checks."""

    jacobi_ok: bool
    jacobi_witness: Optional[tuple] = None
    form_symmetric_ok: bool = True
    invariance_ok: bool = True
    invariance_witness: Optional[tuple] = None
    nondegenerate_ok: bool = True
    center_dim: int = 0
    characteristic: int = 0

    @property
    def structure_ok(self) -> bool:
        return self.jacobi_ok and self.form_symmetric_ok and self.invariance_ok

    @property
    def admissible(self) -> bool:
        """Whether the algebra meets the running assumptions of the main
        construction: valid structure, nondegenerate form, trivial center
        (characteristic 2 is already unrepresentable)."""
        return self.structure_ok and self.nondegenerate_ok and self.center_dim == 0

    def to_dict(self) -> dict:
        return {
            "jacobi_ok": self.jacobi_ok,
            "jacobi_witness": list(self.jacobi_witness) if self.jacobi_witness else None,
            "form_symmetric_ok": self.form_symmetric_ok,
            "invariance_ok": self.invariance_ok,
            "invariance_witness": (list(self.invariance_witness)
                                   if self.invariance_witness else None),
            "nondegenerate_ok": self.nondegenerate_ok,
            "center_dim": self.center_dim,
            "characteristic": self.characteristic,
            "structure_ok": self.structure_ok,
            "admissible": self.admissible,
        }


class LieAlgebra:
    """A Lie algebra over an exact field, with a chosen bilinear form."""

    def __init__(self, field, labels: list[str], brackets: dict, form: Matrix,
                 name: str = "custom"):
        self.field = field
        self.dim = len(labels)
        self.labels = list(labels)
        if len(set(self.labels)) != self.dim:
            raise AlgebraError("duplicate basis labels")
        self.name = name
        self.brackets = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < j < self.dim):
                raise AlgebraError(
                    f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim "
                    "(antisymmetry determines the rest)")
            vv = v if isinstance(v, LinComb) else LinComb(v)
            if vv:
                self.brackets[(i, j)] = vv
        if form.nrows != self.dim or form.ncols != self.dim or form.field != field:
            raise AlgebraError("form matrix does not match the basis")
        self.form = form
        self.label_index = {l: i for i, l in enumerate(self.labels)}
        self._ads: list[Optional[Matrix]] = [None] * self.dim
        self._killing: Optional[Matrix] = None
        self._validation: Optional[ValidationReport] = None
        self._center: Optional[Subspace] = None

    # -- basic structure ---------------------------------------------------

    def basis_vector(self, i: int) -> LinComb:
        return LinComb.term(i, self.field.one)

    def bracket_basis(self, i: int, j: int) -> LinComb:
        if i == j:
            return LinComb()
        if i < j:
            return self.brackets.get((i, j), LinComb())
        v = self.brackets.get((j, i))
        return -v if v is not None else LinComb()

    def bracket(self, a: LinComb, b: LinComb) -> LinComb:
        out = LinComb()
        for i, ca in a.items():
            for j, cb in b.items():
                if i == j:
                    continue
                v = self.bracket_basis(i, j)
                if v:
                    out = out + v.scale(ca * cb)
        return out

    def ad_basis(self, i: int) -> Matrix:
        m = self._ads[i]
        if m is None:
            entries = {}
            for j in range(self.dim):
                for k, c in self.bracket_basis(i, j).items():
                    entries[(k, j)] = c
            m = Matrix(self.dim, self.dim, self.field, entries)
            self._ads[i] = m
        return m

    def ad(self, a: LinComb) -> Matrix:
        out = Matrix.zero(self.dim, self.dim, self.field)
        for i, c in a.items():
            out = out + self.ad_basis(i).scale(c)
        return out

    def form_apply(self, a: LinComb) -> LinComb:
        """The covector kappa(a, .) as a coordinate vector (form is symmetric)."""
        return self.form.mul_vec(a)

    def form_value(self, a: LinComb, b: LinComb):
        out = self.field.zero
        ga = self.form_apply(a)
        for i, c in b.items():
            v = ga.terms.get(i)
            if v is not None:
                out = out + v * c
        return out

    def killing(self) -> Matrix:
        if self._killing is None:
            ads = [self.ad_basis(i) for i in range(self.dim)]
            entries = {}
            for i in range(self.dim):
                rows_i = ads[i].entries
                for j in range(i, self.dim):
                    other = ads[j].entries
                    t = self.field.zero
                    for (p, q), v in rows_i.items():
                        w = other.get((q, p))
                        if w is not None:
                            t = t + v * w
                    if t:
                        entries[(i, j)] = t
                        if i != j:
                            entries[(j, i)] = t
            self._killing = Matrix(self.dim, self.dim, self.field, entries)
        return self._killing

    def center(self) -> Subspace:
        if self._center is None:
            cols = [LinComb({p * self.dim + q: v
                             for (p, q), v in self.ad_basis(i).entries.items()})
                    for i in range(self.dim)]
            m = Matrix.from_columns(cols, self.dim * self.dim, self.field)
            _, ker = rank_and_kernel(m)
            self._center = ker
        return self._center

    # -- validation --------------------------------------------------------

    def validate(self) -> ValidationReport:
        if self._validation is not None:
            return self._validation
        jac_ok, jac_wit = self._check_jacobi()
        sym_ok = self.form.is_symmetric()
        inv_ok, inv_wit = self._check_invariance()
        nondeg = matrix_rank(self.form) == self.dim
        report = ValidationReport(
            jacobi_ok=jac_ok,
            jacobi_witness=jac_wit,
            form_symmetric_ok=sym_ok,
            invariance_ok=inv_ok,
            invariance_witness=inv_wit,
            nondegenerate_ok=nondeg,
            center_dim=self.center().dim,
            characteristic=self.field.char,
        )
        self._validation = report
        return report

    def _check_jacobi(self) -> tuple[bool, Optional[tuple]]:
        for i in range(self.dim):
            adi = self.ad_basis(i)
            for j in range(i + 1, self.dim):
                adj = self.ad_basis(j)
                lhs = self.ad(self.bracket_basis(i, j))
                rhs = adi @ adj - adj @ adi
                if lhs != rhs:
                    diff = lhs - rhs
                    k = min(q for (_, q) in diff.entries)
                    return False, (self.labels[i], self.labels[j], self.labels[k])
        return True, None

    def _check_invariance(self) -> tuple[bool, Optional[tuple]]:
        # kappa([a,b],c) + kappa(b,[a,c]) = 0 for all basis triples is
        # equivalent to every ad_a being skew for kappa
        g = self.form
        for i in range(self.dim):
            adi = self.ad_basis(i)
            lhs = g @ adi
            rhs = adi.transpose() @ g
            if lhs != -rhs:
                diff = lhs + rhs
                (j, k) = min(diff.entries)
                return False, (self.labels[i], self.labels[k], self.labels[j])
        return True, None

    # -- Casimir -----------------------------------------------------------

    def gram_inverse(self) -> Matrix:
        inv = matrix_inverse(self.form)
        if inv is None:
            raise AlgebraError("bilinear form is degenerate; no dual basis")
        return inv

    def casimir_element(self) -> LinComb:
        """The Casimir as a symmetric 2-tensor: sum_i e_i u^i expressed on the
        basis {e_i e_j : i >= j} of S^2 g (keys are (i, j) pairs, i >= j)."""
        ginv = self.gram_inverse()
        out: dict = {}
        for (j, i), c in ginv.entries.items():
            key = (i, j) if i >= j else (j, i)
            w = out.get(key)
            out[key] = c if w is None else w + c
        return LinComb(out)

    def casimir_endomorphism(self) -> Matrix:
        """sum_i ad(e_i) ad(u^i) for dual bases e_i, u^i of the form."""
        ginv = self.gram_inverse()
        out = Matrix.zero(self.dim, self.dim, self.field)
        for i in range(self.dim):
            dual = LinComb({j: v for (j, ii), v in ginv.entries.items() if ii == i})
            out = out + self.ad_basis(i) @ self.ad(dual)
        return out

    def casimir_scalar(self):
        """The scalar s with Casimir = s * Id, or None if not scalar."""
        m = self.casimir_endomorphism()
        s = m.get(0, 0)
        if m == Matrix.identity(self.dim, self.field).scale(s):
            return s
        return None

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name}, dim {self.dim} over {self.field!r})"


# -- built-in families -----------------------------------------------------


def _matrix_basis(family: str, n: int) -> tuple[list[str], list[dict]]:
    """Integer matrix realizations; returns (labels, list of {(r,c): int})."""
    if family == "sl":
        if n < 2:
            raise AlgebraError("sl(n) needs n >= 2")
        labels, mats = [], []
        for i in range(n):
            for j in range(i + 1, n):
                labels.append(f"E{i + 1}{j + 1}")
                mats.append({(i, j): 1})
        for k in range(n - 1):
            labels.append(f"H{k + 1}")
            mats.append({(k, k): 1, (k + 1, k + 1): -1})
        for i in range(1, n):
            for j in range(i):
                labels.append(f"E{i + 1}{j + 1}")
                mats.append({(i, j): 1})
        if n == 2:
            labels = ["e", "h", "f"]
        return labels, mats
    if family == "so":
        if n < 3:
            raise AlgebraError("so(n) needs n >= 3")
        labels, mats = [], []
        for i in range(n):
            for j in range(i + 1, n):
                labels.append(f"F{i + 1}{j + 1}")
                mats.append({(i, j): 1, (j, i): -1})
        return labels, mats
    if family == "sp":
        if n < 2 or n % 2:
            raise AlgebraError("sp(n) needs even n >= 2")
        m = n // 2
        labels, mats = [], []
        for i in range(m):
            for j in range(m):
                labels.append(f"A{i + 1}{j + 1}")
                mats.append({(i, j): 1, (m + j, m + i): -1})
        for i in range(m):
            for j in range(i, m):
                labels.append(f"B{i + 1}{j + 1}")
                mats.append({(i, m + j): 1, (j, m + i): 1} if i != j else {(i, m + i): 1})
        for i in range(m):
            for j in range(i, m):
                labels.append(f"C{i + 1}{j + 1}")
                mats.append({(m + i, j): 1, (m + j, i): 1} if i != j else {(m + i, i): 1})
        return labels, mats
    raise AlgebraError(f"unknown family {family!r} (expected sl, so or sp)")


def _mat_commutator(x: dict, y: dict) -> dict:
    out: dict = {}
    ycols: dict = {}
    for (r, c), v in y.items():
        ycols.setdefault(r, []).append((c, v))
    xcols: dict = {}
    for (r, c), v in x.items():
        xcols.setdefault(r, []).append((c, v))
    for (r, k), v in x.items():
        for c, w in ycols.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) + v * w
    for (r, k), v in y.items():
        for c, w in xcols.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) - v * w
    return {k: v for k, v in out.items() if v}


def _structure_constants(mats: list[dict]) -> dict:
    """Brackets of all basis pairs, as Fraction coordinates in the basis."""
    from .linalg import solve

    size = 1 + max(max(r, c) for m in mats for (r, c) in m)
    cols = [LinComb({r * size + c: Fraction(v) for (r, c), v in m.items()}) for m in mats]
    span = Matrix.from_columns(cols, size * size, QQ)
    out = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            comm = _mat_commutator(mats[i], mats[j])
            if not comm:
                continue
            b = LinComb({r * size + c: Fraction(v) for (r, c), v in comm.items()})
            coords = solve(span, b)
            if coords is None:
                raise AlgebraError("commutator left the span of the basis")
            out[(i, j)] = coords
    return out


def builtin(family: str, n: int, field=QQ,
            form: Union[str, Fraction, Matrix] = "dual_coxeter") -> LieAlgebra:
    """A classical algebra sl(n), so(n) or sp(n) (n = matrix size).

    form: "killing", "dual_coxeter" (Killing scaled by 1/(2 h-vee), the
    default), an explicit Fraction scale applied to Killing, or an explicit
    form Matrix over the target field.
    """
    labels, mats = _matrix_basis(family, n)
    consts = _structure_constants(mats)
    rational = LieAlgebra(QQ, labels, consts, Matrix.zero(len(labels), len(labels), QQ),
                          name=f"{family}{n}")
    killing_q = rational.killing()

    def to_field(v: Fraction):
        return field.from_fraction(v)

    brackets_f = {k: LinComb({i: to_field(c) for i, c in v.items()})
                  for k, v in consts.items()}
    if isinstance(form, Matrix):
        form_f = form
    else:
        if form == "killing":
            scale = Fraction(1)
        elif form == "dual_coxeter":
            scale = Fraction(1, 2 * DUAL_COXETER[family](n))
        elif isinstance(form, _RATIONAL_TYPES):
            scale = form
        else:
            raise AlgebraError(f"unknown form spec {form!r}")
        try:
            form_f = Matrix(len(labels), len(labels), field,
                            {k: to_field(v * scale) for k, v in killing_q.entries.items()})
        except FieldError as exc:
            raise AlgebraError(
                f"form scale {scale} is not defined over {field!r}: {exc}") from exc
    alg = LieAlgebra(field, labels, brackets_f, form_f, name=f"{family}{n}")
    report = alg.validate()
    if not report.structure_ok:
        raise AlgebraError(f"builtin {family}{n} failed validation: {report.to_dict()}")
    return alg


def abelian(dim: int, field=QQ, form: Optional[Matrix] = None) -> LieAlgebra:
    """An abelian algebra with the identity form (or an explicit one)."""
    if form is None:
        form = Matrix.identity(dim, field)
    labels = [f"x{i + 1}" for i in range(dim)]
    return LieAlgebra(field, labels, {}, form, name=f"abelian{dim}")


_BUILTIN_NAMES = {"sl", "so", "sp"}


def algebra_from_name(name: str, field=QQ,
                      form: Union[str, Fraction, Matrix] = "dual_coxeter") -> LieAlgebra:
    """Resolve a name like "sl2", "so5" or "sp4" to a built-in algebra."""
    for fam in _BUILTIN_NAMES:
        if name.startswith(fam):
            try:
                n = int(name[len(fam):])
            except ValueError:
                break
            return builtin(fam, n, field, form)
    raise AlgebraError(f"unknown builtin algebra {name!r}")


# -- JSON interchange ------------------------------------------------------


def algebra_to_dict(alg: LieAlgebra) -> dict:
    """Canonical JSON-ready form; scalars become exact strings, the bilinear
    form is always materialized as explicit matrix entries."""
    fmt = alg.field.format
    brackets = []
    for (i, j) in sorted(alg.brackets):
        terms = sorted(alg.brackets[(i, j)].items())
        brackets.append([i, j, [[k, fmt(c)] for k, c in terms]])
    entries = [[r, c, fmt(v)] for (r, c), v in sorted(alg.form.entries.items())]
    return {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.labels),
        "brackets": brackets,
        "form": {"type": "matrix", "entries": entries},
    }


def algebra_hash(alg: LieAlgebra) -> str:
    blob = json.dumps(algebra_to_dict(alg), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()[:16]


def save_algebra(alg: LieAlgebra, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(algebra_to_dict(alg), fh, indent=1, sort_keys=True)
        fh.write("\n")


def algebra_from_dict(data: dict, field=QQ) -> LieAlgebra:
    try:
        name = data.get("name", "unnamed")
        dim = data["dim"]
        labels = data["basis"]
        raw_brackets = data["brackets"]
        form_spec = data["form"]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra data: missing {exc}") from exc
    if not isinstance(dim, int) or dim < 0:
        raise AlgebraError("dim must be a nonnegative integer")
    if len(labels) != dim:
        raise AlgebraError(f"basis has {len(labels)} labels but dim = {dim}")
    brackets = {}
    for item in raw_brackets:
        try:
            i, j, terms = item
        except (TypeError, ValueError) as exc:
            raise AlgebraError(f"malformed bracket entry {item!r}") from exc
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < dim):
            raise AlgebraError(
                f"bracket entry ({i},{j}) violates the i < j storage convention "
                "(antisymmetry determines the rest)")
        if (i, j) in brackets:
            raise AlgebraError(f"duplicate bracket entry for ({i},{j})")
        brackets[(i, j)] = LinComb({k: field.from_fraction(Fraction(s))
                                    for k, s in terms})
    ftype = form_spec.get("type")
    if ftype == "matrix":
        entries = {}
        for r, c, s in form_spec["entries"]:
            entries[(r, c)] = field.from_fraction(Fraction(s))
        form = Matrix(dim, dim, field, entries)
        alg = LieAlgebra(field, labels, brackets, form, name=name)
    elif ftype in ("killing", "killing_scaled", "dual_coxeter"):
        if ftype == "killing":
            scale = Fraction(1)
        elif ftype == "killing_scaled":
            scale = Fraction(form_spec["scale"])
        else:
            h = form_spec.get("h_dual")
            if not isinstance(h, int) or h <= 0:
                raise AlgebraError(
                    'form type "dual_coxeter" needs an explicit positive '
                    '"h_dual" entry; arbitrary files cannot infer it')
            scale = Fraction(1, 2 * h)
        tmp = LieAlgebra(field, labels, brackets, Matrix.zero(dim, dim, field), name=name)
        try:
            form = tmp.killing().scale(field.from_fraction(scale))
        except FieldError as exc:
            raise AlgebraError(f"form scale {scale} not defined in this field") from exc
        alg = LieAlgebra(field, labels, brackets, form, name=name)
    else:
        raise AlgebraError(f"unknown form type {ftype!r}")
    report = alg.validate()
    if not report.jacobi_ok:
        raise AlgebraError(
            f"Jacobi identity fails on basis triple {report.jacobi_witness}")
    if not report.form_symmetric_ok:
        raise AlgebraError("bilinear form is not symmetric")
    if not report.invariance_ok:
        raise AlgebraError(
            f"bilinear form is not invariant on basis triple {report.invariance_witness}")
    return alg


def load_algebra(path: str, field=QQ) -> LieAlgebra:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise AlgebraError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path} is not valid JSON: {exc}") from exc
    return algebra_from_dict(data, field)
