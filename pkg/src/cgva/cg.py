"""The Chayet-Garibaldi algebra of a Lie algebra with invariant form.

Elements of S^2 g are LinCombs keyed by pairs (i, j) with i >= j, meaning
the unordered product e_i e_j.  The commutative product on S^2 g is, on
squares,

    aa * bb = a[b,[b,a]] + b[a,[a,b]] + [a,b][a,b] + 2<a,b> ab,

and the associated endomorphism is S(aa) = [a,[a,.]] + 2<a,.>a.  Both are
implemented through their full polarizations (derived once, by expanding
each square into a sum of squares and collecting the multilinear part), so
only divisions by 2 and 4 occur and odd characteristic is fine.

The algebra A itself is the image of S with x * y transported along S; its
coordinates here are taken on the preimages of the leftmost independent
columns of the S-matrix ("pivot monomials").  Well-definedness needs ker S
to be an ideal for *, which build_cg checks exhaustively.
"""

from __future__ import annotations

import random
from typing import Optional

from .fields import QQ
from .lie import LieAlgebra, AlgebraError
from .linalg import LinComb, Matrix, Subspace, lincomb_sum, row_reduce, solve
from .report import SuiteReport

Sym2 = LinComb  # keys: (i, j) pairs with i >= j


def sym2_pairs(dim: int) -> list[tuple[int, int]]:
    """The basis of S^2 g in its fixed order: (i, j), i >= j, lexicographic."""
    return [(i, j) for i in range(dim) for j in range(i + 1)]


def sym2_dim(dim: int) -> int:
    return dim * (dim + 1) // 2


def sym2_index(i: int, j: int) -> int:
    if i < j:
        i, j = j, i
    return i * (i + 1) // 2 + j


def sym2_of_vectors(a: LinComb, b: LinComb) -> Sym2:
    """The product ab in S^2 g of two vectors of g."""
    out: dict = {}
    for i, ca in a.items():
        for j, cb in b.items():
            key = (i, j) if i >= j else (j, i)
            c = ca * cb
            w = out.get(key)
            if w is None:
                out[key] = c
            else:
                w = w + c
                if w:
                    out[key] = w
                else:
                    del out[key]
    return LinComb._raw(out)


def sym2_to_indices(x: Sym2) -> LinComb:
    return x.map_keys(lambda k: sym2_index(*k))


def sym2_square(a: LinComb) -> Sym2:
    return sym2_of_vectors(a, a)


def star_monomials(alg: LieAlgebra, p: tuple[int, int], q: tuple[int, int]) -> Sym2:
    """star of two S^2 g basis monomials, by the polarized closed form."""
    i, j = p
    k, l = q
    x1, x2 = alg.basis_vector(i), alg.basis_vector(j)
    y1, y2 = alg.basis_vector(k), alg.basis_vector(l)
    br = alg.bracket
    half = alg.field.one / 2
    quarter = half * half

    terms = [
        # x-side nested brackets
        sym2_of_vectors(x1, br(y1, br(y2, x2))).scale(quarter),
        sym2_of_vectors(x1, br(y2, br(y1, x2))).scale(quarter),
        sym2_of_vectors(x2, br(y1, br(y2, x1))).scale(quarter),
        sym2_of_vectors(x2, br(y2, br(y1, x1))).scale(quarter),
        # y-side nested brackets
        sym2_of_vectors(y1, br(x1, br(x2, y2))).scale(quarter),
        sym2_of_vectors(y1, br(x2, br(x1, y2))).scale(quarter),
        sym2_of_vectors(y2, br(x1, br(x2, y1))).scale(quarter),
        sym2_of_vectors(y2, br(x2, br(x1, y1))).scale(quarter),
        # bracket squares
        sym2_of_vectors(br(x1, y1), br(x2, y2)).scale(half),
        sym2_of_vectors(br(x1, y2), br(x2, y1)).scale(half),
    ]
    # form terms
    fv = alg.form_value
    for c, pair in (
        (fv(x1, y1), (j, l)), (fv(x1, y2), (j, k)),
        (fv(x2, y1), (i, l)), (fv(x2, y2), (i, k)),
    ):
        if c:
            key = pair if pair[0] >= pair[1] else (pair[1], pair[0])
            terms.append(LinComb.term(key, c * half))
    return lincomb_sum(terms)


def star(alg: LieAlgebra, x: Sym2, y: Sym2) -> Sym2:
    """The commutative product on S^2 g, bilinear over basis monomials."""
    out = LinComb()
    for p, cx in x.items():
        for q, cy in y.items():
            out = out + star_monomials(alg, p, q).scale(cx * cy)
    return out


def s_map(alg: LieAlgebra, x: Sym2) -> Matrix:
    """The endomorphism S(x) of g.  On a monomial e_i e_j,

        S(e_i e_j) b = 1/2([e_i,[e_j,b]] + [e_j,[e_i,b]]) + <e_i,b>e_j + <e_j,b>e_i.
    """
    d = alg.dim
    half = alg.field.one / 2
    out = Matrix.zero(d, d, alg.field)
    for (i, j), c in x.items():
        adi, adj = alg.ad_basis(i), alg.ad_basis(j)
        m = (adi @ adj + adj @ adi).scale(half)
        gi = alg.form_apply(alg.basis_vector(i))
        gj = alg.form_apply(alg.basis_vector(j))
        outer = {}
        for col, v in gi.items():
            outer[(j, col)] = v
        for col, v in gj.items():
            w = outer.get((i, col))
            outer[(i, col)] = v if w is None else w + v
        m = m + Matrix(d, d, alg.field, outer)
        out = out + m.scale(c)
    return out


def s_matrix(alg: LieAlgebra) -> Matrix:
    """All of S at once: a d^2 x dim(S^2 g) matrix, columns in the fixed
    monomial order, rows indexed p*d + q for endomorphism entry (p, q)."""
    d = alg.dim
    cols = []
    for (i, j) in sym2_pairs(d):
        m = s_map(alg, LinComb.term((i, j), alg.field.one))
        cols.append(LinComb({p * d + q: v for (p, q), v in m.entries.items()}))
    return Matrix.from_columns(cols, d * d, alg.field)


class CGAlgebra:
    """A = im S with the transported product, in pivot-monomial coordinates."""

    def __init__(self, algebra: LieAlgebra, smat: Matrix, pivots: list[int],
                 rref_rows: list[LinComb], kernel: Subspace):
        self.algebra = algebra
        self.field = algebra.field
        self.s_mat = smat
        self.pivots = pivots
        self.rref_rows = rref_rows
        self.kernel = kernel
        self.dim = len(pivots)
        self.pairs = sym2_pairs(algebra.dim)
        self.im_monomials = [self.pairs[c] for c in pivots]
        self._s_of_im: dict[int, Matrix] = {}
        self._tau: Optional[Matrix] = None
        self._unit: object = "unset"

    # -- coordinates -------------------------------------------------------

    def reduce_to_im(self, x: Sym2) -> LinComb:
        """Coordinates of S(x) on {S(pivot monomial)}; kernel part drops out."""
        xi = sym2_to_indices(x)
        out: dict = {}
        for t, row in enumerate(self.rref_rows):
            acc = None
            for col, v in row.items():
                w = xi.terms.get(col)
                if w is not None:
                    acc = v * w if acc is None else acc + v * w
            if acc:
                out[t] = acc
        return LinComb._raw(out)

    def lift(self, coords: LinComb) -> Sym2:
        """The canonical preimage: the same combination of pivot monomials."""
        return LinComb({self.im_monomials[t]: c for t, c in coords.items()})

    def in_kernel(self, x: Sym2) -> bool:
        return self.kernel.contains(sym2_to_indices(x))

    def s_of_im(self, t: int) -> Matrix:
        m = self._s_of_im.get(t)
        if m is None:
            m = s_map(self.algebra, LinComb.term(self.im_monomials[t], self.field.one))
            self._s_of_im[t] = m
        return m

    def s_of_coords(self, coords: LinComb) -> Matrix:
        out = Matrix.zero(self.algebra.dim, self.algebra.dim, self.field)
        for t, c in coords.items():
            out = out + self.s_of_im(t).scale(c)
        return out

    # -- products and the form ---------------------------------------------

    def diamond(self, cx: LinComb, cy: LinComb) -> LinComb:
        """The product of A in im-coordinates: S(x) diamond S(y) = S(x * y)."""
        return self.reduce_to_im(star(self.algebra, self.lift(cx), self.lift(cy)))

    def tau_matrix(self) -> Matrix:
        """tau(S(x_s), S(x_t)) on the im basis, via tau(f, S(e_i e_j)) =
        1/2 <f(e_i), e_j>; legitimate because im S consists of form-symmetric
        operators."""
        if self._tau is None:
            half = self.field.one / 2
            entries = {}
            for s in range(self.dim):
                fs = self.s_of_im(s)
                for t in range(self.dim):
                    (i, j) = self.im_monomials[t]
                    v = self.algebra.form_value(
                        fs.mul_vec(self.algebra.basis_vector(i)),
                        self.algebra.basis_vector(j))
                    if v:
                        entries[(s, t)] = half * v
            self._tau = Matrix(self.dim, self.dim, self.field, entries)
        return self._tau

    def tau(self, cx: LinComb, cy: LinComb):
        m = self.tau_matrix()
        out = self.field.zero
        for s, a in cx.items():
            for t, b in cy.items():
                v = m.entries.get((s, t))
                if v is not None:
                    out = out + a * v * b
        return out

    def tau_form(self, x: Sym2, y: Sym2):
        """tau(S(x), S(y)) for arbitrary S^2 g elements (not just im coords)."""
        half = self.field.one / 2
        fx = s_map(self.algebra, x)
        out = self.field.zero
        for (i, j), c in y.items():
            v = self.algebra.form_value(fx.mul_vec(self.algebra.basis_vector(i)),
                                        self.algebra.basis_vector(j))
            if v:
                out = out + half * v * c
        return out

    # -- the unit ----------------------------------------------------------

    def unit(self) -> Optional[LinComb]:
        """Im-coordinates of the unit, or None.  A is unital exactly when the
        identity endomorphism lies in im S, and then Id is the unit."""
        if self._unit == "unset":
            d = self.algebra.dim
            idvec = LinComb({i * d + i: self.field.one for i in range(d)})
            x = solve(self.s_mat, idvec)
            if x is None:
                self._unit = None
            else:
                coords = self.reduce_to_im(
                    LinComb({self.pairs[c]: v for c, v in x.items()}))
                for t in range(self.dim):
                    et = LinComb.term(t, self.field.one)
                    if self.diamond(coords, et) != et:
                        raise AlgebraError(
                            "identity endomorphism is in im S but does not act "
                            "as a unit; well-definedness must have failed")
                self._unit = coords
        return self._unit

    def export_tables(self) -> dict:
        """Dense product and form tables, JSON-ready.  Intended for desk-size
        algebras; the practical ceiling is a few thousand dimensions."""
        fmt = self.field.format
        products = []
        for a in range(self.dim):
            ea = LinComb.term(a, self.field.one)
            for b in range(a, self.dim):
                prod = self.diamond(ea, LinComb.term(b, self.field.one))
                if prod:
                    products.append([a, b, [[t, fmt(c)] for t, c in sorted(prod.items())]])
        tau = self.tau_matrix()
        return {
            "dim": self.dim,
            "im_monomials": [list(p) for p in self.im_monomials],
            "products": products,
            "tau": [[s, t, fmt(v)] for (s, t), v in sorted(tau.entries.items())],
        }

    def __repr__(self) -> str:
        return f"CGAlgebra(dim {self.dim} from {self.algebra.name})"


def build_cg(alg: LieAlgebra, check_well_defined: bool = True) -> CGAlgebra:
    """Construct A = (im S, diamond) for a validated algebra.

    check_well_defined runs the exhaustive *-ideal test: star(v, y) must land
    back in ker S for every kernel basis vector v and every monomial y.  It
    is the proof obligation for the transported product; skip it only for
    very large inputs where rank is all that is wanted.
    """
    report = alg.validate()
    if not report.structure_ok:
        raise AlgebraError("algebra failed structural validation; refusing to build")
    if not report.nondegenerate_ok:
        raise AlgebraError("bilinear form is degenerate; the construction needs "
                           "a nondegenerate invariant form")
    smat = s_matrix(alg)
    pivots, rref_rows = row_reduce(smat)
    one = alg.field.one
    piv_index = {c: t for t, c in enumerate(pivots)}
    kernel_vecs = []
    piv_set = set(pivots)
    for free in range(smat.ncols):
        if free in piv_set:
            continue
        vec = {free: one}
        for c, t in piv_index.items():
            v = rref_rows[t].terms.get(free)
            if v is not None:
                vec[c] = -v
        kernel_vecs.append(LinComb._raw(vec))
    kernel = Subspace(kernel_vecs, smat.ncols, alg.field)
    cga = CGAlgebra(alg, smat, pivots, rref_rows, kernel)
    if check_well_defined:
        pairs = cga.pairs
        for kv in kernel.basis:
            v_sym = LinComb({pairs[c]: cv for c, cv in kv.items()})
            for y in pairs:
                z = star(alg, v_sym, LinComb.term(y, one))
                if not cga.in_kernel(z):
                    raise AlgebraError(
                        f"ker S is not a *-ideal at monomial {y}; the product "
                        "does not descend to im S")
    return cga


# -- identity suite --------------------------------------------------------


def star_via_squares(alg: LieAlgebra, x: Sym2, y: Sym2) -> Sym2:
    """Independent oracle for star: expand both arguments into squares with
    ab = ((a+b)(a+b) - aa - bb)/2 and apply the defining formula on squares."""

    def square_form(a: LinComb, b: LinComb) -> Sym2:
        br = alg.bracket
        return lincomb_sum([
            sym2_of_vectors(a, br(b, br(b, a))),
            sym2_of_vectors(b, br(a, br(a, b))),
            sym2_square(br(a, b)),
            sym2_of_vectors(a, b).scale(2 * alg.form_value(a, b)),
        ])

    half = alg.field.one / 2

    def monomial_star(p, q) -> Sym2:
        i, j = p
        k, l = q
        a, b = alg.basis_vector(i), alg.basis_vector(j)
        c, d = alg.basis_vector(k), alg.basis_vector(l)
        # ab = (1/2)((a+b)^2 - a^2 - b^2) on both sides
        lefts = [(a + b, half), (a, -half), (b, -half)] if i != j else [(a, alg.field.one)]
        rights = [(c + d, half), (c, -half), (d, -half)] if k != l else [(c, alg.field.one)]
        out = LinComb()
        for u, cu in lefts:
            for v, cv in rights:
                out = out + square_form(u, v).scale(cu * cv)
        return out

    out = LinComb()
    for p, cx in x.items():
        for q, cy in y.items():
            out = out + monomial_star(p, q).scale(cx * cy)
    return out


def identity_suite(alg: LieAlgebra, samples: int = 100, seed: int = 0) -> SuiteReport:
    """Operator identities tying star, S and ad together, checked exactly.

    For each pair (a, b) of basis elements (all pairs when dim g <= 10,
    seeded samples otherwise):

      (i)  [ad_b, S(aa)] = 2 S(a [b,a])
      (ii) S(aa * bb) = 1/2 [ad_b, [ad_b, S(aa)]] + S((S(aa)b) b)

    plus associativity of tau and the *-ideal property of ker S.
    """
    rep = SuiteReport("cg-identities", meta={"algebra": alg.name, "samples": samples,
                                            "seed": seed})
    d = alg.dim
    rng = random.Random(seed)
    if d <= 10:
        pairs = [(i, j) for i in range(d) for j in range(d)]
    else:
        pairs = [(rng.randrange(d), rng.randrange(d)) for _ in range(samples)]

    half = alg.field.one / 2
    ok_i = ok_ii = True
    witness_i = witness_ii = None
    for (ia, ib) in pairs:
        a, b = alg.basis_vector(ia), alg.basis_vector(ib)
        saa = s_map(alg, sym2_square(a))
        adb = alg.ad_basis(ib)
        lhs = adb @ saa - saa @ adb
        rhs = s_map(alg, sym2_of_vectors(a, alg.bracket(b, a))).scale(2)
        if ok_i and lhs != rhs:
            ok_i, witness_i = False, (alg.labels[ia], alg.labels[ib])
        sbb_prod = s_map(alg, star(alg, sym2_square(a), sym2_square(b)))
        inner = adb @ saa - saa @ adb
        rhs2 = (adb @ inner - inner @ adb).scale(half) \
            + s_map(alg, sym2_of_vectors(saa.mul_vec(b), b))
        if ok_ii and sbb_prod != rhs2:
            ok_ii, witness_ii = False, (alg.labels[ia], alg.labels[ib])
    rep.add("bracket-of-S-is-S-of-bracket", ok_i,
            None if ok_i else f"failed at pair {witness_i}")
    rep.add("product-against-a-square", ok_ii,
            None if ok_ii else f"failed at pair {witness_ii}")

    cga = build_cg(alg, check_well_defined=False)
    pairs_s2 = cga.pairs
    one = alg.field.one

    # *-ideal property of ker S
    ideal_ok = True
    ideal_witness = None
    kernel_basis = cga.kernel.basis
    mono_pool = list(pairs_s2)
    if len(kernel_basis) * len(mono_pool) > 4 * max(samples, 1) and alg.dim > 10:
        mono_pool = [mono_pool[rng.randrange(len(mono_pool))] for _ in range(samples)]
    for kv in kernel_basis:
        v_sym = LinComb({pairs_s2[c]: cv for c, cv in kv.items()})
        for y in mono_pool:
            if not cga.in_kernel(star(alg, v_sym, LinComb.term(y, one))):
                ideal_ok, ideal_witness = False, y
                break
        if not ideal_ok:
            break
    rep.add("kernel-is-star-ideal", ideal_ok,
            None if ideal_ok else f"failed at monomial {ideal_witness}")

    # tau associativity: tau(x<>y, z) = tau(x, y<>z)
    assoc_ok = True
    assoc_witness = None
    n = cga.dim
    if n:
        if n <= 12:
            triples = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]
        else:
            triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(samples)]
        for (x, y, z) in triples:
            ex, ey, ez = (LinComb.term(t, one) for t in (x, y, z))
            left = cga.tau(cga.diamond(ex, ey), ez)
            right = cga.tau(ex, cga.diamond(ey, ez))
            if left != right:
                assoc_ok, assoc_witness = False, (x, y, z)
                break
    rep.add("tau-associative", assoc_ok,
            None if assoc_ok else f"failed at im-basis triple {assoc_witness}")
    rep.add("tau-symmetric", cga.tau_matrix().is_symmetric())
    return rep
