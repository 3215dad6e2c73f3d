"""The degree-2 slice of the vacuum module and its finite-dimensional shadow.

Degree 2 of the vacuum module carries a commutative product
d • e = (d_1 e + e_1 d)/2 and a scalar pairing (d, e) -> d_3 e.  This
module builds the linear dictionary between that slice and the symmetric
square of the underlying algebra:

  * theta embeds S^2 g into degree 2: 4ab -> a(-1)b(-1)|0> + b(-1)a(-1)|0>,
  * t_map evaluates a degree-2 state as an endomorphism: T(d) = 2 d_1,
  * kernel_t computes ker T, the degree-2 slice of the maximal graded
    ideal of the vacuum module.

The verification suites then confirm, exactly and basis-pair by
basis-pair, that (im S, diamond, tau) and the quotient of the symmetric
degree-2 slice by ker T are the same algebra, with a single measured
proportionality constant on the bilinear form; that the quotient carries
a conformal vector normalizing the unit; and that ker T behaves as an
ideal slice under all nonnegative modes.
"""

from __future__ import annotations

from typing import Optional

from .cg import (CGAlgebra, build_cg, s_map, star, sym2_index, sym2_pairs)
from .lie import AlgebraError, LieAlgebra
from .linalg import LinComb, Matrix, Subspace, rank_and_kernel, solve
from .report import SuiteReport
from .vertex import VertexEngine, state_degree


class DegreeTwo:
    """Coordinates on the degree-2 component of the vacuum module.

    The basis is the translation part e_k(-2)|0> for k < dim g, followed
    by the symmetrized pairs

        sym_ij = 2 e_i(-1)e_j(-1)|0> - [e_i, e_j](-2)|0>,   i >= j,

    in sym2_pairs order.  Every degree-2 state splits uniquely across the
    two groups, and the span of the sym_ij is exactly the image of theta.
    """

    def __init__(self, alg: LieAlgebra, engine: Optional[VertexEngine] = None):
        self.algebra = alg
        self.field = alg.field
        self.engine = engine if engine is not None else VertexEngine(alg)
        self.pairs = sym2_pairs(alg.dim)
        self.dim = alg.dim + len(self.pairs)
        self._theta: dict = {}
        self._kernel: Optional[Subspace] = None

    # -- coordinates -------------------------------------------------------

    def coords(self, state: LinComb) -> LinComb:
        """Coordinates of a degree-2 state; rejects anything else."""
        d = self.algebra.dim
        two = self.field.from_int(2)
        p: dict = {}
        s: dict = {}
        for mo, c in state.items():
            if len(mo) == 1 and mo[0][0] == 2:
                p[mo[0][1]] = c
            elif len(mo) == 2 and mo[0][0] == 1 and mo[1][0] == 1:
                s[(mo[0][1], mo[1][1])] = c / two
            else:
                raise ValueError("state is not homogeneous of degree 2")
        out: dict = {}
        for (i, j), sij in s.items():
            out[d + sym2_index(i, j)] = sij
        for k in range(d):
            tk = p.get(k, self.field.zero)
            for (i, j), sij in s.items():
                if i != j:
                    g = self.algebra.bracket_basis(i, j).get(k)
                    if g:
                        tk = tk + sij * g
            if tk:
                out[k] = tk
        return LinComb(out)

    def state(self, coords: LinComb) -> LinComb:
        """Inverse of coords."""
        d = self.algebra.dim
        two = self.field.from_int(2)
        out = LinComb()
        for t, c in coords.items():
            if t < d:
                out = out + LinComb.term(((2, t),), c)
            else:
                i, j = self.pairs[t - d]
                out = out + LinComb.term(((1, i), (1, j)), two * c)
                for k, g in self.algebra.bracket_basis(i, j).items():
                    out = out - LinComb.term(((2, k),), c * g)
        return out

    def sym_part_indices(self) -> range:
        return range(self.algebra.dim, self.dim)

    # -- theta and T -------------------------------------------------------

    def theta_pair(self, i: int, j: int) -> LinComb:
        """theta(e_i e_j) = (e_i(-1)e_j(-1)|0> + e_j(-1)e_i(-1)|0>) / 4."""
        key = (i, j) if i >= j else (j, i)
        hit = self._theta.get(key)
        if hit is None:
            eng = self.engine
            vac = eng.vacuum()
            a = eng.apply_mode(key[0], -1, eng.apply_mode(key[1], -1, vac))
            b = eng.apply_mode(key[1], -1, eng.apply_mode(key[0], -1, vac))
            hit = (a + b).scale(self.field.one / 4)
            self._theta[key] = hit
        return hit

    def theta(self, x: LinComb) -> LinComb:
        """theta of a symmetric-square element (keys (i, j) with i >= j)."""
        out = LinComb()
        for (i, j), c in x.items():
            out = out + self.theta_pair(i, j).scale(c)
        return out

    def t_map(self, state: LinComb) -> Matrix:
        """T(d) = 2 d_1 as an endomorphism of g.

        Column j is 2 d_1 (e_j(-1)|0>), read back as a vector.
        """
        if state and state_degree(state) != 2:
            raise ValueError("t_map needs a homogeneous degree-2 state")
        d = self.algebra.dim
        eng = self.engine
        two = self.field.from_int(2)
        entries: dict = {}
        for j in range(d):
            col = eng.nth_product(state, 1, LinComb.term(((1, j),), self.field.one))
            for i, c in eng.vector_of_state(col).items():
                entries[(i, j)] = two * c
        return Matrix(d, d, self.field, entries)

    def kernel(self) -> Subspace:
        """ker T, cached.  Refuses when the algebra has a center: the
        containment ker T <= span(sym_ij) can genuinely fail there, and
        everything downstream relies on it."""
        if self._kernel is None:
            rep = self.algebra.validate()
            if rep.center_dim:
                raise AlgebraError(
                    "kernel of T needs a centerless algebra, but the center "
                    f"has dimension {rep.center_dim}")
            if not rep.admissible:
                raise AlgebraError(
                    "kernel of T needs a valid algebra with non-degenerate "
                    "form")
            d = self.algebra.dim
            entries: dict = {}
            for t in range(self.dim):
                m = self.t_map(self.state(LinComb.term(t, self.field.one)))
                for (r, c), v in m.entries.items():
                    entries[(r * d + c, t)] = v
            tmat = Matrix(d * d, self.dim, self.field, entries)
            _, self._kernel = rank_and_kernel(tmat)
        return self._kernel


def kernel_t(alg: LieAlgebra, d2: Optional[DegreeTwo] = None) -> Subspace:
    """ker T in DegreeTwo coordinates; see DegreeTwo.kernel for the refusal."""
    return (d2 if d2 is not None else DegreeTwo(alg)).kernel()


def jordan_product(eng: VertexEngine, u: LinComb, v: LinComb) -> LinComb:
    """u • v = (u_1 v + v_1 u) / 2 on degree-2 states."""
    half = eng.field.one / 2
    return (eng.nth_product(u, 1, v) + eng.nth_product(v, 1, u)).scale(half)


def form3(eng: VertexEngine, u: LinComb, v: LinComb):
    """The scalar pairing: coefficient of |0> in u_3 v."""
    return eng.nth_product(u, 3, v).get((), eng.field.zero)


# -- the quotient ----------------------------------------------------------

class SymQuotient:
    """The quotient of span(sym_ij) by ker T, with the induced product and
    pairing.  Built by sym_quotient, which also proves well-definedness."""

    def __init__(self, d2: DegreeTwo, basis_states: list[LinComb],
                 basis_coords: list[LinComb]):
        self.d2 = d2
        self.field = d2.field
        self.dim = len(basis_states)
        self.basis_states = basis_states
        self._solve_mat = Matrix(
            d2.dim, self.dim, d2.field,
            {(r, t): v for t, col in enumerate(basis_coords)
             for r, v in col.items()})

    def class_coords(self, state: LinComb) -> LinComb:
        """Quotient coordinates of a degree-2 state's class."""
        red = self.d2.kernel().reduce(self.d2.coords(state))
        out = solve(self._solve_mat, red)
        if out is None:
            raise AlgebraError("state does not reduce into the quotient basis")
        return out

    def product(self, s: int, t: int) -> LinComb:
        return self.class_coords(
            jordan_product(self.d2.engine, self.basis_states[s],
                           self.basis_states[t]))

    def pairing(self, s: int, t: int):
        return form3(self.d2.engine, self.basis_states[s], self.basis_states[t])


def sym_quotient(alg: LieAlgebra, d2: Optional[DegreeTwo] = None,
                 cg: Optional[CGAlgebra] = None) -> SymQuotient:
    """Build span(sym_ij)/ker T on the classes of theta(pivot monomials).

    Raises when the product or the pairing fails to descend; both are
    checked exactly against every kernel basis vector.
    """
    if d2 is None:
        d2 = DegreeTwo(alg)
    if cg is None:
        cg = build_cg(alg)
    ker = d2.kernel()
    eng = d2.engine
    basis_states = [d2.theta_pair(i, j) for (i, j) in cg.im_monomials]
    basis_coords = [ker.reduce(d2.coords(st)) for st in basis_states]
    if Subspace(basis_coords, d2.dim, d2.field).dim != len(basis_states):
        raise AlgebraError("theta images of the pivot monomials are "
                           "dependent modulo ker T")
    kernel_states = [d2.state(b) for b in ker.basis]
    for n, kst in enumerate(kernel_states):
        for t, bst in enumerate(basis_states):
            if not ker.contains(d2.coords(jordan_product(eng, kst, bst))):
                raise AlgebraError(
                    f"product does not descend to the quotient: kernel vector "
                    f"{n} against basis state {t}")
            if form3(eng, kst, bst):
                raise AlgebraError(
                    f"pairing does not descend to the quotient: kernel vector "
                    f"{n} against basis state {t}")
    return SymQuotient(d2, basis_states, basis_coords)


# -- verification suites ---------------------------------------------------

def correspondence_suite(alg: LieAlgebra, cg: Optional[CGAlgebra] = None,
                         d2: Optional[DegreeTwo] = None) -> SuiteReport:
    """Verify that (im S, diamond, tau) and the degree-2 quotient agree.

    Checks, all exact and exhaustive over the S^2 g basis: theta is
    injective with image the sym part; T after theta is S; products
    correspond on the nose; the pairing corresponds up to one measured
    constant; theta maps ker S onto ker T; and the induced map between
    im S and the quotient is a bijective algebra map.
    """
    rep = SuiteReport("degree-2-correspondence")
    if cg is None:
        cg = build_cg(alg)
    if d2 is None:
        d2 = DegreeTwo(alg)
    eng = d2.engine
    field = alg.field
    labels = alg.labels
    pairs = d2.pairs
    one = field.one

    def pair_name(p):
        return f"({labels[p[0]]}, {labels[p[1]]})"

    theta_states = [d2.theta_pair(i, j) for (i, j) in pairs]
    theta_coords = [d2.coords(st) for st in theta_states]

    span = Subspace(theta_coords, d2.dim, field)
    sym_ok = (span.dim == len(pairs)
              and all(min(v.keys()) >= alg.dim for v in span.basis))
    rep.add("theta-embeds-the-symmetric-square", sym_ok,
            f"rank {span.dim} of {len(pairs)}")

    bad = None
    for t, (i, j) in enumerate(pairs):
        if d2.t_map(theta_states[t]) != s_map(alg, LinComb.term((i, j), one)):
            bad = pair_name((i, j))
            break
    rep.add("t-after-theta-is-s", bad is None, bad or "all pairs")

    # The commutator of the first products is a total translate; this is
    # what collapses the x0 product onto the Jordan product below.
    bad = None
    for s in range(len(pairs)):
        for t in range(s, len(pairs)):
            lhs = (eng.nth_product(theta_states[s], 1, theta_states[t])
                   - eng.nth_product(theta_states[t], 1, theta_states[s]))
            rhs = eng.d_pow(1, eng.nth_product(theta_states[s], 2,
                                               theta_states[t]))
            if lhs != rhs:
                bad = f"{pair_name(pairs[s])} x {pair_name(pairs[t])}"
                break
        if bad:
            break
    rep.add("first-product-commutator-is-translate", bad is None,
            bad or "all pairs")

    bad = None
    for s in range(len(pairs)):
        xs = LinComb.term(pairs[s], one)
        for t in range(s, len(pairs)):
            prod = jordan_product(eng, theta_states[s], theta_states[t])
            expect = d2.theta(star(alg, xs, LinComb.term(pairs[t], one)))
            if prod != expect:
                bad = f"{pair_name(pairs[s])} x {pair_name(pairs[t])}"
                break
        if bad:
            break
    mult_ok = rep.add("product-matches-star-exactly", bad is None,
                      bad or "all pairs")

    if field.char == 0:
        bad = None
        for s in range(len(pairs)):
            for t in range(s, len(pairs)):
                jp = jordan_product(eng, theta_states[s], theta_states[t])
                if eng.times0(theta_states[s], theta_states[t]) != jp:
                    bad = f"{pair_name(pairs[s])} x {pair_name(pairs[t])}"
                    break
            if bad:
                break
        rep.add("zeroth-product-matches-jordan", bad is None, bad or "all pairs")

    try:
        ker_t = d2.kernel()
    except AlgebraError as exc:
        rep.add("kernel-of-t", False, str(exc))
        rep.meta["dims"] = [len(pairs), cg.kernel.dim, cg.dim, None]
        return rep

    theta_ker = Subspace(
        [d2.coords(d2.theta(LinComb({pairs[c]: v for c, v in b.items()})))
         for b in cg.kernel.basis],
        d2.dim, field)
    kernel_ok = rep.add(
        "theta-of-kernel-is-kernel-of-t",
        theta_ker == ker_t,
        f"theta(ker S) dim {theta_ker.dim}, ker T dim {ker_t.dim}")

    rep.add("kernel-of-t-in-sym-part",
            all(min(b.keys()) >= alg.dim for b in ker_t.basis),
            f"{ker_t.dim} basis vectors")

    lam = None
    bad = None
    for s in range(len(pairs)):
        xs = LinComb.term(pairs[s], one)
        for t in range(s, len(pairs)):
            xt = LinComb.term(pairs[t], one)
            tau = cg.tau_form(xs, xt)
            f3 = form3(eng, theta_states[s], theta_states[t])
            if lam is None and tau:
                lam = f3 / tau
            if f3 != (lam * tau if lam is not None else field.zero):
                bad = f"{pair_name(pairs[s])} x {pair_name(pairs[t])}"
                break
        if bad:
            break
    rep.add("pairing-proportional-to-tau", bad is None and lam is not None,
            bad or (f"lambda = {field.format(lam)}" if lam is not None
                    else "tau vanished on every pair"))

    iso_ok = False
    detail = ""
    try:
        quot = sym_quotient(alg, d2, cg)
    except AlgebraError as exc:
        detail = str(exc)
    else:
        if quot.dim != cg.dim:
            detail = f"quotient dim {quot.dim} != algebra dim {cg.dim}"
        else:
            iso_ok = True
            for s in range(cg.dim):
                es = LinComb.term(s, one)
                for t in range(s, cg.dim):
                    want = cg.diamond(es, LinComb.term(t, one))
                    if quot.product(s, t) != want:
                        iso_ok = False
                        detail = f"product table differs at ({s}, {t})"
                        break
                if not iso_ok:
                    break
            if iso_ok:
                detail = f"dimension {cg.dim}"
    rep.add("induced-map-is-isomorphism", iso_ok, detail)

    unit = cg.unit()
    rep.meta["dims"] = [len(pairs), cg.kernel.dim, cg.dim, ker_t.dim]
    rep.meta["form_lambda"] = field.format(lam) if lam is not None else None
    rep.meta["multiplicativity_ok"] = bool(mult_ok)
    rep.meta["kernel_match_ok"] = bool(kernel_ok)
    rep.meta["unital"] = unit is not None
    return rep


def conformal_suite(alg: LieAlgebra, cg: Optional[CGAlgebra] = None,
                    d2: Optional[DegreeTwo] = None) -> SuiteReport:
    """Conformal checks on the image of the algebra unit.

    Tries omega = 2 theta(lift(unit)) first and the unnormalized image
    second; the winner is whichever satisfies a_1 omega = a for every
    basis vector.  Then a_2 omega = 0 exactly, a_0 omega lands in ker T,
    omega_1 omega doubles omega modulo ker T, and the central charge
    2 (coefficient of |0> in omega_3 omega) equals 4 tau(unit, unit).
    """
    rep = SuiteReport("conformal")
    if cg is None:
        cg = build_cg(alg)
    if d2 is None:
        d2 = DegreeTwo(alg)
    eng = d2.engine
    field = alg.field
    unit = cg.unit()
    if not rep.add("algebra-has-unit", unit is not None,
                   "" if unit is not None else "identity not in im S"):
        return rep

    iota = d2.theta(cg.lift(unit))
    candidates = [("2*unit-image", iota.scale(2)), ("unit-image", iota)]
    omega = None
    chosen = None
    for name, cand in candidates:
        if all(eng.apply_mode(i, 1, cand) == LinComb.term(((1, i),), field.one)
               for i in range(alg.dim)):
            omega, chosen = cand, name
            break
    rep.add("mode-one-returns-the-vector", omega is not None,
            chosen or "neither normalization works")
    if omega is None:
        omega = iota.scale(2)
        chosen = "2*unit-image (forced)"
    rep.meta["omega_normalization"] = chosen

    bad = None
    for i in range(alg.dim):
        if eng.apply_mode(i, 2, omega):
            bad = alg.labels[i]
            break
    rep.add("mode-two-kills-omega", bad is None, bad or "all basis vectors")

    ker_t = d2.kernel()
    bad = None
    for i in range(alg.dim):
        if not ker_t.contains(d2.coords(eng.apply_mode(i, 0, omega))):
            bad = alg.labels[i]
            break
    rep.add("mode-zero-lands-in-ideal-slice", bad is None,
            bad or "all basis vectors")

    diff = eng.nth_product(omega, 1, omega) - omega.scale(2)
    rep.add("omega-doubles-itself-mod-ideal",
            ker_t.contains(d2.coords(diff)), "omega_1 omega vs 2 omega")

    charge = form3(eng, omega, omega) * 2
    expect = cg.tau(unit, unit) * 4
    rep.add("central-charge-is-four-tau",
            charge == expect,
            f"charge {field.format(charge)}, 4 tau(Id, Id) "
            f"{field.format(expect)}")
    rep.meta["central_charge"] = field.format(charge)
    return rep


def ideal_closure_suite(alg: LieAlgebra, degree_cap: int = 4,
                        d2: Optional[DegreeTwo] = None) -> SuiteReport:
    """Check that ker T closes like an ideal slice under all modes.

    For every kernel basis vector d and basis element a: a_0 d stays in
    ker T, a_1 d and a_2 d vanish, and the creation modes a(-m) up to the
    degree cap never leak below degree 2.
    """
    rep = SuiteReport("ideal-closure")
    if d2 is None:
        d2 = DegreeTwo(alg)
    eng = d2.engine
    ker = d2.kernel()
    states = [d2.state(b) for b in ker.basis]

    def run(name, probe):
        bad = None
        for n, st in enumerate(states):
            for i in range(alg.dim):
                if not probe(i, st):
                    bad = f"a = {alg.labels[i]}, kernel vector {n}"
                    break
            if bad:
                break
        rep.add(name, bad is None, bad or f"{len(states)} kernel vectors")

    run("zero-mode-stays-in-kernel",
        lambda i, st: ker.contains(d2.coords(eng.apply_mode(i, 0, st))))
    run("first-mode-annihilates",
        lambda i, st: not eng.apply_mode(i, 1, st))
    run("second-mode-annihilates",
        lambda i, st: not eng.apply_mode(i, 2, st))

    def graded(i, st):
        cur = st
        for m in range(1, degree_cap - 1):
            cur = eng.apply_mode(i, -m, st)
            if cur and state_degree(cur) != 2 + m:
                return False
        return True

    run("creation-modes-preserve-grading", graded)
    rep.meta["kernel_dim"] = ker.dim
    rep.meta["degree_cap"] = degree_cap
    return rep
