"""Center calculus: Z(A), K(A), the quotient Z-hat, the star product, the
J operator, the triple form sigma, fusion coefficients, and classification
of trace elements.

For the quantum sl(2) the center is presented in the idempotent/nilpotent
basis built from the Casimir-type element X (P_j projectors, N_j^+/- split
nilpotents); the quotient Z-hat is coordinatized by [P_0..P_{q-1}] followed
by the normalized [Ndot_0^- .. Ndot_{q-1}^-].
"""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import AlgElem, ConsistencyError, HopfData, StructureError
from .linalg import nullspace, solve_sparse

__all__ = [
    "CenterBasis", "CasimirBasis", "compute_center", "is_central", "star",
    "j_op", "sigma", "fusion_coefficients", "delta_pairing", "TraceReport",
    "TraceClassifier",
]


def is_central(H: HopfData, a: AlgElem, generators=None) -> bool:
    gens = generators if generators is not None else H.generators
    return all(H.mul(a, g) == H.mul(g, a) for g in gens)


def compute_center(H: HopfData, generators=None) -> "CenterBasis":
    """Exact null space of x -> (x g - g x) over the listed generators."""
    gens = generators if generators is not None else H.generators
    candidates = [AlgElem.basis(i, H.field) for i in range(H.dim)]
    for g in gens:
        cols = []
        for cand in candidates:
            comm = H.mul(cand, g) - H.mul(g, cand)
            cols.append(comm.terms)
        kernel = nullspace(cols, H.field)
        new = []
        for vec in kernel:
            elem = AlgElem()
            for coef, cand in zip(vec, candidates):
                if not coef.is_zero():
                    elem = elem + cand.scale(coef)
            new.append(elem)
        candidates = new
    return CenterBasis(H, candidates)


class CenterBasis:
    """A basis of Z(A) with its integral pairing and the quotient data.

    gram[i][j] = lam(z_i z_j); K(A) is the kernel of gram; class
    representatives are the basis elements whose gram columns stay
    independent (scanning in order), so Z-hat coordinates follow the
    element ordering handed in.
    """

    def __init__(self, H: HopfData, elements):
        self.H = H
        self.elements = list(elements)
        n = len(self.elements)
        F = H.field
        for z in self.elements:
            if not is_central(H, z):
                raise StructureError("center basis candidate is not central")
        self.gram = [[H.lam_of(H.mul(a, b)) for b in self.elements]
                     for a in self.elements]
        cols = [{i: self.gram[i][j] for i in range(n)
                 if not self.gram[i][j].is_zero()} for j in range(n)]
        kernel = nullspace(cols, F)
        self.k_basis = []
        for vec in kernel:
            elem = AlgElem()
            for coef, z in zip(vec, self.elements):
                if not coef.is_zero():
                    elem = elem + z.scale(coef)
            self.k_basis.append(elem)
        # greedy complement of K: keep indices whose gram columns grow the rank
        self.class_indices = []
        seen = []
        for j in range(n):
            trial = seen + [cols[j]]
            if len(nullspace(trial, F)) == 0:
                self.class_indices.append(j)
                seen = trial
        self.class_basis = [self.elements[j] for j in self.class_indices]
        self._proj_cache = {}

    @property
    def dim(self):
        return len(self.elements)

    @property
    def dim_k(self):
        return len(self.k_basis)

    @property
    def class_dim(self):
        return len(self.class_basis)

    def in_span(self, a: AlgElem) -> bool:
        cols = [z.terms for z in self.elements] + [a.terms]
        return len(nullspace(cols, self.H.field)) > 0

    def class_proj(self, a: AlgElem):
        """Coordinates of [a] in Z-hat over the class basis."""
        key = a
        out = self._proj_cache.get(key)
        if out is not None:
            return out
        H = self.H
        rows = []
        for zj in self.elements:
            coeffs = {}
            for i, bi in enumerate(self.class_basis):
                val = H.lam_of(H.mul(bi, zj))
                if not val.is_zero():
                    coeffs[i] = val
            rows.append((coeffs, H.lam_of(H.mul(a, zj))))
        sol = solve_sparse(rows, H.field, unknowns=range(self.class_dim))
        out = tuple(sol[i] for i in range(self.class_dim))
        self._proj_cache[key] = out
        return out

    def class_is_zero(self, a: AlgElem) -> bool:
        return all(c.is_zero() for c in self.class_proj(a))

    def class_eq(self, a: AlgElem, b: AlgElem) -> bool:
        return self.class_proj(a) == self.class_proj(b)


class CasimirBasis(CenterBasis):
    """Kerler's presentation of the sl(2) center from the Casimir element X.

    Elements are ordered [P_0..P_{q-1}, Ndot_0^-..Ndot_{q-1}^-, P_q,
    N_0..N_{q-1}] so the class representatives come out as the first 2q.
    The product table, the two distinguished lambda-values, and the
    expansion bookkeeping are all verified during construction; a mismatch
    raises ConsistencyError.
    """

    def __init__(self, H: HopfData):
        F = H.field
        p, q = F.p, F.q
        if H.dim != p ** 3:
            raise StructureError("CasimirBasis expects the quantum sl(2) datum")
        self.p, self.q = p, q
        vm = F.v - F.v_inv

        def idx(c, n, m):
            return ((c % p) * p + n) * p + m

        self.b_vals = [(F.v_power(2 * s + 1) + F.v_power(-2 * s - 1)) / vm
                       for s in range(p)]
        b = lambda s: self.b_vals[s % p]

        # Casimir-type element X.  The idempotent part runs over all of Z/p:
        # c_{2k} = b(k-1) including k = 0 (b(-1) = b(0)), which is what the
        # centrality recurrence c_s - c_{s+2} = -(v^s - v^-s) forces and what
        # gives X the eigenvalue b(n) on the highest-weight-2n module.
        X = AlgElem()
        for s in range(p):
            X = X + AlgElem({idx(s, 1, 1): vm})
        for k in range(p):
            X = X + AlgElem({idx(2 * k, 0, 0): b(k - 1)})
        self.X = X

        qf = [F.qfact(j) for j in range(p)]

        def nilpotent_slice(k, s):
            """1_{-2s} phi_k(X) (X - b(k)) in the E^(j)F^(j) column."""
            out = {}
            for j in range(p):
                prod = F.one
                for i in range(j + 1, p):
                    prod = prod * (b(k) - b(i + s))
                coef = prod * qf[j] * qf[j] * (vm ** j)
                if not coef.is_zero():
                    out[idx(-2 * s, j, j)] = coef
            return AlgElem(out)

        def projector_slice(k, s):
            """1_{-2s} phi_k(X) for k < q (double roots removed twice)."""
            out = {}
            for j in range(p - 1):
                acc = F.zero
                for t in range(j + 1, p):
                    prod = F.one
                    for i in range(j + 1, p):
                        if i != t:
                            prod = prod * (b(k) - b(i + s))
                    acc = acc + prod
                coef = acc * qf[j] * qf[j] * (vm ** j)
                if not coef.is_zero():
                    out[idx(-2 * s, j, j)] = coef
            return AlgElem(out)

        # phi_k(b(k)) and the honest derivative phi_k'(b(k)), both as direct
        # products of b-differences.  (The closed forms match phi_k(b(k))
        # exactly; the displayed derivative value carries the opposite sign,
        # and only the honest derivative makes P_k idempotent.)
        def phi_value(k):
            out = F.one
            for s in range(p):
                if b(s) == b(k):
                    continue
                out = out * (b(k) - b(s))
            return out

        def phi_derivative(k):
            acc = F.zero
            for t in range(p):
                if b(t) == b(k):
                    continue
                acc = acc + (b(k) - b(t)).inverse()
            return phi_value(k) * acc

        phi_at = [phi_value(k) for k in range(q + 1)]
        dphi_at = [phi_derivative(k) for k in range(q)]

        self.P = []
        self.N = []
        self.Nplus = []
        self.Nminus = []
        self.Ndot_minus = []
        self.T = []
        for k in range(q):
            phi = AlgElem()
            nil = AlgElem()
            for s in range(p):
                phi = phi + projector_slice(k, s)
                nil = nil + nilpotent_slice(k, s)
            Nk = nil.scale(phi_at[k].inverse())
            Pk = phi.scale(phi_at[k].inverse()) - \
                nil.scale(dphi_at[k] / (phi_at[k] * phi_at[k]))
            Tk = AlgElem({idx(-2 * s, 0, 0): F.one
                          for s in range(k + 1, p - k)})
            Nk_plus = H.mul(Tk, Nk)
            Nk_minus = Nk - Nk_plus
            self.P.append(Pk)
            self.N.append(Nk)
            self.Nplus.append(Nk_plus)
            self.Nminus.append(Nk_minus)
            self.Ndot_minus.append(
                Nk_minus.scale((vm * F.qint(2 * k + 1) ** 2).inverse()))
            self.T.append(Tk)
        # top projector: phi_q(X) has only simple root removal
        phi_q = AlgElem()
        for s in range(p):
            phi_q = phi_q + nilpotent_slice(q, s)
        self.P.append(phi_q.scale(phi_at[q].inverse()))

        self._verify(H)
        order = (self.P[:q] + self.Ndot_minus + [self.P[q]] + self.N)
        super().__init__(H, order)
        if self.class_indices != list(range(2 * q)):
            raise ConsistencyError("class representatives are not the P/Ndot block")

    def _verify(self, H):
        F = H.field
        p, q = self.p, self.q
        vm = F.v - F.v_inv
        for i in range(q + 1):
            for j in range(q + 1):
                expect = self.P[j] if i == j else AlgElem()
                if not H.mul(self.P[i], self.P[j]) == expect:
                    raise ConsistencyError(f"P_{i} P_{j} mismatch")
        for i in range(q + 1):
            for j in range(q):
                for Nj, tag in ((self.Nplus[j], "+"), (self.Nminus[j], "-")):
                    expect = Nj if i == j else AlgElem()
                    if not H.mul(self.P[i], Nj) == expect:
                        raise ConsistencyError(f"P_{i} N_{j}^{tag} mismatch")
        for i in range(q):
            for j in range(q):
                for Na in (self.Nplus[i], self.Nminus[i]):
                    for Nb in (self.Nplus[j], self.Nminus[j]):
                        if not H.mul(Na, Nb).is_zero():
                            raise ConsistencyError(f"N_{i} N_{j} product nonzero")
        total = AlgElem()
        for Pj in self.P:
            total = total + Pj
        if not total == H.unit:
            raise ConsistencyError("sum of projectors is not 1")
        if not self.Nminus[0] == H.Lambda.scale(vm):
            raise ConsistencyError("N_0^- != (v - v^-1) Lambda")
        for i in range(q):
            if not H.lam_of(self.Nminus[i]) == vm * F.qint(2 * i + 1) ** 3:
                raise ConsistencyError(f"lam(N_{i}^-) has wrong value")
        for z in self.P + self.Nplus + self.Nminus + [self.X]:
            if not is_central(H, z):
                raise ConsistencyError("constructed element is not central")

    def theta_expected(self, H) -> AlgElem:
        """The ribbon element written in this basis (explicit display)."""
        F = H.field
        q = self.q
        out = self.P[q].scale(F.v_power(q))
        for j in range(q):
            w = F.v_power(2 * j * (j + 1))
            term = self.P[j] + \
                self.N[j].scale(F.from_int(2 * j + 1) / F.qint(2 * j + 1)) - \
                self.Nminus[j].scale(F.from_int(self.p) / F.qint(2 * j + 1))
            out = out + term.scale(w)
        return out

    def zrt(self) -> AlgElem:
        """sum_j [2j+1] Ndot_j^-, the quantum-dimension-weighted mix."""
        F = self.H.field
        out = AlgElem()
        for j in range(self.q):
            out = out + self.Ndot_minus[j].scale(F.qint(2 * j + 1))
        return out

    def named_elements(self):
        H = self.H
        return {"one": H.unit, "lambda": H.Lambda, "p0": self.P[0],
                "zrt": self.zrt()}


# -- star product, J, sigma ---------------------------------------------------


def star(H: HopfData, a: AlgElem, b: AlgElem, *, checked=True) -> AlgElem:
    """a * b = sum lam(S(a) b_(1)) b_(2) on the center."""
    if checked and not (is_central(H, a) and is_central(H, b)):
        raise StructureError("star product needs central inputs")
    row = H.functional_row(H.S(a))
    acc = {}
    for (x, y), c in H.comul(b).terms.items():
        v = row.get(x)
        if v is not None:
            cur = acc.get(y)
            cc = c * v
            acc[y] = cc if cur is None else cur + cc
    out = AlgElem()
    out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
    return out


def j_op(H: HopfData, z: AlgElem) -> AlgElem:
    """J(z) = (lam x 1)(z x 1) R21 R."""
    row = H.functional_row(z)
    acc = {}
    for (x, y), c in H.r21r.terms.items():
        v = row.get(x)
        if v is not None:
            cur = acc.get(y)
            cc = c * v
            acc[y] = cc if cur is None else cur + cc
    out = AlgElem()
    out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
    return out


def sigma(H: HopfData, a: AlgElem, b: AlgElem, c: AlgElem, *, checked=True):
    """sigma(a, b, c) = lam(S(a) (b * c))."""
    return H.lam_of(H.mul(H.S(a), star(H, b, c, checked=checked)))


def delta_pairing(H: HopfData, w: AlgElem, z: AlgElem, a: AlgElem,
                  b: AlgElem, c: AlgElem, *, literal=False, star_cache=None):
    """mu(delta(w, z), (a x b) Delta c)
       = sum lam(z a c_(1)) lam(w b c_(2))
         - sum lam(z_(1) a c_(1)) lam(w z_(2) b c_(2)).

    For central inputs both Sweedler sums collapse to star-product
    evaluations, which is how the fast path computes them; literal=True
    forces the direct double sum (used as a cross-check oracle).
    """
    F = H.field
    if literal:
        row_za = H.functional_row(H.mul(z, a))
        row_wb = H.functional_row(H.mul(w, b))
        term1 = F.zero
        for (x, y), cc in H.comul(c).terms.items():
            v1 = row_za.get(x)
            if v1 is None:
                continue
            v2 = row_wb.get(y)
            if v2 is not None:
                term1 = term1 + cc * v1 * v2
        term2 = F.zero
        dz = H.comul(z)
        dc = H.comul(c)
        for (z1, z2), cz in dz.terms.items():
            row1 = H.functional_row(H.mul(AlgElem.basis(z1, F), a))
            pref = H.mul(H.mul(w, AlgElem.basis(z2, F)), b)
            row2 = H.functional_row(pref)
            for (x, y), cc in dc.terms.items():
                v1 = row1.get(x)
                if v1 is None:
                    continue
                v2 = row2.get(y)
                if v2 is not None:
                    term2 = term2 + cz * cc * v1 * v2
        return term1 - term2

    def cached_star(u, vv):
        if star_cache is None:
            return star(H, u, vv, checked=False)
        key = (u, vv)
        out = star_cache.get(key)
        if out is None:
            out = star(H, u, vv, checked=False)
            star_cache[key] = out
        return out

    wb = H.mul(w, b)
    term1 = H.lam_of(H.mul(wb, cached_star(H.S(H.mul(z, a)), c)))
    term2 = H.lam_of(H.mul(wb, cached_star(H.S(a), H.mul(z, c))))
    return term1 - term2


# -- fusion coefficients ------------------------------------------------------


def fusion_coefficients(cas: CasimirBasis):
    """epsilon[i][j][s] in {0, 1} via the four-inequality rule, checked
    against the sigma/lambda ratio route; disagreement is an error."""
    H = cas.H
    F = H.field
    q = cas.q
    p = cas.p
    eps = [[[0] * q for _ in range(q)] for _ in range(q)]
    for i in range(q):
        for j in range(q):
            for s in range(q):
                rule = int(i + j + s <= p - 2 and i + j - s >= 0
                           and s + i - j >= 0 and s + j - i >= 0)
                ratio = sigma(H, cas.Ndot_minus[i], cas.Ndot_minus[j],
                              cas.P[s], checked=False) / \
                    H.lam_of(cas.Ndot_minus[s])
                if not ratio == F.from_int(rule):
                    raise ConsistencyError(
                        f"fusion coefficient mismatch at ({i},{j},{s})")
                eps[i][j][s] = rule
    return eps


# -- trace element classification --------------------------------------------


@dataclass
class TraceReport:
    class_coords: tuple
    in_tz: bool
    in_t4: bool
    t4_witness: "AlgElem | None"
    in_t3: bool
    t3_scalar: "object | None"   # X_z when in_t3
    c_plus: object
    c_minus: object
    in_t2: "bool | None" = None  # None = no witness found (semi-decided)
    t2_witness: "tuple | None" = None
    t2_checked: bool = False

    def summary(self):
        out = (f"T_Z: {'yes' if self.in_tz else 'no'}; "
               f"T4: {'yes' if self.in_t4 else 'no'}; "
               f"T3: {'yes' if self.in_t3 else 'no'}")
        if self.t2_checked:
            t2 = "witness found" if self.in_t2 else "no witness in catalog"
            out += f"; T2: {t2}"
        return out


class TraceClassifier:
    """Classification of central elements against the trace-element ladder.

    Star products are cached across calls; the T2 verdict is only a witness
    search over a fixed catalog (rays, class basis, their J-images), with
    the pairing condition checked at the center level, so membership there
    is semi-decided by construction.
    """

    def __init__(self, center: CenterBasis):
        self.center = center
        self.H = center.H
        self.star_cache = {}
        self._report_cache = {}
        _, self.theta, self.theta_inv = self.H.ribbon_elements()
        self.lambda_coords = center.class_proj(self.H.Lambda)

    def _star(self, a, b):
        key = (a, b)
        out = self.star_cache.get(key)
        if out is None:
            out = star(self.H, a, b, checked=False)
            self.star_cache[key] = out
        return out

    def in_tz(self, z: AlgElem) -> bool:
        """lam(z c (b z * a)) = lam(z c (b * (z a))) over center triples."""
        H = self.H
        basis = self.center.elements
        za = {id(a): H.mul(z, a) for a in basis}
        bz = {id(b): H.mul(b, z) for b in basis}
        for a in basis:
            for b in basis:
                left_elem = self._star(bz[id(b)], a)
                right_elem = self._star(b, za[id(a)])
                if left_elem == right_elem:
                    continue
                diff = left_elem - right_elem
                for c in basis:
                    if not H.lam_of(H.mul(H.mul(z, c), diff)).is_zero():
                        return False
        return True

    def class_mul(self, ca, cb):
        """Product in Z-hat from class coordinates."""
        H = self.H
        B = self.center.class_basis
        acc = AlgElem()
        for i, x in enumerate(ca):
            if x.is_zero():
                continue
            for j, y in enumerate(cb):
                if y.is_zero():
                    continue
                acc = acc + H.mul(B[i], B[j]).scale(x * y)
        return self.center.class_proj(acc)

    def classify(self, z: AlgElem, *, check_t2=False) -> TraceReport:
        cached = self._report_cache.get(z)
        if cached is not None and (cached.t2_checked or not check_t2):
            return cached
        H = self.H
        F = H.field
        center = self.center
        if not is_central(H, z):
            raise StructureError("trace candidates must be central")
        coords = center.class_proj(z)
        tz = self.in_tz(z)

        # T4: solve [z w] = [Lambda] for [w]
        B = center.class_basis
        rows = []
        prods = [center.class_proj(H.mul(z, bj)) for bj in B]
        for out_i in range(center.class_dim):
            coeffs = {j: prods[j][out_i] for j in range(len(B))
                      if not prods[j][out_i].is_zero()}
            rows.append((coeffs, self.lambda_coords[out_i]))
        witness = None
        try:
            sol = solve_sparse(rows, F, unknowns=range(len(B)))
            w = AlgElem()
            for j, bj in enumerate(B):
                if not sol[j].is_zero():
                    w = w + bj.scale(sol[j])
            if center.class_proj(H.mul(z, w)) == self.lambda_coords \
                    and center.class_eq(H.S(w), w):
                witness = w
        except ArithmeticError:
            witness = None
        t4 = tz and witness is not None

        # T3: [z J(z)] = X_z [Lambda] with X_z a unit (nonzero in a field)
        jz = j_op(H, z)
        zjz_coords = center.class_proj(H.mul(z, jz))
        scalar = None
        lam_c = self.lambda_coords
        ratio = None
        okratio = True
        for a, b in zip(zjz_coords, lam_c):
            if b.is_zero():
                if not a.is_zero():
                    okratio = False
                    break
            else:
                r = a / b
                if ratio is None:
                    ratio = r
                elif not ratio == r:
                    okratio = False
                    break
        if okratio and ratio is not None and not ratio.is_zero():
            scalar = ratio
        t3 = t4 and scalar is not None

        c_plus = H.lam_of(H.mul(z, self.theta))
        c_minus = H.lam_of(H.mul(z, self.theta_inv))

        report = TraceReport(class_coords=coords, in_tz=tz,
                             in_t4=t4, t4_witness=witness,
                             in_t3=t3, t3_scalar=scalar,
                             c_plus=c_plus, c_minus=c_minus)
        if check_t2:
            self._check_t2(z, report)
        self._report_cache[z] = report
        return report

    def _t2_catalog(self):
        cat = []
        if isinstance(self.center, CasimirBasis):
            cat.extend(self.tz_ray_elements())
        cat.extend(self.center.class_basis)
        cat.extend(j_op(self.H, z) for z in list(cat))
        seen = set()
        out = []
        for z in cat:
            if z in seen or z.is_zero():
                continue
            seen.add(z)
            out.append(z)
        return out

    def _check_t2(self, z, report: TraceReport):
        """Witness search for [z] = [z1 J(z2)] with vanishing center pairing."""
        H = self.H
        F = H.field
        center = self.center
        report.t2_checked = True
        target = center.class_proj(z)
        for z2 in self._t2_catalog():
            jz2 = center.class_proj(j_op(H, z2))
            B = center.class_basis
            rows = []
            prods = [self.class_mul(center.class_proj(bj), jz2) for bj in B]
            for out_i in range(center.class_dim):
                coeffs = {j: prods[j][out_i] for j in range(len(B))
                          if not prods[j][out_i].is_zero()}
                rows.append((coeffs, target[out_i]))
            try:
                sol = solve_sparse(rows, F, unknowns=range(len(B)))
            except ArithmeticError:
                continue
            z1 = AlgElem()
            for jj, bj in enumerate(B):
                if not sol[jj].is_zero():
                    z1 = z1 + bj.scale(sol[jj])
            if self.class_mul(center.class_proj(z1), jz2) != target:
                continue
            basis = center.elements
            ok = True
            for a in basis:
                for b in basis:
                    for c in basis:
                        val = delta_pairing(H, z1, z2, a, b, c,
                                            star_cache=self.star_cache)
                        if not val.is_zero():
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                report.in_t2 = True
                report.t2_witness = (z1, z2)
                return
        report.in_t2 = None
        report.t2_witness = None

    # -- T_Z enumeration for sl(2) -------------------------------------------

    def fusion_closed_subsets(self, eps):
        """Subsets of 0..q-1 containing 0, closed under nonzero fusion."""
        q = self.center.q
        out = []
        for mask in range(1 << q):
            if not mask & 1:
                continue
            ids = [i for i in range(q) if mask >> i & 1]
            idset = set(ids)
            good = True
            for i in range(q):
                for j in range(q):
                    for s in range(q):
                        if eps[i][j][s]:
                            inside = (i in idset) + (j in idset) + (s in idset)
                            if inside == 2:
                                good = False
                if not good:
                    break
            if good:
                out.append(ids)
        return out

    def tz_ray_elements(self):
        """Representatives of the T_Z rays via fusion-closed index subsets."""
        center = self.center
        if not isinstance(center, CasimirBasis):
            raise StructureError("T_Z enumeration is implemented for sl(2) only")
        H = self.H
        F = H.field
        eps = fusion_coefficients(center)
        subsets = self.fusion_closed_subsets(eps)
        rays = []
        for ids in subsets:
            zp = AlgElem()
            for i in ids:
                zp = zp + center.P[i]
            rays.append(zp)
            zn = AlgElem()
            for i in ids:
                zn = zn + center.Ndot_minus[i].scale(F.qint(2 * i + 1))
            rays.append(zn)
        return rays

    def enumerate_tz(self):
        """All T_Z rays, each re-verified with the defining predicate."""
        rays = self.tz_ray_elements()
        out = []
        seen = []
        for z in rays:
            coords = self.center.class_proj(z)
            if any(self._proportional(coords, c) for c in seen):
                continue
            if not self.in_tz(z):
                raise ConsistencyError("enumerated ray fails the T_Z predicate")
            seen.append(coords)
            out.append(z)
        return out

    @staticmethod
    def _proportional(ca, cb):
        ratio = None
        for a, b in zip(ca, cb):
            if a.is_zero() != b.is_zero():
                return False
            if not a.is_zero():
                r = a / b
                if ratio is None:
                    ratio = r
                elif not ratio == r:
                    return False
        return True
