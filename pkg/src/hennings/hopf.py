"""Finite-dimensional unimodular ribbon Hopf algebras over cyclotomic scalars.

Elements are sparse vectors over an abstract finite basis (integer indices);
the structure maps are supplied per basis index by the concrete builders
(quantum sl2, group algebras).  Everything here is exact.
"""

from __future__ import annotations

import random

from .cyclo import CycField, CycNum
from .linalg import solve_sparse

__all__ = ["AlgElem", "TensorElem", "HopfData", "AxiomReport",
           "StructureError", "ConsistencyError"]


class StructureError(Exception):
    """Raised when supplied algebra data violates a structural requirement."""


class ConsistencyError(Exception):
    """Raised when two independent computations of the same quantity differ."""


class AlgElem:
    """Sparse element of the algebra: {basis index: CycNum}, no zeros stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for i, c in terms.items():
                if not c.is_zero():
                    self.terms[i] = c

    @classmethod
    def basis(cls, i, field):
        e = cls()
        e.terms[i] = field.one
        return e

    def __add__(self, other):
        out = dict(self.terms)
        for i, c in other.terms.items():
            s = out.get(i)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(i, None)
            else:
                out[i] = s
        r = AlgElem()
        r.terms = out
        return r

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = AlgElem()
        r.terms = {i: -c for i, c in self.terms.items()}
        return r

    def scale(self, s):
        if isinstance(s, CycNum) and s.is_zero():
            return AlgElem()
        r = AlgElem()
        r.terms = {i: c * s for i, c in self.terms.items()}
        return r

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, AlgElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "AlgElem(0)"
        items = ", ".join(f"{i}: {c}" for i, c in sorted(self.terms.items()))
        return f"AlgElem({items})"


class TensorElem:
    """Sparse element of A^(arity): {tuple of basis indices: CycNum}."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        if arity < 1:
            raise ValueError("tensor arity must be >= 1")
        self.arity = arity
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    def __add__(self, other):
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        r = TensorElem(self.arity)
        r.terms = out
        return r

    def __sub__(self, other):
        return self + other.scale_int(-1)

    def scale_int(self, n):
        r = TensorElem(self.arity)
        r.terms = {k: c * n for k, c in self.terms.items()}
        return r

    def scale(self, s):
        r = TensorElem(self.arity)
        if not (isinstance(s, CycNum) and s.is_zero()):
            r.terms = {k: c * s for k, c in self.terms.items()}
        return r

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorElem) and other.arity == self.arity
                and other.terms == self.terms)

    def __repr__(self):
        return f"TensorElem(arity={self.arity}, nterms={len(self.terms)})"

    def permute(self, perm):
        """Reorder slots: new slot i holds old slot perm[i]."""
        r = TensorElem(self.arity)
        r.terms = {tuple(k[perm[i]] for i in range(self.arity)): c
                   for k, c in self.terms.items()}
        return r


class AxiomReport:
    """Outcome of the executable axiom suite on one HopfData."""

    def __init__(self):
        self.results = []  # (name, ok, counterexample or None)

    def add(self, name, ok, counterexample=None):
        self.results.append((name, bool(ok), counterexample))

    @property
    def ok(self):
        return all(r[1] for r in self.results)

    def failures(self):
        return [r for r in self.results if not r[1]]

    def as_text(self):
        lines = []
        for name, ok, ce in self.results:
            mark = "pass" if ok else "FAIL"
            extra = "" if ce is None else f"  [{ce}]"
            lines.append(f"{mark}  {name}{extra}")
        return "\n".join(lines)


class HopfData:
    """Structure maps and distinguished elements of one concrete algebra.

    mul_basis(i, j) -> {index: CycNum}; comul_basis(i) -> TensorElem(2);
    antipode_basis(i) -> AlgElem; counit_basis(i) -> CycNum.
    lam is the right integral as a coefficient row {index: CycNum}.
    R is a list of (coeff, i, j) pure tensors; g the special grouplike.
    lam_partners(i), if supplied, lists all j with lam(basis_i * basis_j) != 0
    as (j, value) pairs; it is only a sparsity hint for solvers.
    """

    def __init__(self, field: CycField, dim, mul_basis, comul_basis,
                 antipode_basis, counit_basis, unit, Lambda, lam, R, g,
                 name="", generators=None, basis_label=None,
                 lam_partners=None, mul_left_key=None, mul_right_key=None):
        self.field = field
        self.dim = dim
        self._mul_basis = mul_basis
        self._comul_basis = comul_basis
        self._antipode_basis = antipode_basis
        self._counit_basis = counit_basis
        self.unit = unit
        self.Lambda = Lambda
        self.lam = lam
        self.R = R
        self.g = g
        self.name = name
        self.generators = generators or []
        self.basis_label = basis_label or (lambda i: f"b{i}")
        self._lam_partners = lam_partners
        # optional sparsity hint: mul_basis(i, j) == {} unless
        # mul_left_key(i) == mul_right_key(j)
        self.mul_left_key = mul_left_key
        self.mul_right_key = mul_right_key
        self._comul_cache = {}
        self._antipode_cache = {}
        self._s_inv_cache = {}
        self._mul_cache = {}
        self._r21r = None
        self._g_inv = None
        self._ribbon = None
        if not self.lam_of(self.Lambda) == field.one:
            raise StructureError("right integral not normalized: lam(Lambda) != 1")

    # -- basic maps ------------------------------------------------------

    def mul_basis(self, i, j):
        key = (i, j)
        out = self._mul_cache.get(key)
        if out is None:
            out = self._mul_basis(i, j)
            self._mul_cache[key] = out
        return out

    def mul(self, a: AlgElem, b: AlgElem) -> AlgElem:
        out = {}
        for i, ca in a.terms.items():
            for j, cb in b.terms.items():
                c = ca * cb
                for k, s in self.mul_basis(i, j).items():
                    val = out.get(k)
                    val = c * s if val is None else val + c * s
                    out[k] = val
        r = AlgElem()
        r.terms = {k: v for k, v in out.items() if not v.is_zero()}
        return r

    def mul_many(self, elems):
        out = self.unit
        for e in elems:
            out = self.mul(out, e)
        return out

    def comul_basis(self, i) -> TensorElem:
        out = self._comul_cache.get(i)
        if out is None:
            out = self._comul_basis(i)
            self._comul_cache[i] = out
        return out

    def comul(self, a: AlgElem) -> TensorElem:
        out = TensorElem(2)
        acc = {}
        for i, c in a.terms.items():
            for k, s in self.comul_basis(i).terms.items():
                val = acc.get(k)
                val = c * s if val is None else val + c * s
                acc[k] = val
        out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        return out

    def comul_n(self, a: AlgElem, n: int) -> "TensorElem | AlgElem":
        """Iterated coproduct with n output slots; n = 1 returns a itself."""
        if n < 1:
            raise ValueError("comul_n needs n >= 1")
        if n == 1:
            return a
        cur = self.comul(a)
        for _ in range(n - 2):
            acc = {}
            for key, c in cur.terms.items():
                for (x, y), s in self.comul_basis(key[0]).terms.items():
                    k2 = (x, y) + key[1:]
                    val = acc.get(k2)
                    val = c * s if val is None else val + c * s
                    acc[k2] = val
            nxt = TensorElem(cur.arity + 1)
            nxt.terms = {k: v for k, v in acc.items() if not v.is_zero()}
            cur = nxt
        return cur

    def antipode_basis(self, i) -> AlgElem:
        out = self._antipode_cache.get(i)
        if out is None:
            out = self._antipode_basis(i)
            self._antipode_cache[i] = out
        return out

    def S(self, a: AlgElem) -> AlgElem:
        out = AlgElem()
        for i, c in a.terms.items():
            out = out + self.antipode_basis(i).scale(c)
        return out

    def S_inv(self, a: AlgElem) -> AlgElem:
        """S^-1(a) = S(g^-1 a g), from S^2 = conjugation by g."""
        out = AlgElem()
        for i, c in a.terms.items():
            r = self._s_inv_cache.get(i)
            if r is None:
                gi = self.g_inv
                r = self.S(self.mul(self.mul(gi, AlgElem.basis(i, self.field)),
                                    self.g))
                self._s_inv_cache[i] = r
            out = out + r.scale(c)
        return out

    @property
    def g_inv(self):
        if self._g_inv is None:
            self._g_inv = self.S(self.g)
            if not self.mul(self.g, self._g_inv) == self.unit:
                raise StructureError("S(g) is not inverse to g")
        return self._g_inv

    def eps(self, a: AlgElem) -> CycNum:
        out = self.field.zero
        for i, c in a.terms.items():
            out = out + c * self._counit_basis(i)
        return out

    def lam_of(self, a: AlgElem) -> CycNum:
        out = self.field.zero
        for i, c in a.terms.items():
            l = self.lam.get(i)
            if l is not None:
                out = out + c * l
        return out

    def lam_S(self, a: AlgElem) -> CycNum:
        return self.lam_of(self.S(a))

    def functional_row(self, y: AlgElem):
        """The row {x: lam(y * basis_x)} over the whole basis, sparsely."""
        row = {}
        for i, c in y.terms.items():
            for j, val in self.lam_partner_list(i):
                cur = row.get(j)
                cur = c * val if cur is None else cur + c * val
                row[j] = cur
        return {j: v for j, v in row.items() if not v.is_zero()}

    def lam_partner_list(self, i):
        """All (j, lam(basis_i * basis_j)) with nonzero value."""
        if self._lam_partners is not None:
            return self._lam_partners(i)
        out = []
        for j in range(self.dim):
            v = self.field.zero
            for k, s in self.mul_basis(i, j).items():
                l = self.lam.get(k)
                if l is not None:
                    v = v + s * l
            if not v.is_zero():
                out.append((j, v))
        return out

    # -- tensor helpers ----------------------------------------------------

    def tensor(self, *elems) -> TensorElem:
        arity = len(elems)
        out = TensorElem(arity)
        items = [list(e.terms.items()) for e in elems]
        def rec(k, key, coef):
            if k == arity:
                out.terms[key] = out.terms.get(key, self.field.zero) + coef
                return
            for i, c in items[k]:
                rec(k + 1, key + (i,), coef * c)
        rec(0, (), self.field.one)
        out.terms = {k: v for k, v in out.terms.items() if not v.is_zero()}
        return out

    def tmul(self, t1: TensorElem, t2: TensorElem) -> TensorElem:
        """Slotwise product in A^(arity)."""
        if t1.arity != t2.arity:
            raise ValueError("tensor arity mismatch")
        n = t1.arity
        acc = {}
        mulb = self.mul_basis
        lk, rk = self.mul_left_key, self.mul_right_key
        if lk is not None:
            buckets = {}
            for k2, c2 in t2.terms.items():
                buckets.setdefault(tuple(rk(x) for x in k2), []).append((k2, c2))
            def pair_iter():
                for k1, c1 in t1.terms.items():
                    want = tuple(lk(x) for x in k1)
                    for k2, c2 in buckets.get(want, ()):
                        yield k1, c1, k2, c2
        else:
            def pair_iter():
                for k1, c1 in t1.terms.items():
                    for k2, c2 in t2.terms.items():
                        yield k1, c1, k2, c2
        if n == 2:
            for (a1, b1), c1, (a2, b2), c2 in pair_iter():
                pa = mulb(a1, a2)
                if not pa:
                    continue
                pb = mulb(b1, b2)
                if not pb:
                    continue
                coef = c1 * c2
                for ia, ca in pa.items():
                    cca = coef * ca
                    for ib, cb in pb.items():
                        key = (ia, ib)
                        val = acc.get(key)
                        cc = cca * cb
                        acc[key] = cc if val is None else val + cc
        elif n == 3:
            for (a1, b1, d1), c1, (a2, b2, d2), c2 in pair_iter():
                pa = mulb(a1, a2)
                if not pa:
                    continue
                pb = mulb(b1, b2)
                if not pb:
                    continue
                pd = mulb(d1, d2)
                if not pd:
                    continue
                coef = c1 * c2
                for ia, ca in pa.items():
                    cca = coef * ca
                    for ib, cb in pb.items():
                        ccb = cca * cb
                        for idd, cd in pd.items():
                            key = (ia, ib, idd)
                            val = acc.get(key)
                            cc = ccb * cd
                            acc[key] = cc if val is None else val + cc
        else:
            for k1, c1, k2, c2 in pair_iter():
                parts = [mulb(k1[s], k2[s]) for s in range(n)]
                if any(not pp for pp in parts):
                    continue
                coef = c1 * c2
                def rec(s, key, cc):
                    if s == n:
                        val = acc.get(key)
                        acc[key] = cc if val is None else val + cc
                        return
                    for idx, sc in parts[s].items():
                        rec(s + 1, key + (idx,), cc * sc)
                rec(0, (), coef)
        out = TensorElem(n)
        out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        return out

    def tensor_apply(self, t: TensorElem, maps) -> TensorElem:
        """Apply per-slot linear maps; maps[i] is None (identity) or a
        function index -> AlgElem."""
        n = t.arity
        acc = {}
        for key, c in t.terms.items():
            parts = []
            for s in range(n):
                f = maps[s]
                if f is None:
                    parts.append({key[s]: self.field.one})
                else:
                    parts.append(f(key[s]).terms)
            def rec(s, k2, cc):
                if s == n:
                    val = acc.get(k2)
                    val = cc if val is None else val + cc
                    acc[k2] = val
                    return
                for idx, sc in parts[s].items():
                    rec(s + 1, k2 + (idx,), cc * sc)
            rec(0, (), c)
        out = TensorElem(n)
        out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        return out

    def R_tensor(self, n, pos_a, pos_b, invert=False) -> TensorElem:
        """R^(ab) (or its inverse (S x 1)R) placed in an n-fold tensor."""
        out = TensorElem(n)
        unit_terms = list(self.unit.terms.items())
        for coef, i, j in self.R:
            a_el = {i: self.field.one}
            if invert:
                a_el = self.antipode_basis(i).terms
            for ai, ac in a_el.items():
                base = [None] * n
                base[pos_a] = (ai, ac)
                base[pos_b] = (j, self.field.one)
                def rec(s, key, cc):
                    if s == n:
                        out.terms[key] = out.terms.get(key, self.field.zero) + cc
                        return
                    if base[s] is not None:
                        idx, sc = base[s]
                        rec(s + 1, key + (idx,), cc * sc)
                    else:
                        for u, uc in unit_terms:
                            rec(s + 1, key + (u,), cc * uc)
                rec(0, (), coef)
        out.terms = {k: v for k, v in out.terms.items() if not v.is_zero()}
        return out

    @property
    def r21r(self) -> TensorElem:
        """R^21 * R, cached; this drives the J operator and ribbon checks."""
        if self._r21r is None:
            r21 = self.R_tensor(2, 1, 0)
            r = self.R_tensor(2, 0, 1)
            self._r21r = self.tmul(r21, r)
        return self._r21r

    # -- ribbon elements ----------------------------------------------------

    def ribbon_elements(self):
        """(u, theta, theta_inv) with u = sum S(b_i) a_i, theta = g u^-1.

        theta and theta_inv are assembled from their closed forms and
        verified: theta * theta_inv = 1 and theta * u = g.
        """
        if self._ribbon is not None:
            return self._ribbon
        u = AlgElem()
        theta = AlgElem()
        theta_inv = AlgElem()
        for coef, i, j in self.R:
            a = AlgElem.basis(i, self.field).scale(coef)
            b = AlgElem.basis(j, self.field)
            u = u + self.mul(self.S(b), a)
            theta = theta + self.mul(self.mul(b, self.g), a)
            theta_inv = theta_inv + self.mul(self.mul(a, self.S(b)), self.g)
        if not self.mul(theta, theta_inv) == self.unit:
            raise StructureError("ribbon element is not invertible")
        if not self.mul(theta, u) == self.g:
            raise StructureError("theta != g * u^-1")
        self._ribbon = (u, theta, theta_inv)
        return self._ribbon

    # -- Phi bijection -------------------------------------------------------

    def phi_solve(self, f) -> AlgElem:
        """The unique a with lam(a * b) = f(b) for every basis b.

        f is a {basis index: CycNum} coefficient map (missing = 0).
        """
        rows = {}
        for x in range(self.dim):
            for b, val in self.lam_partner_list(x):
                rows.setdefault(b, {})[x] = val
        eqs = []
        seen = set()
        for b, coeffs in rows.items():
            eqs.append((coeffs, f.get(b, self.field.zero)))
            seen.add(b)
        for b in range(self.dim):
            if b not in seen and not f.get(b, self.field.zero).is_zero():
                raise StructureError("integral pairing is singular for f")
        try:
            sol = solve_sparse(eqs, self.field, unknowns=range(self.dim))
        except ArithmeticError as e:
            raise StructureError(f"phi_solve: {e}") from e
        out = AlgElem()
        out.terms = {x: c for x, c in sol.items() if not c.is_zero()}
        return out

    # -- executable axiom suite ------------------------------------------------

    def axiom_report(self, samples="all") -> AxiomReport:
        """Run every axiom the construction relies on.

        samples: "all" exhausts per-element axioms over the basis; an int n
        checks them on a deterministic pseudo-random sample of n indices.
        Pairwise structural checks always use a deterministic sample of 200
        pairs plus all generator pairs (full pair enumeration is reserved
        for the cheap integral identity).
        """
        rep = AxiomReport()
        F = self.field
        rng = random.Random(20260810)
        if samples == "all":
            singles = list(range(self.dim))
        else:
            singles = sorted(rng.sample(range(self.dim), min(samples, self.dim)))
        gen_idx = []
        for gel in self.generators:
            gen_idx.extend(gel.terms.keys())
        gen_idx = sorted(set(gen_idx))
        pair_pool = sorted(set(gen_idx) | set(singles))
        pairs = [(i, j) for i in gen_idx for j in gen_idx]
        for _ in range(200):
            pairs.append((rng.choice(pair_pool), rng.choice(pair_pool)))
        pairs = sorted(set(pairs))

        def basis(i):
            return AlgElem.basis(i, F)

        # counit: (eps x 1) comul = id = (1 x eps) comul
        ok, ce = True, None
        for i in singles:
            d = self.comul_basis(i)
            left = AlgElem()
            right = AlgElem()
            for (x, y), c in d.terms.items():
                left = left + AlgElem({y: c * self._counit_basis(x)})
                right = right + AlgElem({x: c * self._counit_basis(y)})
            if not (left == basis(i) and right == basis(i)):
                ok, ce = False, self.basis_label(i)
                break
        rep.add("counit", ok, ce)

        # coassociativity
        ok, ce = True, None
        for i in singles:
            d = self.comul_basis(i)
            l = self.tensor_apply3_left(d)
            r = self.tensor_apply3_right(d)
            if not l == r:
                ok, ce = False, self.basis_label(i)
                break
        rep.add("coassociativity", ok, ce)

        # comultiplication of the unit
        rep.add("comul-unit", self.comul(self.unit) == self.tensor(self.unit, self.unit))

        # antipode axiom m(S x 1)Delta = m(1 x S)Delta = eps * unit
        ok, ce = True, None
        for i in singles:
            d = self.comul_basis(i)
            left = AlgElem()
            right = AlgElem()
            for (x, y), c in d.terms.items():
                left = left + self.mul(self.antipode_basis(x), basis(y)).scale(c)
                right = right + self.mul(basis(x), self.antipode_basis(y)).scale(c)
            target = self.unit.scale(self._counit_basis(i))
            if not (left == target and right == target):
                ok, ce = False, self.basis_label(i)
                break
        rep.add("antipode", ok, ce)

        # antipode flips the coproduct: T(S x S)Delta(a) = Delta(S(a))
        ok, ce = True, None
        for i in singles:
            lhs = self.tensor_apply(self.comul_basis(i),
                                    [self.antipode_basis, self.antipode_basis])
            lhs = lhs.permute([1, 0])
            rhs = self.comul(self.antipode_basis(i))
            if not lhs == rhs:
                ok, ce = False, self.basis_label(i)
                break
        rep.add("antipode-coproduct-flip", ok, ce)

        # unit laws and sampled associativity / Delta-multiplicativity
        ok, ce = True, None
        for i in singles:
            b = basis(i)
            if not (self.mul(self.unit, b) == b and self.mul(b, self.unit) == b):
                ok, ce = False, self.basis_label(i)
                break
        rep.add("unit-law", ok, ce)

        ok, ce = True, None
        for (i, j) in pairs:
            prod = self.mul(basis(i), basis(j))
            if not self.comul(prod) == self.tmul(self.comul_basis(i),
                                                 self.comul_basis(j)):
                ok, ce = False, f"{self.basis_label(i)},{self.basis_label(j)}"
                break
        rep.add("comul-multiplicative", ok, ce)

        ok, ce = True, None
        for n, (i, j) in enumerate(pairs):
            k = pairs[(n * 7 + 3) % len(pairs)][0]
            l1 = self.mul(self.mul(basis(i), basis(j)), basis(k))
            l2 = self.mul(basis(i), self.mul(basis(j), basis(k)))
            if not l1 == l2:
                ok, ce = False, f"{i},{j},{k}"
                break
        rep.add("associativity", ok, ce)

        # right integral law: (lam x 1)Delta(a) = lam(a) 1
        ok, ce = True, None
        for i in singles:
            acc = AlgElem()
            for (x, y), c in self.comul_basis(i).terms.items():
                l = self.lam.get(x)
                if l is not None:
                    acc = acc + AlgElem({y: c * l})
            if not acc == self.unit.scale(self.lam.get(i, F.zero)):
                ok, ce = False, self.basis_label(i)
                break
        rep.add("right-integral-law", ok, ce)

        # two-sided integral: a Lambda = Lambda a = eps(a) Lambda
        ok, ce = True, None
        for i in singles:
            b = basis(i)
            t = self.Lambda.scale(self._counit_basis(i))
            if not (self.mul(b, self.Lambda) == t and self.mul(self.Lambda, b) == t):
                ok, ce = False, self.basis_label(i)
                break
        rep.add("integral-two-sided", ok, ce)

        rep.add("integral-normalized",
                self.lam_of(self.Lambda) == F.one and
                self.lam_of(self.S(self.Lambda)) == F.one)

        # unimodular trace identity lam(ab) = lam(S^2(b) a), all pairs when
        # exhausting (it is cheap), sampled otherwise
        ok, ce = True, None
        upairs = ([(i, j) for i in singles for j in singles]
                  if samples == "all" else pairs)
        for (i, j) in upairs:
            lhs = self.lam_of(self.mul(basis(i), basis(j)))
            rhs = self.lam_of(self.mul(self.S(self.antipode_basis(j)), basis(i)))
            if not lhs == rhs:
                ok, ce = False, f"{self.basis_label(i)},{self.basis_label(j)}"
                break
        rep.add("unimodular-trace", ok, ce)

        # quasitriangular (a): T Delta(a) R = R Delta(a)
        R2 = self.R_tensor(2, 0, 1)
        ok, ce = True, None
        for i in singles:
            d = self.comul_basis(i)
            lhs = self.tmul(d.permute([1, 0]), R2)
            rhs = self.tmul(R2, d)
            if not lhs == rhs:
                ok, ce = False, self.basis_label(i)
                break
        rep.add("qt-intertwiner", ok, ce)

        # quasitriangular (b), (c): coproducts of R
        dR_left = TensorElem(3)
        dR_right = TensorElem(3)
        for coef, i, j in self.R:
            for (x, y), c in self.comul_basis(i).terms.items():
                k = (x, y, j)
                dR_left.terms[k] = dR_left.terms.get(k, F.zero) + coef * c
            for (x, y), c in self.comul_basis(j).terms.items():
                k = (i, x, y)
                dR_right.terms[k] = dR_right.terms.get(k, F.zero) + coef * c
        dR_left.terms = {k: v for k, v in dR_left.terms.items() if not v.is_zero()}
        dR_right.terms = {k: v for k, v in dR_right.terms.items() if not v.is_zero()}
        R13 = self.R_tensor(3, 0, 2)
        R23 = self.R_tensor(3, 1, 2)
        R12 = self.R_tensor(3, 0, 1)
        rep.add("qt-coproduct-first", dR_left == self.tmul(R13, R23))
        rep.add("qt-coproduct-second", dR_right == self.tmul(R13, R12))
        rep.add("qt-yang-baxter",
                self.tmul(self.tmul(R12, R13), R23) ==
                self.tmul(self.tmul(R23, R13), R12))

        Rinv = self.R_tensor(2, 0, 1, invert=True)
        id2 = self.tensor(self.unit, self.unit)
        rep.add("qt-antipode-inverse", self.tmul(Rinv, R2) == id2)
        sSR = TensorElem(2)
        for coef, i, j in self.R:
            si = self.antipode_basis(i)
            sj = self.antipode_basis(j)
            for x, cx in si.terms.items():
                for y, cy in sj.terms.items():
                    k = (x, y)
                    sSR.terms[k] = sSR.terms.get(k, F.zero) + coef * cx * cy
        sSR.terms = {k: v for k, v in sSR.terms.items() if not v.is_zero()}
        rep.add("qt-antipode-squared", sSR == R2)

        eps_l = AlgElem()
        eps_r = AlgElem()
        for coef, i, j in self.R:
            eps_l = eps_l + AlgElem({j: coef * self._counit_basis(i)})
            eps_r = eps_r + AlgElem({i: coef * self._counit_basis(j)})
        rep.add("qt-counit", eps_l == self.unit and eps_r == self.unit)

        # Drinfeld element and ribbon structure
        try:
            u, theta, theta_inv = self.ribbon_elements()
            rep.add("drinfeld-invertible", True)
        except StructureError as e:
            rep.add("drinfeld-invertible", False, str(e))
            return rep
        ok, ce = True, None
        u_inv = self.mul(self.g_inv, theta)
        for i in singles:
            b = basis(i)
            lhs = self.S(self.antipode_basis(i))
            if not lhs == self.mul(self.mul(u, b), u_inv):
                ok, ce = False, self.basis_label(i)
                break
        rep.add("drinfeld-squared-antipode", ok, ce)
        rep.add("drinfeld-coproduct",
                self.tmul(self.comul(u), self.r21r) == self.tensor(u, u))

        ok, ce = True, None
        for i in singles:
            b = basis(i)
            lhs = self.S(self.antipode_basis(i))
            rhs = self.mul(self.mul(self.g, b), self.g_inv)
            if not lhs == rhs:
                ok, ce = False, self.basis_label(i)
                break
        rep.add("ribbon-grouplike-squared-antipode", ok, ce)
        rep.add("ribbon-grouplike-coproduct",
                self.comul(self.g) == self.tensor(self.g, self.g))
        rep.add("ribbon-antipode-fixed", self.S(theta) == theta)
        rep.add("ribbon-inverse", self.mul(theta, theta_inv) == self.unit)
        # With theta = g u^-1 the coproduct identity carries the inverse on
        # theta's side: Delta(theta^-1) (R21 R) = theta^-1 x theta^-1
        # (equivalently Delta(theta) = (theta x theta)(R21 R)).
        rep.add("ribbon-coproduct",
                self.tmul(self.comul(theta_inv), self.r21r) ==
                self.tensor(theta_inv, theta_inv))
        rep.add("ribbon-coproduct-positive",
                self.comul(theta) ==
                self.tmul(self.tensor(theta, theta), self.r21r))
        ok, ce = True, None
        for i in singles:
            b = basis(i)
            if not self.mul(theta, b) == self.mul(b, theta):
                ok, ce = False, self.basis_label(i)
                break
        rep.add("ribbon-central", ok, ce)
        return rep

    # small helpers for coassociativity without building comul_n twice
    def tensor_apply3_left(self, d: TensorElem) -> TensorElem:
        acc = {}
        for (x, y), c in d.terms.items():
            for (a, b), s in self.comul_basis(x).terms.items():
                k = (a, b, y)
                val = acc.get(k)
                val = c * s if val is None else val + c * s
                acc[k] = val
        out = TensorElem(3)
        out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        return out

    def tensor_apply3_right(self, d: TensorElem) -> TensorElem:
        acc = {}
        for (x, y), c in d.terms.items():
            for (a, b), s in self.comul_basis(y).terms.items():
                k = (x, a, b)
                val = acc.get(k)
                val = c * s if val is None else val + c * s
                acc[k] = val
        out = TensorElem(3)
        out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        return out
