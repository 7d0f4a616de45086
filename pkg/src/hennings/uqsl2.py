"""The restricted quantum enveloping algebra of sl(2) at an odd prime p.

Basis {1_c E^(n) F^(m)} with c in Z/p and 0 <= n, m <= p-1, in divided-power
normal order; dimension p^3.  Structure constants follow the four product
relations, the two displayed coproducts, and the two antipode formulas; the
right integral is lam(1_c E^(p-1) F^(p-1)) = v^c.

Basis index encoding: idx = (c*p + n)*p + m.
"""

from __future__ import annotations

from .cyclo import CycField
from .hopf import AlgElem, HopfData, TensorElem

__all__ = ["build_uqsl2", "sl2_index", "sl2_decode", "RepVn", "rep_action",
           "trace_element", "quantum_trace", "rt_trace_element"]


def sl2_index(p, c, n, m):
    return ((c % p) * p + n) * p + m


def sl2_decode(p, idx):
    m = idx % p
    n = (idx // p) % p
    c = idx // (p * p)
    return c, n, m


def build_uqsl2(p: int) -> HopfData:
    """Assemble the full Hopf datum; passes the axiom suite exactly."""
    field = CycField(p)
    one = field.one
    qbinom = field.qbinom
    vpow = field.v_power

    def idx(c, n, m):
        return ((c % p) * p + n) * p + m

    def product_basis(x, y):
        """1_c E^(n) F^(m) * 1_s E^(a) F^(b) as {index: coeff}."""
        c, n, m = sl2_decode(p, x)
        s, a, b = sl2_decode(p, y)
        if (c - 2 * n - s + 2 * m) % p != 0:
            return {}
        out = {}
        for t in range(min(a, m) + 1):
            N = n + a - t
            M = m + b - t
            if N >= p or M >= p:
                continue
            coef = qbinom(a + m - s, t) * qbinom(N, n) * qbinom(M, m - t)
            if coef.is_zero():
                continue
            k = idx(c, N, M)
            cur = out.get(k)
            out[k] = coef if cur is None else cur + coef
        return {k: v for k, v in out.items() if not v.is_zero()}

    def mul_basis(i, j):
        return product_basis(i, j)

    def comul_basis(i):
        """Delta(1_c E^(n) F^(m)) composed from the E- and F-coproducts."""
        c, n, m = sl2_decode(p, i)
        c2 = (c - 2 * n) % p
        out = TensorElem(2)
        acc = {}
        for aE in range(n + 1):
            for r in range(p):
                coefE = vpow(aE * (aE - n) + r * (n - aE))
                legE1 = idx(r, aE, 0)
                legE2 = idx(c - r, n - aE, 0)
                for aF in range(m + 1):
                    for r2 in range(p):
                        left = product_basis(legE1, idx(r2, 0, aF))
                        if not left:
                            continue
                        coefF = vpow(aF * (aF - m) - (c2 - r2) * aF)
                        right = product_basis(legE2, idx((c2 - r2) % p, 0, m - aF))
                        if not right:
                            continue
                        coef = coefE * coefF
                        for k1, c1 in left.items():
                            for k2, v2 in right.items():
                                key = (k1, k2)
                                cc = coef * c1 * v2
                                cur = acc.get(key)
                                acc[key] = cc if cur is None else cur + cc
        out.terms = {k: v for k, v in acc.items() if not v.is_zero()}
        return out

    def antipode_basis(i):
        """S is an antihomomorphism: S(x) = S(F-part) * S(E-part)."""
        c, n, m = sl2_decode(p, i)
        c2 = c - 2 * n
        coef = vpow(-m * (c2 - 1 + m)) * vpow(n * (c - 1 - n))
        if (n + m) % 2 == 1:
            coef = -coef
        fpart = idx(-c2 - 2 * m, 0, m)
        epart = idx(-c + 2 * n, n, 0)
        prod = product_basis(fpart, epart)
        return AlgElem({k: coef * v for k, v in prod.items()})

    def counit_basis(i):
        c, n, m = sl2_decode(p, i)
        return one if (c == 0 and n == 0 and m == 0) else field.zero

    unit = AlgElem({idx(c, 0, 0): one for c in range(p)})
    Lambda = AlgElem({idx(0, p - 1, p - 1): one})
    lam = {idx(c, p - 1, p - 1): vpow(c) for c in range(p)}
    g = AlgElem({idx(c, 0, 0): vpow(-c) for c in range(p)})

    R = []
    for n in range(p):
        brace_n = field.braces(n)
        for r in range(p):
            for s in range(p):
                coef = vpow(n * (n - 1) // 2) * field.v_half_power(r * s) * brace_n
                R.append((coef, idx(r, 0, n), idx(s, n, 0)))

    generators = [AlgElem({idx(c, 0, 0): one}) for c in range(p)]
    generators.append(AlgElem({idx(c, 1, 0): one for c in range(p)}))
    generators.append(AlgElem({idx(c, 0, 1): one for c in range(p)}))

    def basis_label(i):
        c, n, m = sl2_decode(p, i)
        return f"1_{c}E{n}F{m}"

    def lam_partners(i):
        """All (j, lam(basis_i * basis_j)) != 0; at most p entries."""
        c, n, m = sl2_decode(p, i)
        s = (c - 2 * n + 2 * m) % p
        out = []
        for a in range(p):
            t = n + a - (p - 1)
            if t < 0 or t > min(a, m):
                continue
            b = n + a - m
            if not 0 <= b < p:
                continue
            j = idx(s, a, b)
            prod = product_basis(i, j)
            val = field.zero
            for k, coef in prod.items():
                l = lam.get(k)
                if l is not None:
                    val = val + coef * l
            if not val.is_zero():
                out.append((j, val))
        return out

    def mul_left_key(i):
        c, n, m = sl2_decode(p, i)
        return (c - 2 * n + 2 * m) % p

    def mul_right_key(j):
        return j // (p * p)

    return HopfData(field, p ** 3, mul_basis, comul_basis, antipode_basis,
                    counit_basis, unit, Lambda, lam, R, g,
                    name=f"uqsl2(p={p})", generators=generators,
                    basis_label=basis_label, lam_partners=lam_partners,
                    mul_left_key=mul_left_key, mul_right_key=mul_right_key)


class RepVn:
    """The simple module with highest weight 2n, 0 <= n <= q-1; dim 2n+1.

    Basis e_{-n}, ..., e_n; generator actions: F e_i = e_{i-1} (0 at the
    lowest weight), E e_i = [n+i+1] e_{i+1} (0 at the highest), and 1_c
    projects onto weight spaces 2i = c mod p.
    """

    def __init__(self, H: HopfData, n: int):
        p = H.field.p
        if not 0 <= n <= H.field.q - 1:
            raise ValueError(f"n must be in 0..q-1, got {n}")
        self.H = H
        self.n = n
        self.dim = 2 * n + 1
        self.p = p
        F = H.field
        d = self.dim
        zero = F.zero
        self._E = [[zero] * d for _ in range(d)]
        self._F = [[zero] * d for _ in range(d)]
        for col in range(d):
            i = col - n
            if i < n:
                self._E[col + 1][col] = F.qint(n + i + 1)
            if i > -n:
                self._F[col - 1][col] = F.one
        self._epows = self._divided_powers(self._E)
        self._fpows = self._divided_powers(self._F)
        self._zv = None

    def _divided_powers(self, M):
        """M^(k) = M^k / [k]! for k = 0..p-1 as small dense matrices."""
        F = self.H.field
        d = self.dim
        out = [self._identity()]
        cur = M
        for k in range(1, self.p):
            scaled = [[cur[i][j] / F.qfact(k) for j in range(d)] for i in range(d)]
            out.append(scaled)
            cur = self._matmul(cur, M)
        return out

    def _identity(self):
        F = self.H.field
        d = self.dim
        return [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]

    def _matmul(self, A, B):
        F = self.H.field
        d = self.dim
        out = [[F.zero] * d for _ in range(d)]
        for i in range(d):
            for k in range(d):
                a = A[i][k]
                if a.is_zero():
                    continue
                row = B[k]
                for j in range(d):
                    if not row[j].is_zero():
                        out[i][j] = out[i][j] + a * row[j]
        return out

    def basis_matrix(self, bidx):
        """Matrix of 1_c E^(n) F^(m) acting on V (columns = source)."""
        p = self.p
        c, nn, mm = sl2_decode(p, bidx)
        M = self._matmul(self._epows[nn], self._fpows[mm])
        d = self.dim
        F = self.H.field
        for col in range(d):
            for rowi in range(d):
                i = rowi - self.n
                if (2 * i - c) % p != 0:
                    M[rowi][col] = F.zero
        return M

    def elem_matrix(self, a: AlgElem):
        F = self.H.field
        d = self.dim
        out = [[F.zero] * d for _ in range(d)]
        for bidx, coef in a.terms.items():
            M = self.basis_matrix(bidx)
            for i in range(d):
                for j in range(d):
                    if not M[i][j].is_zero():
                        out[i][j] = out[i][j] + coef * M[i][j]
        return out


def rep_action(V: RepVn, a: AlgElem, vec):
    """Apply a to a module vector (list of CycNum of length dim V)."""
    if len(vec) != V.dim:
        raise ValueError("vector length does not match module dimension")
    M = V.elem_matrix(a)
    F = V.H.field
    return [sum((M[i][j] * vec[j] for j in range(V.dim)), F.zero)
            for i in range(V.dim)]


def quantum_trace(V: RepVn, a: AlgElem):
    """tr_V(a) = sum_i e_i^*(g a e_i), with g acting as v^(-2i) on e_i."""
    F = V.H.field
    M = V.elem_matrix(a)
    out = F.zero
    for col in range(V.dim):
        i = col - V.n
        out = out + F.v_power(-2 * i) * M[col][col]
    return out


def _quantum_trace_basis(V: RepVn, bidx):
    F = V.H.field
    M = V.basis_matrix(bidx)
    out = F.zero
    for col in range(V.dim):
        i = col - V.n
        out = out + F.v_power(-2 * i) * M[col][col]
    return out


def trace_element(V: RepVn) -> AlgElem:
    """The central z_V with tr_V(a) = lam(g^2 z_V a) for all a.

    Solved through the integral pairing and verified central against the
    algebra generators.
    """
    if V._zv is not None:
        return V._zv
    H = V.H
    F = H.field
    f = {}
    for bidx in range(H.dim):
        val = _quantum_trace_basis(V, bidx)
        if not val.is_zero():
            f[bidx] = val
    y = H.phi_solve(f)
    g_inv2 = H.mul(H.g_inv, H.g_inv)
    z = H.mul(g_inv2, y)
    for gen in H.generators:
        if not H.mul(z, gen) == H.mul(gen, z):
            raise ArithmeticError("trace element is not central")
    V._zv = z
    return z


def rt_trace_element(H: HopfData) -> AlgElem:
    """sum_n [2n+1] z_{V_n} over n = 0..q-1 (the quantum-dimension mix)."""
    F = H.field
    out = AlgElem()
    for n in range(F.q):
        V = RepVn(H, n)
        out = out + trace_element(V).scale(F.qint(2 * n + 1))
    return out
