"""Exact sparse linear algebra over a cyclotomic field.

Rows and columns are keyed by arbitrary hashable labels; entries are CycNum.
Everything is Gaussian elimination with pivoting for sparsity, which is
plenty at the dimensions that occur here (a few hundred unknowns).
"""

from __future__ import annotations

__all__ = ["solve_sparse", "nullspace", "rank"]


def _eliminate(rows, field):
    """Reduce a list of (coeff_dict, rhs_list) rows in place.

    Returns (pivots, reduced_rows) where pivots maps column -> row index.
    rhs_list entries are CycNum (possibly several right-hand sides).
    """
    pivots = {}
    reduced = []
    for coeffs, rhs in rows:
        coeffs = dict(coeffs)
        rhs = list(rhs)
        # reduce against existing pivot rows
        for col, ridx in list(pivots.items()):
            if col in coeffs and coeffs[col]:
                f = coeffs[col]
                pc, pr = reduced[ridx]
                for c2, val in pc.items():
                    nv = coeffs.get(c2, field.zero) - f * val
                    if nv.is_zero():
                        coeffs.pop(c2, None)
                    else:
                        coeffs[c2] = nv
                for k in range(len(rhs)):
                    rhs[k] = rhs[k] - f * pr[k]
        coeffs = {c: val for c, val in coeffs.items() if not val.is_zero()}
        if not coeffs:
            reduced.append((coeffs, rhs))
            continue
        piv = min(coeffs, key=repr)
        inv = coeffs[piv].inverse()
        coeffs = {c: val * inv for c, val in coeffs.items()}
        rhs = [val * inv for val in rhs]
        # back-substitute into earlier pivot rows
        for col, ridx in list(pivots.items()):
            pc, pr = reduced[ridx]
            if piv in pc:
                f = pc[piv]
                for c2, val in coeffs.items():
                    nv = pc.get(c2, field.zero) - f * val
                    if nv.is_zero():
                        pc.pop(c2, None)
                    else:
                        pc[c2] = nv
                for k in range(len(pr)):
                    pr[k] = pr[k] - f * rhs[k]
        pivots[piv] = len(reduced)
        reduced.append((coeffs, rhs))
    return pivots, reduced


def solve_sparse(rows, field, unknowns=None):
    """Solve a sparse linear system.

    rows: iterable of (coeff_dict, rhs) with coeff_dict {unknown: CycNum}.
    Returns {unknown: CycNum} for a consistent system (free unknowns are
    set to zero); raises ArithmeticError if inconsistent.
    """
    pivots, reduced = _eliminate([(c, [r]) for c, r in rows], field)
    for coeffs, rhs in reduced:
        if not coeffs and not rhs[0].is_zero():
            raise ArithmeticError("inconsistent linear system")
    sol = {}
    for col, ridx in pivots.items():
        coeffs, rhs = reduced[ridx]
        extra = field.zero
        for c, val in coeffs.items():
            if c != col and c in sol:
                extra = extra + val * sol[c]
        sol[col] = rhs[0] - extra
    # reduced rows are fully back-substituted, so non-pivot columns in a
    # pivot row are free unknowns: set them to zero
    if unknowns is not None:
        for u in unknowns:
            sol.setdefault(u, field.zero)
    return sol


def nullspace(columns, field):
    """Null space of a sparse matrix given column-wise.

    columns: list of {row_label: CycNum}; returns a list of coefficient
    vectors (lists of CycNum, aligned with columns) spanning the kernel.
    """
    n = len(columns)
    # Track each column as a row over row-labels augmented by identity tags.
    work = []
    for j, col in enumerate(columns):
        work.append(({r: v for r, v in col.items() if not v.is_zero()},
                     {j: field.one}))
    pivots = {}
    kernel = []
    for coeffs, tag in work:
        for col, (pc, pt) in pivots.items():
            if col in coeffs and coeffs[col]:
                f = coeffs[col]
                for c2, val in pc.items():
                    nv = coeffs.get(c2, field.zero) - f * val
                    if nv.is_zero():
                        coeffs.pop(c2, None)
                    else:
                        coeffs[c2] = nv
                for t2, val in pt.items():
                    nv = tag.get(t2, field.zero) - f * val
                    if nv.is_zero():
                        tag.pop(t2, None)
                    else:
                        tag[t2] = nv
        coeffs = {c: v for c, v in coeffs.items() if not v.is_zero()}
        if not coeffs:
            kernel.append(tag)
            continue
        piv = min(coeffs, key=repr)
        inv = coeffs[piv].inverse()
        coeffs = {c: v * inv for c, v in coeffs.items()}
        tag = {t: v * inv for t, v in tag.items()}
        pivots[piv] = (coeffs, tag)
    out = []
    for tag in kernel:
        out.append([tag.get(j, field.zero) for j in range(n)])
    return out


def rank(columns, field):
    return len(columns) - len(nullspace(columns, field))
