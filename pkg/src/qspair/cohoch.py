"""Weight-graded co-Hochschild complex of a pair h < g, over exact rationals.

The cochain spaces are Sym^c(W) (x) Sym^c(V)^{(x)n} for V = g, W = h in an
adapted basis (the first dim_h basis vectors span h), with the differential

    d T = T_{01,2,...,n+1} - T_{0,12,...,n+1} + ... + (-1)^n T_{0,...,n(n+1)}
          + (-1)^{n+1} T (x) 1,

where each middle term applies the deconcatenation-style coproduct of the
symmetric coalgebra (the dual of polynomial multiplication) to one leg.  The
symmetrization coalgebra isomorphism Sym^c(g) = U(g) makes this compute the
same cohomology as the enveloping-algebra complex; it is never materialized.

Everything is a Fraction: rank is discontinuous, so floats never enter.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import DomainError, ParameterError


# ---------------------------------------------------------------------------
# exact linear algebra (sparse, over Q)

def rank_of_columns(cols):
    """Rank of a list of sparse columns (dicts rowkey -> Fraction)."""
    pivots = []  # list of (rowkey, normalized column dict)
    rank = 0
    for col in cols:
        col = dict(col)
        for rowkey, pcol in pivots:
            c = col.get(rowkey)
            if c:
                for rk, v in pcol.items():
                    new = col.get(rk, Fraction(0)) - c * v
                    if new:
                        col[rk] = new
                    else:
                        col.pop(rk, None)
        col = {k: v for k, v in col.items() if v}
        if col:
            rowkey = next(iter(col))
            inv = 1 / col[rowkey]
            pivots.append((rowkey, {k: v * inv for k, v in col.items()}))
            rank += 1
    return rank


def nullspace_dense(rows, ncols):
    """Basis of the kernel of a dense rational matrix given as row lists."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    pivot_col_of_row = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivot_col_of_row.append(c)
        r += 1
        if r == nrows:
            break
    pivot_cols = set(pivot_col_of_row)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_col_of_row):
            v[pc] = -mat[i][fc]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Lie data

@dataclass
class LieData:
    """Structure constants in an adapted basis; first dim_h vectors span h."""

    dim: int
    dim_h: int
    bracket: dict          # (a, b) -> dict index -> Fraction, for a < b
    names: tuple = ()

    def ad(self, a, b):
        """[X_a, X_b] as a sparse coefficient dict."""
        if a == b:
            return {}
        if a < b:
            return self.bracket.get((a, b), {})
        return {k: -v for k, v in self.bracket.get((b, a), {}).items()}


def _expand_in_basis(mats, target):
    """Coefficients of target in span(mats); exact; raises if not in span."""
    n = len(mats[0])
    rows = []
    rhs = []
    for i in range(n):
        for j in range(n):
            rows.append([m[i][j] for m in mats])
            rhs.append(target[i][j])
    # solve least squares exactly via elimination on the augmented system
    ncols = len(mats)
    aug = [row + [b] for row, b in zip(rows, rhs)]
    sol = [Fraction(0)] * ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(aug)):
            if aug[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i, c in enumerate(pivots):
        sol[c] = aug[i][-1]
    for i in range(r, len(aug)):
        if aug[i][-1] != 0:
            raise DomainError("element not in the span of the basis")
    return sol


def _comm(a, b):
    n = len(a)
    return tuple(
        tuple(
            sum(a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


def make_lie_data(matrices, dim_h, names=()):
    """Structure constants from exact matrices; validates h is a subalgebra."""
    mats = [tuple(tuple(Fraction(x) for x in row) for row in m)
            for m in matrices]
    dim = len(mats)
    bracket = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            coeffs = _expand_in_basis(mats, _comm(mats[a], mats[b]))
            entry = {i: c for i, c in enumerate(coeffs) if c}
            if entry:
                bracket[(a, b)] = entry
    for a in range(dim_h):
        for b in range(a + 1, dim_h):
            if any(i >= dim_h for i in bracket.get((a, b), {})):
                raise DomainError("h is not a subalgebra")
    return LieData(dim=dim, dim_h=dim_h, bracket=bracket, names=tuple(names))


def _E(n, i, j):
    return tuple(
        tuple(Fraction(1) if (a, b) == (i, j) else Fraction(0)
              for b in range(n))
        for a in range(n)
    )


def _madd(*terms):
    n = len(terms[0][1])
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, m in terms:
        for i in range(n):
            for j in range(n):
                out[i][j] += c * m[i][j]
    return tuple(tuple(row) for row in out)


def sl2_data(subalgebra="zero"):
    e, f = _E(2, 0, 1), _E(2, 1, 0)
    hh = _madd((Fraction(1), _E(2, 0, 0)), (Fraction(-1), _E(2, 1, 1)))
    if subalgebra == "zero":
        return make_lie_data([e, hh, f], 0, names=("e", "h", "f"))
    if subalgebra == "cartan":
        return make_lie_data([hh, e, f], 1, names=("h", "e", "f"))
    raise ParameterError(f"sl2 supports zero|cartan, got {subalgebra!r}")


def sl3_data(subalgebra="zero"):
    hs = [
        _madd((Fraction(1), _E(3, 0, 0)), (Fraction(-1), _E(3, 1, 1))),
        _madd((Fraction(1), _E(3, 1, 1)), (Fraction(-1), _E(3, 2, 2))),
    ]
    es = [_E(3, 0, 1), _E(3, 0, 2), _E(3, 1, 2)]
    fs = [_E(3, 1, 0), _E(3, 2, 0), _E(3, 2, 1)]
    if subalgebra == "zero":
        return make_lie_data(hs + es + fs, 0)
    if subalgebra == "cartan":
        return make_lie_data(hs + es + fs, 2)
    if subalgebra == "so3":
        anti = [
            _madd((Fraction(1), _E(3, 0, 1)), (Fraction(-1), _E(3, 1, 0))),
            _madd((Fraction(1), _E(3, 0, 2)), (Fraction(-1), _E(3, 2, 0))),
            _madd((Fraction(1), _E(3, 1, 2)), (Fraction(-1), _E(3, 2, 1))),
        ]
        sym = [
            _madd((Fraction(1), _E(3, 0, 1)), (Fraction(1), _E(3, 1, 0))),
            _madd((Fraction(1), _E(3, 0, 2)), (Fraction(1), _E(3, 2, 0))),
            _madd((Fraction(1), _E(3, 1, 2)), (Fraction(1), _E(3, 2, 1))),
        ]
        return make_lie_data(anti + sym + hs, 3)
    raise ParameterError(f"sl3 supports zero|cartan|so3, got {subalgebra!r}")


# ---------------------------------------------------------------------------
# monomials

def monomials(dim, degree):
    """Exponent tuples of total degree over dim letters."""
    if dim == 0:
        return [()] if degree == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], degree, dim)
    return out


def _splits(m):
    """All (a, b, binomial coefficient) with a + b = m componentwise."""
    ranges = [range(x + 1) for x in m]
    for a in itertools.product(*ranges):
        coeff = 1
        for ai, mi in zip(a, m):
            coeff *= comb(mi, ai)
        b = tuple(mi - ai for ai, mi in zip(a, m))
        yield a, b, Fraction(coeff)


def _embed(m_w, dim):
    """Include a W-monomial into V by zero padding."""
    return tuple(m_w) + (0,) * (dim - len(m_w))


# ---------------------------------------------------------------------------
# the complex

@dataclass
class CochainComplex:
    lie: LieData
    max_degree: int
    max_weight: int
    _basis_cache: dict = field(default_factory=dict)
    _diff_cache: dict = field(default_factory=dict)
    _inv_cache: dict = field(default_factory=dict)

    def basis(self, n, w):
        """Basis of C^{n,w}: tuples (m0, m1, ..., mn) of exponent tuples."""
        key = (n, w)
        if key in self._basis_cache:
            return self._basis_cache[key]
        d, dh = self.lie.dim, self.lie.dim_h
        out = []
        for w0 in range(w + 1):
            for m0 in monomials(dh, w0):
                for rest_w in _compositions(w - w0, n):
                    for rest in itertools.product(
                            *[monomials(d, k) for k in rest_w]):
                        out.append((m0,) + rest)
        self._basis_cache[key] = out
        return out

    def differential(self, n, w):
        """Sparse columns of d: C^{n,w} -> C^{n+1,w}, one per basis element."""
        key = (n, w)
        if key in self._diff_cache:
            return self._diff_cache[key]
        d = self.lie.dim
        cols = []
        for elt in self.basis(n, w):
            col = {}

            def add(target, coeff):
                col[target] = col.get(target, Fraction(0)) + coeff

            m0, rest = elt[0], elt[1:]
            # j = 0: coproduct on the W leg, second factor lands in V
            for a, b, coeff in _splits(m0):
                add((a, _embed(b, d)) + rest, coeff)
            # j = 1..n: coproduct on V legs
            for j in range(len(rest)):
                for a, b, coeff in _splits(rest[j]):
                    target = (m0,) + rest[:j] + (a, b) + rest[j + 1:]
                    add(target, (-1) ** (j + 1) * coeff)
            # final counit-style term T (x) 1
            unit = (0,) * d
            add(elt + (unit,), Fraction((-1) ** (n + 1)))
            cols.append({k: v for k, v in col.items() if v})
        self._diff_cache[key] = cols
        return cols

    def check_d_squared(self, n, w):
        """Exact d . d = 0 at bidegree (n, w)."""
        cols_n = self.differential(n, w)
        cols_n1 = self.differential(n + 1, w)
        index = {elt: i for i, elt in enumerate(self.basis(n + 1, w))}
        for col in cols_n:
            acc = {}
            for target, coeff in col.items():
                for t2, c2 in cols_n1[index[target]].items():
                    acc[t2] = acc.get(t2, Fraction(0)) + coeff * c2
            if any(v != 0 for v in acc.values()):
                return False
        return True

    def invariant_basis(self, n, w):
        """Rational basis of the h-invariants in C^{n,w} (dense columns)."""
        key = (n, w)
        if key in self._inv_cache:
            return self._inv_cache[key]
        basis = self.basis(n, w)
        index = {elt: i for i, elt in enumerate(basis)}
        nb = len(basis)
        rows_by_pair = {}
        for c in range(self.lie.dim_h):
            for i, elt in enumerate(basis):
                for target, coeff in self._h_action(c, elt):
                    rows_by_pair.setdefault((c, index[target]),
                                            [Fraction(0)] * nb)[i] += coeff
        rows = list(rows_by_pair.values())
        kernel = nullspace_dense(rows, nb) if rows else [
            [Fraction(1 if i == j else 0) for i in range(nb)]
            for j in range(nb)
        ]
        self._inv_cache[key] = kernel
        return kernel

    def _h_action(self, c, elt):
        """Diagonal adjoint action of basis vector c of h on a cochain."""
        d = self.lie.dim
        for leg in range(len(elt)):
            m = elt[leg]
            for i, exp in enumerate(m):
                if exp == 0:
                    continue
                for t, coeff in self.lie.ad(c, i).items():
                    if leg == 0 and t >= self.lie.dim_h:
                        # cannot happen: h is a subalgebra in an adapted basis
                        raise DomainError("h action left the W leg")
                    lowered = list(m)
                    lowered[i] -= 1
                    lowered[t] += 1
                    target = elt[:leg] + (tuple(lowered),) + elt[leg + 1:]
                    yield target, exp * coeff


def _compositions(total, parts):
    if parts == 0:
        return [()] if total == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], total, parts)
    return out


def build_complex(lie, max_degree=3, max_weight=4):
    if max_degree < 1 or max_weight < 1:
        raise ParameterError("bounds must be at least 1")
    return CochainComplex(lie=lie, max_degree=max_degree, max_weight=max_weight)


# ---------------------------------------------------------------------------
# cohomology

def _rank_plain(cc, n, w):
    if n < 0:
        return 0
    return rank_of_columns(cc.differential(n, w))


def _rank_invariant(cc, n, w):
    if n < 0:
        return 0
    inv = cc.invariant_basis(n, w)
    if not inv:
        return 0
    cols = cc.differential(n, w)
    combined = []
    for vec in inv:
        acc = {}
        for i, coeff in enumerate(vec):
            if coeff == 0:
                continue
            for target, c2 in cols[i].items():
                acc[target] = acc.get(target, Fraction(0)) + coeff * c2
        combined.append({k: v for k, v in acc.items() if v})
    return rank_of_columns(combined)


def cohomology_dims(cc, invariant=False):
    """dim H^{n,w} for n <= max_degree, w <= max_weight; exact integers."""
    out = {}
    for w in range(cc.max_weight + 1):
        for n in range(cc.max_degree + 1):
            if invariant:
                dim_space = len(cc.invariant_basis(n, w))
                rank_out = _rank_invariant(cc, n, w)
                rank_in = _rank_invariant(cc, n - 1, w)
            else:
                dim_space = len(cc.basis(n, w))
                rank_out = _rank_plain(cc, n, w)
                rank_in = _rank_plain(cc, n - 1, w)
            out[(n, w)] = dim_space - rank_out - rank_in
    return out


def euler_characteristic_check(cc, w, invariant=False):
    """Alternating sums of space and cohomology dims agree at weight w.

    With the window truncated at top degree T the rank terms telescope to
    chi(H) = chi(C) - (-1)^T rank d^T; returns True when the exact integers
    satisfy this.
    """
    dims = cohomology_dims(cc, invariant=invariant)
    top = cc.max_degree
    chi_h = sum((-1) ** n * dims[(n, w)] for n in range(top + 1))
    chi_c = 0
    for n in range(top + 1):
        size = (len(cc.invariant_basis(n, w)) if invariant
                else len(cc.basis(n, w)))
        chi_c += (-1) ** n * size
    rank_top = (_rank_invariant(cc, top, w) if invariant
                else _rank_plain(cc, top, w))
    return chi_h == chi_c - (-1) ** top * rank_top


def primitive_cocycle(cc, letters):
    """The cochain 1 (x) X_{i1} (x) ... (x) X_{in} as a sparse vector index."""
    d = cc.lie.dim
    m0 = (0,) * cc.lie.dim_h
    legs = []
    for i in letters:
        m = [0] * d
        m[i] = 1
        legs.append(tuple(m))
    return (m0,) + tuple(legs)


def cocycle_is_coboundary(cc, n, w, elt_vector):
    """Whether a cocycle (dense dict basis elt -> Fraction) is in im(d)."""
    cols = cc.differential(n - 1, w)
    base_rank = rank_of_columns(cols)
    aug_rank = rank_of_columns(cols + [elt_vector])
    return aug_rank == base_rank
