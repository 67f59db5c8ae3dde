"""Sparse linear operators on tensor powers.

Everything downstream (algebra brackets, coalgebra structure maps,
Yang-Baxter operators) is a :class:`TensorOperator`: a sparse matrix
carrying the factor decomposition of its domain and codomain.  All
operators arising here are permutations plus a few corrections, so
storage and composition cost are proportional to the number of nonzero
entries, never to the ambient dimension.

Flat indices are row-major over the factor list: the first factor is
the most significant digit.  Equality compares total dimensions and
entries; two operators that differ only in how the same total dimension
is split into factors are equal (reinterpretation across splits is
routine, e.g. viewing a map on V^(2n-2) as a map on (V^(n-1))^2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import scalars
from .errors import (
    SchemaError,
    ShapeMismatchError,
    SingularMatrixError,
    NotNilpotentError,
    SeriesNotConvergedError,
)

#: shapes with total dimension at or above this are rejected at construction
MAX_TOTAL_DIM = 2**31


@dataclass(frozen=True)
class TensorShape:
    """Ordered factor dimensions of a tensor power."""

    factor_dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.factor_dims)
        object.__setattr__(self, "factor_dims", dims)
        if not dims:
            raise SchemaError("a tensor shape needs at least one factor")
        if any(d < 1 for d in dims):
            raise SchemaError(f"factor dimensions must be positive, got {dims}")
        total = 1
        for d in dims:
            total *= d
            if total >= MAX_TOTAL_DIM:
                raise SchemaError(f"total dimension of {dims} exceeds the 2^31 index cap")

    @property
    def total(self) -> int:
        t = 1
        for d in self.factor_dims:
            t *= d
        return t

    def __len__(self) -> int:
        return len(self.factor_dims)

    def flat(self, multi) -> int:
        """Row-major flat index of a multi-index."""
        idx = 0
        for i, d in zip(multi, self.factor_dims):
            if not 0 <= i < d:
                raise SchemaError(f"index {i} out of range for factor of dim {d}")
            idx = idx * d + i
        return idx

    def multi(self, flat: int) -> tuple:
        """Multi-index of a row-major flat index."""
        out = []
        for d in reversed(self.factor_dims):
            out.append(flat % d)
            flat //= d
        return tuple(reversed(out))


def shape(*dims) -> TensorShape:
    return TensorShape(tuple(dims))


def power_shape(d: int, k: int) -> TensorShape:
    return TensorShape((d,) * k) if k else TensorShape((1,))


class TensorOperator:
    """A sparse linear map between tensor powers.

    ``entries`` maps ``(row, col)`` flat-index pairs to scalars in the
    operator's mode.  Instances are immutable by convention; every
    operation returns a fresh operator.
    """

    __slots__ = ("domain_shape", "codomain_shape", "entries", "mode")

    def __init__(self, domain_shape, codomain_shape, entries, mode=scalars.EXACT, validate=True):
        scalars.check_mode(mode)
        self.domain_shape = domain_shape
        self.codomain_shape = codomain_shape
        self.mode = mode
        clean = {}
        if validate:
            nrows = codomain_shape.total
            ncols = domain_shape.total
            for (r, c), v in entries.items():
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise ShapeMismatchError(f"entry ({r},{c}) outside {nrows}x{ncols}")
                v = scalars.coerce(v, mode)
                if not scalars.is_zero(v, mode):
                    clean[(r, c)] = v
        else:
            clean = entries
        self.entries = clean

    # -- basic queries -------------------------------------------------

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_square(self) -> bool:
        return self.domain_shape.total == self.codomain_shape.total

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> dict:
        """Group entries by column: col -> list of (row, value)."""
        cols = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, []).append((r, v))
        return cols

    def max_abs(self):
        return max((abs(v) for v in self.entries.values()), default=scalars.zero(self.mode))

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse vector {index: scalar}."""
        out = {}
        cols = self.columns()
        for c, x in vec.items():
            if scalars.is_zero(x, self.mode):
                continue
            for r, v in cols.get(c, ()):
                out[r] = out.get(r, scalars.zero(self.mode)) + v * x
        return {r: v for r, v in out.items() if not scalars.is_zero(v, self.mode)}

    def dense(self):
        """Nested-list dense form; for small operators and test oracles only."""
        nr, nc = self.codomain_shape.total, self.domain_shape.total
        z = scalars.zero(self.mode)
        out = [[z] * nc for _ in range(nr)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    # -- equality ------------------------------------------------------

    def equal(self, other, eps: float = scalars.EPS_CMP) -> bool:
        if self.mode != other.mode:
            raise ShapeMismatchError("cannot compare operators of different scalar modes")
        if (
            self.domain_shape.total != other.domain_shape.total
            or self.codomain_shape.total != other.codomain_shape.total
        ):
            raise ShapeMismatchError("cannot compare operators of different total dimensions")
        if self.mode == scalars.EXACT:
            return self.entries == other.entries
        keys = set(self.entries) | set(other.entries)
        zero = 0.0
        return all(
            abs(self.entries.get(k, zero) - other.entries.get(k, zero)) <= eps for k in keys
        )

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        if self.mode != other.mode:
            return False
        if (
            self.domain_shape.total != other.domain_shape.total
            or self.codomain_shape.total != other.codomain_shape.total
        ):
            return False
        return self.equal(other)

    def __hash__(self):
        raise TypeError("TensorOperator is unhashable")

    def first_difference(self, other):
        """Smallest (row, col) where the two operators differ, or None."""
        keys = set(self.entries) | set(other.entries)
        z = scalars.zero(self.mode)
        for k in sorted(keys):
            if not scalars.eq(self.entries.get(k, z), other.entries.get(k, z), self.mode):
                return k
        return None

    # -- algebra -------------------------------------------------------

    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        if self.mode != other.mode:
            raise ShapeMismatchError("mode mismatch in operator sum")
        if (
            self.domain_shape.total != other.domain_shape.total
            or self.codomain_shape.total != other.codomain_shape.total
        ):
            raise ShapeMismatchError("shape mismatch in operator sum")
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, scalars.zero(self.mode)) + v
            if scalars.is_zero(s, self.mode):
                out.pop(k, None)
            else:
                out[k] = s
        return TensorOperator(self.domain_shape, self.codomain_shape, out, self.mode, validate=False)

    def __sub__(self, other):
        return self + other.scale(-scalars.one(self.mode))

    def scale(self, factor):
        factor = scalars.coerce(factor, self.mode)
        if scalars.is_zero(factor, self.mode):
            return TensorOperator(self.domain_shape, self.codomain_shape, {}, self.mode, validate=False)
        out = {k: v * factor for k, v in self.entries.items()}
        return TensorOperator(self.domain_shape, self.codomain_shape, out, self.mode, validate=False)

    def tensor(self, other):
        """Kronecker product self (x) other; nnz multiplies, so keep factors small."""
        if self.mode != other.mode:
            raise ShapeMismatchError("mode mismatch in tensor product")
        dom = TensorShape(self.domain_shape.factor_dims + other.domain_shape.factor_dims)
        cod = TensorShape(self.codomain_shape.factor_dims + other.codomain_shape.factor_dims)
        bdom = other.domain_shape.total
        bcod = other.codomain_shape.total
        out = {}
        for (ra, ca), va in self.entries.items():
            for (rb, cb), vb in other.entries.items():
                out[(ra * bcod + rb, ca * bdom + cb)] = va * vb
        return TensorOperator(dom, cod, out, self.mode, validate=False)

    def with_shapes(self, domain_shape, codomain_shape):
        """Reinterpret the same matrix with a different factor split."""
        if (
            domain_shape.total != self.domain_shape.total
            or codomain_shape.total != self.codomain_shape.total
        ):
            raise ShapeMismatchError("reshape must preserve total dimensions")
        return TensorOperator(domain_shape, codomain_shape, self.entries, self.mode, validate=False)

    def permute_codomain(self, perm):
        """Relabel codomain factors: output factor perm[p] is old factor p.

        Equivalent to composing with the corresponding permutation
        operator on the left, but costs only a row relabeling.
        """
        perm = _check_permutation(perm, len(self.codomain_shape))
        dims = self.codomain_shape.factor_dims
        new_dims = [0] * len(dims)
        for p, q in enumerate(perm):
            new_dims[q] = dims[p]
        new_cod = TensorShape(tuple(new_dims))
        out = {}
        for (r, c), v in self.entries.items():
            m = self.codomain_shape.multi(r)
            new_m = [0] * len(dims)
            for p, q in enumerate(perm):
                new_m[q] = m[p]
            out[(new_cod.flat(new_m), c)] = v
        return TensorOperator(self.domain_shape, new_cod, out, self.mode, validate=False)

    def to_float(self):
        if self.mode == scalars.FLOAT:
            return self
        out = {k: float(v) for k, v in self.entries.items()}
        return TensorOperator(self.domain_shape, self.codomain_shape, out, scalars.FLOAT, validate=False)

    def __repr__(self):
        return (
            f"TensorOperator({self.codomain_shape.factor_dims}<-{self.domain_shape.factor_dims}, "
            f"nnz={self.nnz}, mode={self.mode})"
        )


# -- constructors ------------------------------------------------------


def identity(shp: TensorShape, mode=scalars.EXACT) -> TensorOperator:
    o = scalars.one(mode)
    return TensorOperator(shp, shp, {(i, i): o for i in range(shp.total)}, mode, validate=False)


def zero_operator(domain_shape, codomain_shape, mode=scalars.EXACT) -> TensorOperator:
    return TensorOperator(domain_shape, codomain_shape, {}, mode, validate=False)


def _check_permutation(perm, k):
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(k)):
        raise SchemaError(f"{perm} is not a permutation of {k} factor positions")
    return perm


def permutation_operator(shp: TensorShape, perm, mode=scalars.EXACT) -> TensorOperator:
    """Operator sending e_{i_1} (x) ... (x) e_{i_k} to the factors reordered by perm.

    ``perm[p]`` is the output position of input factor p.  Cost is one
    entry per basis vector, so keep this to spaces you can enumerate;
    on large intermediate spaces use :meth:`TensorOperator.permute_codomain`.
    """
    perm = _check_permutation(perm, len(shp))
    dims = shp.factor_dims
    out_dims = [0] * len(dims)
    for p, q in enumerate(perm):
        out_dims[q] = dims[p]
    cod = TensorShape(tuple(out_dims))
    o = scalars.one(mode)
    entries = {}
    for multi in itertools.product(*(range(d) for d in dims)):
        new_m = [0] * len(dims)
        for p, q in enumerate(perm):
            new_m[q] = multi[p]
        entries[(cod.flat(new_m), shp.flat(multi))] = o
    return TensorOperator(shp, cod, entries, mode, validate=False)


def reverse_permutation(k: int) -> tuple:
    """tau: x_1 (x) ... (x) x_k -> x_k (x) ... (x) x_1."""
    return tuple(k - 1 - p for p in range(k))


def cyclic_permutation(k: int) -> tuple:
    """F: x_1 (x) x_2 (x) ... (x) x_k -> x_2 (x) ... (x) x_k (x) x_1."""
    return tuple([k - 1] + list(range(k - 1)))


def deal_factors(n: int) -> tuple:
    """Factor permutation for the shuffle (u_1 v_1 u_2 v_2 ...) -> (u_1..u_n v_1..v_n)."""
    perm = [0] * (2 * n)
    for i in range(n):
        perm[2 * i] = i
        perm[2 * i + 1] = n + i
    return tuple(perm)


def deal_permutation(n: int, d: int, mode=scalars.EXACT) -> TensorOperator:
    """The shuffle (u_1 v_1 u_2 v_2 ...) -> (u_1 ... u_n v_1 ... v_n) on 2n factors of dim d.

    This is what expresses the coproduct of a tensor-power coalgebra
    through the coproducts of its factors.
    """
    return permutation_operator(power_shape(d, 2 * n), deal_factors(n), mode)


def compose(a: TensorOperator, b: TensorOperator) -> TensorOperator:
    """a after b.  Cost is proportional to matching nonzeros, not dimension."""
    if a.mode != b.mode:
        raise ShapeMismatchError("mode mismatch in composition")
    if b.codomain_shape.total != a.domain_shape.total:
        raise ShapeMismatchError(
            f"composition mismatch: inner dims {b.codomain_shape.total} vs {a.domain_shape.total}"
        )
    a_cols = a.columns()
    out = {}
    zero = scalars.zero(a.mode)
    for (j, k), bv in b.entries.items():
        hits = a_cols.get(j)
        if not hits:
            continue
        for i, av in hits:
            key = (i, k)
            s = out.get(key, zero) + av * bv
            out[key] = s
    out = {k: v for k, v in out.items() if not scalars.is_zero(v, a.mode)}
    return TensorOperator(b.domain_shape, a.codomain_shape, out, a.mode, validate=False)


def compose_blocks(blocks, b: TensorOperator) -> TensorOperator:
    """(blocks[0] (x) ... (x) blocks[-1]) after b, without materializing the product.

    The left factor of the composition is a tensor product whose nnz
    would be the product of the blocks' nnz; this walks b's entries and
    tensors only the referenced columns.
    """
    if len(blocks) == 1:
        return compose(blocks[0], b)
    if any(blk.mode != b.mode for blk in blocks):
        raise ShapeMismatchError("mode mismatch in block composition")
    in_totals = [blk.domain_shape.total for blk in blocks]
    out_totals = [blk.codomain_shape.total for blk in blocks]
    tot_in = 1
    for t in in_totals:
        tot_in *= t
    if tot_in != b.codomain_shape.total:
        raise ShapeMismatchError("block domains do not match the inner operator's codomain")
    block_cols = [blk.columns() for blk in blocks]
    dom = b.domain_shape
    cod_dims = ()
    for blk in blocks:
        cod_dims += blk.codomain_shape.factor_dims
    cod = TensorShape(cod_dims)
    zero = scalars.zero(b.mode)
    out = {}
    for (r, c), v in b.entries.items():
        # decompose r into per-block column indices, most significant first
        idxs = []
        rest = r
        for t in reversed(in_totals):
            idxs.append(rest % t)
            rest //= t
        idxs.reverse()
        cols = []
        dead = False
        for cols_map, j in zip(block_cols, idxs):
            hit = cols_map.get(j)
            if not hit:
                dead = True
                break
            cols.append(hit)
        if dead:
            continue
        for combo in itertools.product(*cols):
            row = 0
            val = v
            for (ri, vi), t in zip(combo, out_totals):
                row = row * t + ri
                val = val * vi
            key = (row, c)
            s = out.get(key, zero) + val
            out[key] = s
    out = {k: v for k, v in out.items() if not scalars.is_zero(v, b.mode)}
    return TensorOperator(dom, cod, out, b.mode, validate=False)


def tensor_many(ops) -> TensorOperator:
    ops = list(ops)
    result = ops[0]
    for op in ops[1:]:
        result = result.tensor(op)
    return result


def embed(a: TensorOperator, left: int, right: int, factor_dim: int) -> TensorOperator:
    """Id^(x)left (x) a (x) Id^(x)right, built sparsely.

    ``a`` must be square on a tensor power of ``factor_dim``.
    """
    total = a.domain_shape.total
    if a.codomain_shape.total != total:
        raise ShapeMismatchError("embed needs a square operator")
    t = 1
    while t < total:
        t *= factor_dim
    if t != total:
        raise ShapeMismatchError(f"operator dim {total} is not a power of factor dim {factor_dim}")
    lt = factor_dim**left
    rt = factor_dim**right
    dims = (factor_dim,) * left + a.domain_shape.factor_dims + (factor_dim,) * right
    shp = TensorShape(dims)
    out = {}
    for (r, c), v in a.entries.items():
        for i in range(lt):
            rbase = (i * total + r) * rt
            cbase = (i * total + c) * rt
            for j in range(rt):
                out[(rbase + j, cbase + j)] = v
    return TensorOperator(shp, shp, out, a.mode, validate=False)


def invert(a: TensorOperator, eps: float = scalars.EPS_CMP) -> TensorOperator:
    """Inverse by sparse Gaussian elimination; exact in exact mode.

    Raises SingularMatrixError when no valid pivot remains, which is
    how a pre-operator (a non-invertible solution) announces itself.
    """
    if not a.is_square():
        raise ShapeMismatchError("only square operators can be inverted")
    n = a.domain_shape.total
    exact = a.mode == scalars.EXACT
    one = scalars.one(a.mode)
    rows = {}
    inv_rows = {}
    for i in range(n):
        rows[i] = {}
        inv_rows[i] = {i: one}
    for (r, c), v in a.entries.items():
        rows[r][c] = v
    pivot_of_col = {}
    free_rows = set(range(n))
    for col in range(n):
        pivot = None
        best = None
        for r in free_rows:
            v = rows[r].get(col)
            if v is None:
                continue
            if exact:
                if v != 0 and (best is None or len(rows[r]) < best):
                    pivot, best = r, len(rows[r])
            else:
                if abs(v) > eps and (best is None or abs(v) > best):
                    pivot, best = r, abs(v)
        if pivot is None:
            raise SingularMatrixError(f"no usable pivot in column {col}")
        free_rows.discard(pivot)
        pivot_of_col[col] = pivot
        pv = rows[pivot][col]
        if pv != one:
            rows[pivot] = {c2: v2 / pv for c2, v2 in rows[pivot].items()}
            inv_rows[pivot] = {c2: v2 / pv for c2, v2 in inv_rows[pivot].items()}
        prow, pinv = rows[pivot], inv_rows[pivot]
        for r in range(n):
            if r == pivot:
                continue
            f = rows[r].get(col)
            if f is None:
                continue
            rr, ri = rows[r], inv_rows[r]
            for c2, v2 in prow.items():
                s = rr.get(c2, 0) - f * v2
                if s == 0:
                    rr.pop(c2, None)
                else:
                    rr[c2] = s
            for c2, v2 in pinv.items():
                s = ri.get(c2, 0) - f * v2
                if s == 0:
                    ri.pop(c2, None)
                else:
                    ri[c2] = s
    out = {}
    for col, pivot in pivot_of_col.items():
        for c2, v2 in inv_rows[pivot].items():
            if not scalars.is_zero(v2, a.mode):
                out[(col, c2)] = v2
    return TensorOperator(a.codomain_shape, a.domain_shape, out, a.mode, validate=False)


def is_invertible(a: TensorOperator) -> bool:
    try:
        invert(a)
        return True
    except SingularMatrixError:
        return False


# -- exponentials ------------------------------------------------------


def exp_nilpotent(a: TensorOperator) -> TensorOperator:
    """Exact exp of a nilpotent square operator as the finite sum of A^k/k!."""
    if not a.is_square():
        raise ShapeMismatchError("exp needs a square operator")
    if a.mode != scalars.EXACT:
        raise SchemaError("exp_nilpotent is exact-mode only")
    n = a.domain_shape.total
    total = identity(a.domain_shape, a.mode)
    power = total
    fact = 1
    for k in range(1, n + 1):
        power = power @ a
        if not power.entries:
            return total
        fact *= k
        total = total + power.scale(Fraction(1, fact))
    raise NotNilpotentError(f"operator is not nilpotent (A^{n} != 0)")


def is_nilpotent(a: TensorOperator) -> bool:
    if not a.is_square():
        return False
    power = a
    for _ in range(a.domain_shape.total):
        if not power.entries:
            return True
        power = power @ a
    return not power.entries


def exp_float(a: TensorOperator, term_tol: float = 1e-12, max_terms: int = 64) -> TensorOperator:
    """Truncated exp series in float mode.

    Stops when the next term's max-abs entry drops below ``term_tol``;
    raises SeriesNotConvergedError if the term is still large after
    ``max_terms`` terms.
    """
    if not a.is_square():
        raise ShapeMismatchError("exp needs a square operator")
    a = a.to_float()
    total = identity(a.domain_shape, scalars.FLOAT)
    term = total
    for k in range(1, max_terms + 1):
        term = (term @ a).scale(1.0 / k)
        if term.max_abs() < term_tol:
            return total
        total = total + term
    raise SeriesNotConvergedError(
        f"exp series term still {term.max_abs():.3g} after {max_terms} terms"
    )


# -- row reduction utilities ------------------------------------------


def rref(rows, mode=scalars.EXACT, eps: float = scalars.EPS_CMP):
    """Reduced row echelon form of sparse rows (dicts col -> value).

    Returns (pivots, reduced) where pivots is the sorted list of pivot
    columns and reduced maps each pivot column to its normalized row.
    """
    exact = mode == scalars.EXACT
    reduced = {}
    for row in rows:
        row = dict(row)
        # reduced rows carry no other pivot columns, so one pass suffices
        for pcol in sorted(reduced):
            f = row.get(pcol)
            if f is None:
                continue
            for c, v in reduced[pcol].items():
                s = row.get(c, 0) - f * v
                if s == 0:
                    row.pop(c, None)
                else:
                    row[c] = s
        if not exact:
            row = {c: v for c, v in row.items() if abs(v) > eps}
        if not row:
            continue
        lead = min(row)
        lv = row[lead]
        row = {c: v / lv for c, v in row.items()}
        for pcol, prow in reduced.items():
            f = prow.get(lead)
            if f is None:
                continue
            new = dict(prow)
            for c, v in row.items():
                s = new.get(c, 0) - f * v
                if s == 0:
                    new.pop(c, None)
                else:
                    new[c] = s
            reduced[pcol] = new
        reduced[lead] = row
    return sorted(reduced), reduced


def nullspace_basis(rows, width: int, mode=scalars.EXACT):
    """Basis of the solution space of (rows) x = 0, as sparse vectors.

    Deterministic: one basis vector per free column, in column order.
    """
    pivots, reduced = rref(rows, mode)
    pivot_set = set(pivots)
    basis = []
    one = scalars.one(mode)
    for free in range(width):
        if free in pivot_set:
            continue
        vec = {free: one}
        for pcol in pivots:
            v = reduced[pcol].get(free)
            if v is not None and v != 0:
                vec[pcol] = -v
        basis.append(vec)
    return basis


def column_rank(a: TensorOperator) -> int:
    rows = {}
    for (r, c), v in a.entries.items():
        rows.setdefault(r, {})[c] = v
    pivots, _ = rref(rows.values(), a.mode)
    return len(pivots)
