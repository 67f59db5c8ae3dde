"""n-Leibniz algebras as sparse structure-constant tensors.

An n-Leibniz algebra is a vector space with an n-linear bracket whose
right translations ad_{y_1..y_{n-1}} = [-, y_1, ..., y_{n-1}] are
derivations; equivalently the bracket satisfies the fundamental
identity

    [[x_1..x_n], y_1..y_{n-1}] = sum_i [x_1, ..., [x_i, y_1..y_{n-1}], ..., x_n].

The type itself never assumes the identity: `check_fundamental_identity`
certifies it by brute force over all basis tuples, and constructors
backed by a theorem mark their outputs certified (re-checkable with
``recheck=True``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import scalars, tensor
from .errors import (
    NotCertifiedError,
    PreconditionError,
    SchemaError,
    SeriesNotConvergedError,
    VerdictDisagreementError,
)
from .reports import ReportBuilder, VerificationReport
from .tensor import TensorOperator, TensorShape


def _clean_vector(vec, mode):
    out = {}
    for j, v in vec.items():
        v = scalars.coerce(v, mode)
        if not scalars.is_zero(v, mode):
            out[int(j)] = v
    return out


def vec_equal(a, b, mode, eps=scalars.EPS_CMP):
    keys = set(a) | set(b)
    z = scalars.zero(mode)
    return all(scalars.eq(a.get(k, z), b.get(k, z), mode, eps) for k in keys)


def vec_add(a, b, mode):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, scalars.zero(mode)) + v
        if scalars.is_zero(s, mode):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(a, f, mode):
    if scalars.is_zero(f, mode):
        return {}
    return {k: v * f for k, v in a.items()}


def vec_json(vec, mode):
    return {str(k): scalars.format_scalar(v, mode) for k, v in sorted(vec.items())}


@dataclass(frozen=True)
class NLeibnizAlgebra:
    """Arity-n bracket on k^dim, stored as structure constants keyed by input tuple."""

    arity: int
    dim: int
    bracket: dict = field(default_factory=dict)
    mode: str = scalars.EXACT
    certified: bool = False

    def __post_init__(self):
        if self.arity < 2:
            raise SchemaError("bracket arity must be at least 2")
        if self.dim < 1:
            raise SchemaError("dimension must be positive")
        scalars.check_mode(self.mode)
        clean = {}
        for key, out in self.bracket.items():
            key = tuple(int(i) for i in key)
            if len(key) != self.arity:
                raise SchemaError(f"bracket key {key} has wrong arity")
            if any(not 0 <= i < self.dim for i in key):
                raise SchemaError(f"bracket key {key} out of range for dim {self.dim}")
            vec = _clean_vector(out, self.mode)
            if any(not 0 <= j < self.dim for j in vec):
                raise SchemaError(f"bracket output of {key} out of range")
            if vec:
                clean[key] = vec
        object.__setattr__(self, "bracket", clean)

    def bracket_basis(self, key) -> dict:
        """[e_{i_1}, ..., e_{i_n}] as a sparse coefficient vector."""
        return self.bracket.get(tuple(key), {})

    def bracket_apply(self, vectors) -> dict:
        """Multilinear evaluation of the bracket on sparse vectors."""
        out = {}
        z = scalars.zero(self.mode)
        for key, coeffs in self.bracket.items():
            factor = scalars.one(self.mode)
            for vec, idx in zip(vectors, key):
                x = vec.get(idx)
                if x is None:
                    factor = None
                    break
                factor *= x
            if factor is None or scalars.is_zero(factor, self.mode):
                continue
            for j, c in coeffs.items():
                s = out.get(j, z) + factor * c
                if scalars.is_zero(s, self.mode):
                    out.pop(j, None)
                else:
                    out[j] = s
        return out

    def as_certified(self) -> "NLeibnizAlgebra":
        return NLeibnizAlgebra(self.arity, self.dim, self.bracket, self.mode, True)

    def op_reversed(self) -> "NLeibnizAlgebra":
        """The bracket with arguments reversed: [x_1..x_n] -> [x_n..x_1].

        A right algebra's reversal is a left one, so the result is
        returned uncertified.
        """
        rev = {tuple(reversed(k)): dict(v) for k, v in self.bracket.items()}
        return NLeibnizAlgebra(self.arity, self.dim, rev, self.mode, False)


@dataclass(frozen=True)
class CentralNLeibnizAlgebra:
    """An n-Leibniz algebra with a distinguished central element."""

    algebra: NLeibnizAlgebra
    central: dict

    def __post_init__(self):
        object.__setattr__(self, "central", _clean_vector(self.central, self.algebra.mode))

    @property
    def arity(self):
        return self.algebra.arity

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def mode(self):
        return self.algebra.mode


def zero_algebra(arity: int, dim: int, mode=scalars.EXACT) -> NLeibnizAlgebra:
    return NLeibnizAlgebra(arity, dim, {}, mode, True)


def _require_certified(a: NLeibnizAlgebra, what: str):
    if not a.certified:
        raise NotCertifiedError(f"{what} needs a certified algebra; run check_fundamental_identity first")


# -- verification ------------------------------------------------------


def check_fundamental_identity(a: NLeibnizAlgebra) -> VerificationReport:
    """Brute-force the fundamental identity over all dim^(2n-1) basis tuples.

    The witness of a failure is the lexicographically smallest violating
    tuple together with both sides' coefficient vectors.
    """
    rb = ReportBuilder("fundamental-identity")
    n, d = a.arity, a.dim
    ok = True
    witness = None
    for tpl in itertools.product(range(d), repeat=2 * n - 1):
        xs, ys = tpl[:n], tpl[n:]
        lhs = {}
        for j, c in a.bracket_basis(xs).items():
            lhs = vec_add(lhs, vec_scale(a.bracket_basis((j,) + ys), c, a.mode), a.mode)
        rhs = {}
        for i in range(n):
            for j, c in a.bracket_basis((xs[i],) + ys).items():
                inner = a.bracket_basis(xs[:i] + (j,) + xs[i + 1 :])
                rhs = vec_add(rhs, vec_scale(inner, c, a.mode), a.mode)
        if not vec_equal(lhs, rhs, a.mode):
            ok = False
            witness = {
                "tuple": list(tpl),
                "lhs": vec_json(lhs, a.mode),
                "rhs": vec_json(rhs, a.mode),
            }
            break
    rb.record("fundamental-identity", ok, witness)
    return rb.build()


def certify(a: NLeibnizAlgebra) -> NLeibnizAlgebra:
    """Run the fundamental-identity check and return a certified copy."""
    report = check_fundamental_identity(a)
    if not report.passed:
        raise PreconditionError("bracket fails the fundamental identity", report.witness)
    return a.as_certified()


def is_central(a: NLeibnizAlgebra, z: dict) -> bool:
    """Whether z placed in any slot kills the bracket against all basis fillings."""
    z = _clean_vector(z, a.mode)
    for slot, row in _central_rows(a):
        total = scalars.zero(a.mode)
        for idx, coeff in row.items():
            x = z.get(idx)
            if x is not None:
                total += coeff * x
        if not scalars.eq(total, scalars.zero(a.mode), a.mode):
            return False
    return True


def _central_rows(a: NLeibnizAlgebra):
    """Linear constraints on a central element, one row per (slot, filling, output)."""
    rows = {}
    for key, out in a.bracket.items():
        for slot in range(a.arity):
            context = key[:slot] + key[slot + 1 :]
            for j, c in out.items():
                row = rows.setdefault((slot, context, j), {})
                row[key[slot]] = row.get(key[slot], scalars.zero(a.mode)) + c
    for rkey in sorted(rows):
        yield rkey, rows[rkey]


def central_elements(a: NLeibnizAlgebra):
    """Basis of the center: all z with z central in every slot."""
    rows = [row for _, row in _central_rows(a)]
    return tensor.nullspace_basis(rows, a.dim, a.mode)


def is_derivation(a: NLeibnizAlgebra, d_map: TensorOperator) -> VerificationReport:
    """Check D[x_1..x_n] = sum_i [x_1, ..., D x_i, ..., x_n] on all basis tuples."""
    rb = ReportBuilder("derivation")
    if d_map.domain_shape.total != a.dim or d_map.codomain_shape.total != a.dim:
        raise SchemaError("derivation candidate has wrong shape")
    cols = d_map.columns()
    ok, witness = True, None
    for tpl in itertools.product(range(a.dim), repeat=a.arity):
        lhs = {}
        for j, c in a.bracket_basis(tpl).items():
            lhs = vec_add(lhs, vec_scale(dict(cols.get(j, ())), c, a.mode), a.mode)
        rhs = {}
        for i in range(a.arity):
            for j, c in cols.get(tpl[i], ()):
                inner = a.bracket_basis(tpl[:i] + (j,) + tpl[i + 1 :])
                rhs = vec_add(rhs, vec_scale(inner, c, a.mode), a.mode)
        if not vec_equal(lhs, rhs, a.mode):
            ok, witness = False, {
                "tuple": list(tpl),
                "lhs": vec_json(lhs, a.mode),
                "rhs": vec_json(rhs, a.mode),
            }
            break
    rb.record("derivation-law", ok, witness)
    return rb.build()


# -- adjoints and exponentials ----------------------------------------


def ad(a: NLeibnizAlgebra, ys) -> TensorOperator:
    """The right translation x -> [x, y_1, ..., y_{n-1}] as a dim x dim matrix."""
    ys = [dict(y) for y in ys]
    if len(ys) != a.arity - 1:
        raise SchemaError(f"ad needs {a.arity - 1} vectors, got {len(ys)}")
    entries = {}
    z = scalars.zero(a.mode)
    for key, out in a.bracket.items():
        factor = scalars.one(a.mode)
        for vec, idx in zip(ys, key[1:]):
            x = vec.get(idx)
            if x is None:
                factor = None
                break
            factor *= x
        if factor is None or scalars.is_zero(factor, a.mode):
            continue
        for j, c in out.items():
            kk = (j, key[0])
            s = entries.get(kk, z) + factor * c
            entries[kk] = s
    entries = {k: v for k, v in entries.items() if not scalars.is_zero(v, a.mode)}
    shp = TensorShape((a.dim,))
    return TensorOperator(shp, shp, entries, a.mode, validate=False)


def ad_basis(a: NLeibnizAlgebra, key) -> TensorOperator:
    """ad at a basis (n-1)-tuple."""
    one = scalars.one(a.mode)
    return ad(a, [{int(i): one} for i in key])


def bracket_operator(a: NLeibnizAlgebra) -> TensorOperator:
    """The bracket as a linear map L^(x)n -> L."""
    dom = tensor.power_shape(a.dim, a.arity)
    entries = {}
    for key, out in a.bracket.items():
        col = dom.flat(key)
        for j, c in out.items():
            entries[(j, col)] = c
    return TensorOperator(dom, TensorShape((a.dim,)), entries, a.mode, validate=False)


def exp_ad(a: NLeibnizAlgebra, ys, mode=None) -> TensorOperator:
    """exp of the adjoint at ys.

    Exact mode demands that this particular adjoint be nilpotent (its
    dim-th power vanishes); float mode truncates the series at term
    < 1e-12 or 64 terms.
    """
    mode = mode or a.mode
    m = ad(a, ys)
    if mode == scalars.EXACT:
        if a.mode != scalars.EXACT:
            raise SchemaError("exact exp requires an exact-mode algebra")
        return tensor.exp_nilpotent(m)
    return tensor.exp_float(m)


# -- constructions -----------------------------------------------------


def nbracket_from_leibniz(leib: NLeibnizAlgebra, n: int, recheck: bool = False) -> NLeibnizAlgebra:
    """Nest a binary Leibniz bracket into an n-ary one:
    [x_1..x_n] = {x_1, {x_2, ... {x_{n-1}, x_n} ...}}."""
    if leib.arity != 2:
        raise SchemaError("nbracket_from_leibniz starts from a binary bracket")
    if n < 2:
        raise SchemaError("target arity must be at least 2")
    if not leib.certified:
        report = check_fundamental_identity(leib)
        if not report.passed:
            raise PreconditionError("input is not a Leibniz algebra", report.witness)
        leib = leib.as_certified()
    if n == 2:
        return leib
    one = scalars.one(leib.mode)
    new = {}
    for tpl in itertools.product(range(leib.dim), repeat=n):
        acc = {tpl[-1]: one}
        for idx in reversed(tpl[1:-1]):
            acc = leib.bracket_apply([{idx: one}, acc])
            if not acc:
                break
        if acc:
            acc = leib.bracket_apply([{tpl[0]: one}, acc])
        if acc:
            new[tpl] = acc
    out = NLeibnizAlgebra(n, leib.dim, new, leib.mode, True)
    if recheck:
        _recheck(out)
    return out


def extend_bracket_by_leibniz(
    leib: NLeibnizAlgebra, b: NLeibnizAlgebra, recheck: bool = False
) -> NLeibnizAlgebra:
    """Extend a Leibniz algebra by an n-linear bracket b into an (n+1)-ary bracket
    [[x_1..x_{n+1}]] = {x_1, b(x_2..x_{n+1})}.

    Requires every right translation {-, y} of the Leibniz algebra to be
    a derivation of b, checked exhaustively on basis tuples.
    """
    if leib.arity != 2:
        raise SchemaError("the extending algebra must be binary")
    if leib.dim != b.dim or leib.mode != b.mode:
        raise SchemaError("brackets must live on the same space")
    if not leib.certified:
        report = check_fundamental_identity(leib)
        if not report.passed:
            raise PreconditionError("input is not a Leibniz algebra", report.witness)
        leib = leib.as_certified()
    one = scalars.one(leib.mode)
    for y in range(leib.dim):
        d_map = ad(leib, [{y: one}])
        report = is_derivation(b, d_map)
        if not report.passed:
            raise PreconditionError(
                f"right translation by e_{y} is not a derivation of the given bracket",
                {"y": y, **(report.witness or {})},
            )
    new = {}
    for tpl in itertools.product(range(leib.dim), repeat=b.arity + 1):
        inner = b.bracket_basis(tpl[1:])
        if not inner:
            continue
        outv = leib.bracket_apply([{tpl[0]: one}, inner])
        if outv:
            new[tpl] = outv
    out = NLeibnizAlgebra(b.arity + 1, leib.dim, new, leib.mode, False)
    report = check_fundamental_identity(out)
    if not report.passed:
        raise VerdictDisagreementError(
            "extension passed its preconditions but fails the fundamental identity"
        )
    out = out.as_certified()
    if recheck:
        _recheck(out)
    return out


def tensor_power_shape(a: NLeibnizAlgebra) -> TensorShape:
    return tensor.power_shape(a.dim, a.arity - 1)


def fundamental_leibniz(a, recheck: bool = False):
    """The induced Leibniz bracket on the (n-1)-st tensor power:

        {x_1 (x) ... (x) x_{n-1}, y_1 (x) ... (x) y_{n-1}}
            = sum_i x_1 (x) ... (x) [x_i, y_1..y_{n-1}] (x) ... (x) x_{n-1}.

    A central input yields a central output with central element the
    (n-1)-st tensor power of the input's.
    """
    central = None
    if isinstance(a, CentralNLeibnizAlgebra):
        central = a.central
        a = a.algebra
    _require_certified(a, "fundamental_leibniz")
    n, d = a.arity, a.dim
    shp = tensor.power_shape(d, n - 1)
    new = {}
    for key, out in a.bracket.items():
        head, ys = key[0], key[1:]
        yflat = shp.flat(ys)
        for slot in range(n - 1):
            for context in itertools.product(range(d), repeat=n - 2):
                xs = context[:slot] + (head,) + context[slot:]
                xflat = shp.flat(xs)
                vec = new.setdefault((xflat, yflat), {})
                for j, c in out.items():
                    target = shp.flat(xs[:slot] + (j,) + xs[slot + 1 :])
                    s = vec.get(target, scalars.zero(a.mode)) + c
                    if scalars.is_zero(s, a.mode):
                        vec.pop(target, None)
                    else:
                        vec[target] = s
    new = {k: v for k, v in new.items() if v}
    out_alg = NLeibnizAlgebra(2, shp.total, new, a.mode, True)
    if recheck:
        _recheck(out_alg)
    if central is not None:
        vec = {}
        for multi in itertools.product(*([sorted(central)] * (n - 1))):
            coeff = scalars.one(a.mode)
            for i in multi:
                coeff *= central[i]
            if not scalars.is_zero(coeff, a.mode):
                vec[shp.flat(multi)] = coeff
        return CentralNLeibnizAlgebra(out_alg, vec)
    return out_alg


def adjoin_unit(a: NLeibnizAlgebra, recheck: bool = False) -> CentralNLeibnizAlgebra:
    """Adjoin a central unit: on k (+) L the bracket ignores the scalar parts,
    [[(l_1,x_1), ...]] = (0, [x_1..x_n]), with central element (1, 0)."""
    _require_certified(a, "adjoin_unit")
    new = {
        tuple(i + 1 for i in key): {j + 1: v for j, v in out.items()}
        for key, out in a.bracket.items()
    }
    out_alg = NLeibnizAlgebra(a.arity, a.dim + 1, new, a.mode, True)
    if recheck:
        _recheck(out_alg)
    return CentralNLeibnizAlgebra(out_alg, {0: scalars.one(a.mode)})


def _recheck(a: NLeibnizAlgebra):
    report = check_fundamental_identity(a)
    if not report.passed:
        raise VerdictDisagreementError(
            "a theorem-certified construction failed its recheck", report.witness
        )


# -- homomorphisms -----------------------------------------------------


def is_homomorphism(a: NLeibnizAlgebra, b: NLeibnizAlgebra, phi: TensorOperator) -> VerificationReport:
    """Check that phi preserves brackets, plus the exp-intertwining law
    phi o exp(ad_y) = exp(ad_{phi y}) o phi on basis (n-1)-tuples.

    The intertwining check is skipped (and reported so) when an
    exponential is not computable in the algebras' mode.
    """
    if a.arity != b.arity or a.mode != b.mode:
        raise SchemaError("homomorphism check needs algebras of equal arity and mode")
    if phi.domain_shape.total != a.dim or phi.codomain_shape.total != b.dim:
        raise SchemaError("phi has the wrong shape")
    rb = ReportBuilder("homomorphism")
    cols = phi.columns()
    phi_basis = [dict(cols.get(i, ())) for i in range(a.dim)]
    ok, witness = True, None
    for tpl in itertools.product(range(a.dim), repeat=a.arity):
        lhs = {}
        for j, c in a.bracket_basis(tpl).items():
            lhs = vec_add(lhs, vec_scale(phi_basis[j], c, a.mode), a.mode)
        rhs = b.bracket_apply([phi_basis[i] for i in tpl])
        if not vec_equal(lhs, rhs, a.mode):
            ok, witness = False, {
                "tuple": list(tpl),
                "lhs": vec_json(lhs, a.mode),
                "rhs": vec_json(rhs, a.mode),
            }
            break
    rb.record("bracket-preserving", ok, witness)

    one = scalars.one(a.mode)
    exact = a.mode == scalars.EXACT
    computable = True
    if exact:
        for key in itertools.product(range(a.dim), repeat=a.arity - 1):
            if not tensor.is_nilpotent(ad_basis(a, key)):
                computable = False
                break
            if not tensor.is_nilpotent(ad(b, [phi_basis[i] for i in key])):
                computable = False
                break
    if not computable:
        rb.skip("exp-intertwining", "exponential not computable in exact mode (non-nilpotent adjoint)")
        return rb.build()
    ok, witness = True, None
    for key in itertools.product(range(a.dim), repeat=a.arity - 1):
        ys = [{i: one} for i in key]
        try:
            ea = exp_ad(a, ys)
            eb = exp_ad(b, [phi_basis[i] for i in key])
        except SeriesNotConvergedError:
            rb.skip("exp-intertwining", f"series did not converge at basis tuple {list(key)}")
            return rb.build()
        if (phi @ ea) != (eb @ phi):
            ok, witness = False, {"tuple": list(key)}
            break
    rb.record("exp-intertwining", ok, witness)
    return rb.build()
