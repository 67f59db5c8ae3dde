"""Builders and verifiers for Yang-Baxter and higher Yang-Baxter operators.

With E_i = Id^(x)i (x) S (x) Id^(x)(n-1-i) on V^(x)(2n-1), the right
n-Yang-Baxter equation asks (in order of application, first to last)

    E_0, E_{n-1}, E_{n-2}, ..., E_1, E_0
        =  E_{n-1}, E_{n-2}, ..., E_1, E_0, E_{n-1}

and the left variant mirrors the interior order.  For n = 2 both reduce
to the Yang-Baxter equation (R (x) Id)(Id (x) R)(R (x) Id) =
(Id (x) R)(R (x) Id)(Id (x) R).  A solution that holds but is not
invertible is a pre-operator; reports keep the two facts separate.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from . import scalars, tensor
from .errors import (
    CapExceededError,
    NotCertifiedError,
    PreconditionError,
    SchemaError,
    ShapeMismatchError,
    VerdictDisagreementError,
)
from .linrack import LinearNRack, check_linear_nrack
from .nleibniz import (
    CentralNLeibnizAlgebra,
    NLeibnizAlgebra,
    adjoin_unit,
    bracket_operator,
    check_fundamental_identity,
    fundamental_leibniz,
)
from .nrack import FiniteGroup
from .reports import ReportBuilder
from .tensor import TensorOperator, TensorShape, compose_blocks, identity, tensor_many

#: default cap on the dimension d^(2n-1) of the verification space
DEFAULT_DIM_CAP = 2**20


@dataclass(frozen=True)
class YBReport:
    """Outcome of one (n-)Yang-Baxter verification."""

    equation: str  # ybe | n_ybe_right | n_ybe_left
    n: int
    dim: int  # the factor dimension d
    holds: bool
    invertible: bool
    witness: object = None  # basis column index where the sides differ
    nnz: int = 0
    verification_dim: int = 0
    elapsed_ms: float = 0.0

    @property
    def is_operator(self) -> bool:
        """True for a genuine operator, not just a pre-operator."""
        return self.holds and self.invertible

    def to_json(self):
        return {
            "equation": self.equation,
            "n": self.n,
            "dim": self.dim,
            "holds": self.holds,
            "invertible": self.invertible,
            "witness": self.witness,
            "nnz": self.nnz,
            "verification_dim": self.verification_dim,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _factor_dim(s: TensorOperator, n: int) -> int:
    total = s.domain_shape.total
    dims = s.domain_shape.factor_dims
    if len(dims) == n and len(set(dims)) == 1:
        return dims[0]
    d = round(total ** (1.0 / n))
    for cand in (d - 1, d, d + 1):
        if cand >= 1 and cand**n == total:
            return cand
    raise ShapeMismatchError(f"operator dimension {total} is not an n-th power for n={n}")


def _chain(ops):
    """Compose maps given in order of application (first applied first)."""
    out = ops[0]
    for op in ops[1:]:
        out = op @ out
    return out


def verify_nybe(
    s: TensorOperator, n: int, side: str = "right", dim_cap: int = DEFAULT_DIM_CAP
) -> YBReport:
    """Build both sides of the degree-n braid relation on V^(x)(2n-1) and compare."""
    t0 = time.perf_counter()
    if n < 2:
        raise SchemaError("n must be at least 2")
    if side not in ("right", "left"):
        raise SchemaError("side must be 'right' or 'left'")
    if s.domain_shape.total != s.codomain_shape.total:
        raise ShapeMismatchError("the operator must be square")
    d = _factor_dim(s, n)
    big = d ** (2 * n - 1)
    if dim_cap is not None and big > dim_cap:
        raise CapExceededError(
            f"verification dimension {big} exceeds the cap {dim_cap}; raise the cap to force it"
        )
    e = [tensor.embed(s, i, n - 1 - i, d) for i in range(n)]
    if side == "right":
        lhs = _chain([e[0]] + [e[i] for i in range(n - 1, 0, -1)] + [e[0]])
        rhs = _chain([e[i] for i in range(n - 1, -1, -1)] + [e[n - 1]])
    else:
        lhs = _chain([e[0]] + [e[i] for i in range(1, n)] + [e[0]])
        rhs = _chain([e[n - 1]] + [e[i] for i in range(n - 1)] + [e[n - 1]])
    diff = lhs.first_difference(rhs)
    holds = diff is None
    invertible = tensor.is_invertible(s)
    return YBReport(
        equation="ybe" if n == 2 else f"n_ybe_{side}",
        n=n,
        dim=d,
        holds=holds,
        invertible=invertible,
        witness=None if holds else diff[1],
        nnz=s.nnz,
        verification_dim=big,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def verify_ybe(r: TensorOperator, dim_cap: int = DEFAULT_DIM_CAP) -> YBReport:
    """The Yang-Baxter equation (R(x)Id)(Id(x)R)(R(x)Id) = (Id(x)R)(R(x)Id)(Id(x)R)."""
    return verify_nybe(r, 2, "right", dim_cap)


def reverse_operator(dim: int, k: int, mode=scalars.EXACT) -> TensorOperator:
    """tau: x_1 (x) ... (x) x_k -> x_k (x) ... (x) x_1 on equal factors."""
    return tensor.permutation_operator(
        tensor.power_shape(dim, k), tensor.reverse_permutation(k), mode
    )


def cyclic_operator(dim: int, k: int, mode=scalars.EXACT) -> TensorOperator:
    """F: x_1 (x) ... (x) x_k -> x_2 (x) ... (x) x_k (x) x_1."""
    return tensor.permutation_operator(
        tensor.power_shape(dim, k), tensor.cyclic_permutation(k), mode
    )


# -- operators from (central) Leibniz structures ------------------------


def _require_central(cl) -> CentralNLeibnizAlgebra:
    if not isinstance(cl, CentralNLeibnizAlgebra):
        raise SchemaError("expected a central n-Leibniz algebra")
    if not cl.algebra.certified:
        raise NotCertifiedError("the underlying algebra must be certified")
    from .nleibniz import is_central

    if not is_central(cl.algebra, cl.central):
        raise PreconditionError("the distinguished element is not central")
    return cl


def r_from_central_leibniz(cl: CentralNLeibnizAlgebra) -> TensorOperator:
    """The braiding R(x (x) y) = y (x) x + 1 (x) {x,y} of a central Leibniz algebra."""
    cl = _require_central(cl)
    if cl.arity != 2:
        raise SchemaError("r_from_central_leibniz needs a binary bracket")
    d = cl.dim
    mode = cl.mode
    shp = tensor.power_shape(d, 2)
    flip = tensor.permutation_operator(shp, (1, 0), mode)
    entries = {}
    for (x, y), out in cl.algebra.bracket.items():
        col = x * d + y
        for j, c in out.items():
            for u, cu in cl.central.items():
                key = (u * d + j, col)
                entries[key] = entries.get(key, scalars.zero(mode)) + cu * c
    return flip + TensorOperator(shp, shp, entries, mode)


def r_tilde_iff_leibniz(bracket: NLeibnizAlgebra):
    """Build R~ on (k (+) L)^(x)2 from an arbitrary bilinear bracket and
    return (R~, its YB report, the bracket's Leibniz report).

    The two verdicts are forced to agree; disagreement is an internal
    error, not a result.
    """
    if bracket.arity != 2:
        raise SchemaError("r_tilde_iff_leibniz needs a bilinear bracket")
    d, mode = bracket.dim, bracket.mode
    c = d + 1
    shp = tensor.power_shape(c, 2)
    flip = tensor.permutation_operator(shp, (1, 0), mode)
    entries = {}
    for (x, y), out in bracket.bracket.items():
        col = (x + 1) * c + (y + 1)
        for j, cf in out.items():
            key = (0 * c + (j + 1), col)
            entries[key] = entries.get(key, scalars.zero(mode)) + cf
    r = flip + TensorOperator(shp, shp, entries, mode)
    yb = verify_ybe(r)
    fi = check_fundamental_identity(bracket)
    if yb.is_operator != fi.passed:
        raise VerdictDisagreementError(
            "the Yang-Baxter verdict disagrees with the Leibniz-identity verdict"
        )
    return r, yb, fi


def r1_from_nleibniz(a: NLeibnizAlgebra) -> TensorOperator:
    """Braiding on (k (+) L^(x)(n-1))^(x)2, through the induced Leibniz
    bracket on the tensor power with a unit adjoined."""
    if not a.certified:
        raise NotCertifiedError("r1_from_nleibniz needs a certified algebra")
    return r_from_central_leibniz(adjoin_unit(fundamental_leibniz(a)))


def r2_from_nleibniz(a: NLeibnizAlgebra) -> TensorOperator:
    """Braiding on ((k (+) L)^(x)(n-1))^(x)2, through the unit-adjoined
    algebra's induced Leibniz bracket."""
    if not a.certified:
        raise NotCertifiedError("r2_from_nleibniz needs a certified algebra")
    return r_from_central_leibniz(fundamental_leibniz(adjoin_unit(a)))


def eta_intertwiner(a: NLeibnizAlgebra):
    """The injective map k (+) L^(x)(n-1) -> (k (+) L)^(x)(n-1) sending the
    unit to the unit power and a pure tensor to the tensor of embedded
    factors, together with its verification report: injectivity,
    central-Leibniz-homomorphism, and the intertwining of the two
    braidings R2 o (eta (x) eta) = (eta (x) eta) o R1.
    """
    if not a.certified:
        raise NotCertifiedError("eta_intertwiner needs a certified algebra")
    d, n, mode = a.dim, a.arity, a.mode
    w_central = adjoin_unit(fundamental_leibniz(a))
    v_central = fundamental_leibniz(adjoin_unit(a))
    wdim = 1 + d ** (n - 1)
    small = tensor.power_shape(d, n - 1)
    bigshape = tensor.power_shape(d + 1, n - 1)
    one = scalars.one(mode)
    entries = {(0, 0): one}
    for multi in itertools.product(range(d), repeat=n - 1):
        entries[(bigshape.flat(tuple(i + 1 for i in multi)), 1 + small.flat(multi))] = one
    eta = TensorOperator(TensorShape((wdim,)), TensorShape((bigshape.total,)), entries, mode)

    rb = ReportBuilder("eta")
    rb.record("injectivity", tensor.column_rank(eta) == wdim)
    bw = bracket_operator(w_central.algebra)
    bv = bracket_operator(v_central.algebra)
    lhs = eta @ bw
    rhs = bv @ tensor_many([eta, eta])
    rb.record(
        "central-leibniz-homomorphism",
        lhs == rhs and eta.apply(w_central.central) == v_central.central,
        _op_witness(lhs, rhs),
    )
    r1 = r_from_central_leibniz(w_central)
    r2 = r_from_central_leibniz(v_central)
    ee = tensor_many([eta, eta])
    lhs = r2 @ ee
    rhs = ee @ r1
    rb.record("intertwining", lhs == rhs, _op_witness(lhs, rhs))
    return eta, rb.build()


def _op_witness(x, y):
    k = x.first_difference(y)
    return None if k is None else {"row": k[0], "col": k[1]}


def nyb_from_central_nleibniz(cl: CentralNLeibnizAlgebra, side: str = "right") -> TensorOperator:
    """The degree-n braiding of a central n-Leibniz algebra:

        S(x_1 (x) ... (x) x_n) = x_2 (x) ... (x) x_n (x) x_1
                                  + 1^(x)(n-1) (x) [x_1, ..., x_n].

    side="left" builds the mirror operator from the argument-reversed
    bracket: S_l = x_n (x) x_1 (x) ... (x) x_{n-1} + [...] (x) 1^(x)(n-1),
    a solution of the left-variant equation.
    """
    cl = _require_central(cl)
    if side == "right":
        return _nyb_formula(cl)
    if side != "left":
        raise SchemaError("side must be 'right' or 'left'")
    d, n, mode = cl.dim, cl.arity, cl.mode
    shp = tensor.power_shape(d, n)
    central_powers = _vector_power(cl.central, n - 1, mode)
    entries = {}
    inv_cyc = tensor.permutation_operator(shp, tuple([i + 1 for i in range(n - 1)] + [0]), mode)
    reversed_bracket = cl.algebra.op_reversed()
    for key, out in reversed_bracket.bracket.items():
        col = shp.flat(key)
        for j, c in out.items():
            for umulti, cu in central_powers.items():
                row = shp.flat((j,) + umulti)
                entries[(row, col)] = entries.get((row, col), scalars.zero(mode)) + cu * c
    return inv_cyc + TensorOperator(shp, shp, entries, mode)


def _vector_power(vec, k, mode):
    out = {(): scalars.one(mode)}
    for _ in range(k):
        out = {key + (i,): c * x for key, c in out.items() for i, x in vec.items()}
    return out


def nyb_iff_nleibniz(bracket: NLeibnizAlgebra, dim_cap: int = DEFAULT_DIM_CAP):
    """Build S on (k (+) L)^(x)n from an arbitrary n-linear bracket and
    return (S, its n-YB report, the bracket's fundamental-identity report).

    The theorem forces the verdicts to agree; disagreement raises."""
    d, n, mode = bracket.dim, bracket.arity, bracket.mode
    lifted = NLeibnizAlgebra(
        n,
        d + 1,
        {
            tuple(i + 1 for i in key): {j + 1: v for j, v in out.items()}
            for key, out in bracket.bracket.items()
        },
        mode,
    )
    cl = CentralNLeibnizAlgebra(lifted, {0: scalars.one(mode)})
    s = _nyb_formula(cl)
    report = verify_nybe(s, n, "right", dim_cap)
    fi = check_fundamental_identity(bracket)
    if report.is_operator != fi.passed:
        raise VerdictDisagreementError(
            "the n-Yang-Baxter verdict disagrees with the fundamental-identity verdict"
        )
    return s, report, fi


def _nyb_formula(cl: CentralNLeibnizAlgebra) -> TensorOperator:
    """The degree-n braiding formula without certifying the bracket first."""
    d, n, mode = cl.dim, cl.arity, cl.mode
    shp = tensor.power_shape(d, n)
    central_powers = _vector_power(cl.central, n - 1, mode)
    entries = {}
    for key, out in cl.algebra.bracket.items():
        col = shp.flat(key)
        for j, c in out.items():
            for umulti, cu in central_powers.items():
                row = shp.flat(umulti + (j,))
                entries[(row, col)] = entries.get((row, col), scalars.zero(mode)) + cu * c
    return cyclic_operator(d, n, mode) + TensorOperator(shp, shp, entries, mode)


def nyb_from_linear_nrack(l: LinearNRack, check: bool = True):
    """The degree-n braiding of a cocommutative linear n-rack and its inverse:

        S(u_1 (x) ... (x) u_n)
            = u_2^(1) (x) ... (x) u_n^(1) (x) <u_1, u_2^(2), ..., u_n^(2)>
        S^{-1}(u_1 (x) ... (x) u_n)
            = <<u_n, u_{n-1}^(2), ..., u_1^(2)>> (x) u_1^(1) (x) ... (x) u_{n-1}^(1).

    Their composition is checked to be the identity at construction.
    """
    if not l.base.cocommutative:
        raise PreconditionError("the braiding needs a cocommutative base")
    if check:
        report = check_linear_nrack(l)
        if not report.passed:
            raise PreconditionError("input fails the linear n-rack identities", report.witness)
    c, n = l.base.dim, l.arity
    mode = l.base.mode
    idc = identity(TensorShape((c,)), mode)

    fwd_split = tensor_many([idc] + [l.base.delta] * (n - 1))
    perm = [0] * (2 * n - 1)
    perm[0] = n - 1
    for j in range(n - 1):
        perm[1 + 2 * j] = j  # legs (1) pass through, in order
        perm[2 + 2 * j] = n + j  # legs (2) feed the bracket
    fwd = compose_blocks([idc] * (n - 1) + [l.bracket], fwd_split.permute_codomain(perm))

    bwd_split = tensor_many([l.base.delta] * (n - 1) + [idc])
    perm = [0] * (2 * n - 1)
    perm[2 * (n - 1)] = 0  # u_n heads the inverse bracket
    for j in range(n - 1):
        perm[2 * j] = n + j  # legs (1) pass through, in order
        perm[2 * j + 1] = 1 + (n - 2 - j)  # legs (2), reversed, feed the inverse bracket
    bwd = compose_blocks([l.inv_bracket] + [idc] * (n - 1), bwd_split.permute_codomain(perm))

    shp = tensor.power_shape(c, n)
    fwd = fwd.with_shapes(shp, shp)
    bwd = bwd.with_shapes(shp, shp)
    ident = identity(shp, mode)
    if fwd @ bwd != ident or bwd @ fwd != ident:
        raise PreconditionError(
            "inverse-mismatch: the stated inverse fails, so the input is not a linear n-rack"
        )
    return fwd, bwd


def nyb_from_ybe(r: TensorOperator, n: int, dim_cap: int = DEFAULT_DIM_CAP) -> TensorOperator:
    """Lift a Yang-Baxter operator to degree n on the same space:
    S_n = (Id^(x)(n-2) (x) R) ... (Id (x) R (x) Id^(x)(n-3)) (R (x) Id^(x)(n-2)),
    applied left to right."""
    base = verify_ybe(r, dim_cap)
    if not base.is_operator:
        raise PreconditionError("input is not a Yang-Baxter operator", base.to_json())
    if n == 2:
        return r
    d = _factor_dim(r, 2)
    steps = [tensor.embed(r, i, n - 2 - i, d) for i in range(n - 1)]
    return _chain(steps)


def ybe_from_nyb(s: TensorOperator, n: int, dim_cap: int = DEFAULT_DIM_CAP) -> TensorOperator:
    """Descend a degree-n operator to a Yang-Baxter operator on V^(x)(n-1):
    S~ = (S (x) Id^(x)(n-2)) ... (Id^(x)(n-2) (x) S), applied right to left,
    read as a map on (V^(x)(n-1))^(x)2."""
    base = verify_nybe(s, n, "right", dim_cap)
    if not base.is_operator:
        raise PreconditionError("input is not an n-Yang-Baxter operator", base.to_json())
    d = _factor_dim(s, n)
    steps = [tensor.embed(s, i, n - 2 - i, d) for i in range(n - 2, -1, -1)]
    out = _chain(steps)
    pair = tensor.power_shape(d ** (n - 1), 2)
    return out.with_shapes(pair, pair)


def conjugate_nyb(s: TensorOperator, phi: TensorOperator, n: int) -> TensorOperator:
    """S_phi = (phi^{-1})^(x)n o S o phi^(x)n; solutions are closed under this."""
    if not phi.is_square():
        raise ShapeMismatchError("phi must be square")
    phi_inv = tensor.invert(phi)  # raises SingularMatrixError for singular phi
    return tensor_many([phi_inv] * n) @ s @ tensor_many([phi] * n)


def group_algebra_nyb(group: FiniteGroup, n: int) -> TensorOperator:
    """The degree-n braiding on k[G]:
    g_1 (x) ... (x) g_n -> g_2 (x) ... (x) g_n (x) (g_n ... g_2 g_1 g_2^{-1} ... g_n^{-1}).

    Built directly from the group table; it coincides with the braiding
    of the linearized conjugation n-rack.
    """
    m = group.size
    shp = tensor.power_shape(m, n)
    one = scalars.one(scalars.EXACT)
    entries = {}
    for args in itertools.product(range(m), repeat=n):
        acc = args[0]
        for x in args[1:]:
            acc = group.mul[group.mul[x][acc]][group.inv[x]]
        entries[(shp.flat(args[1:] + (acc,)), shp.flat(args))] = one
    return TensorOperator(shp, shp, entries, scalars.EXACT, validate=False)
