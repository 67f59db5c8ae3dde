"""Finite-dimensional coalgebras, linear racks, and linear n-racks.

A linear n-rack is a coassociative counital coalgebra C with two
coalgebra homomorphisms C^(x)n -> C, a bracket <...> and an inverse
bracket <<...>>, satisfying Sweedler-decorated self-distributivity and
the inverse property

    << <u, v_1^(2), ..., v_{n-1}^(2)>, v_{n-1}^(1), ..., v_1^(1) >>
        = < <<u, v_1^(2), ..., v_{n-1}^(2)>>, v_{n-1}^(1), ..., v_1^(1) >
        = eps(v_1)...eps(v_{n-1}) u.

All Sweedler-leg bookkeeping is matrix algebra: iterated coproducts
composed with factor shuffles.  There are no symbolic Sweedler indices
anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import scalars, tensor
from .errors import NotCertifiedError, NotClosedError, PreconditionError, SchemaError
from .nrack import FiniteNRack
from .reports import ReportBuilder, VerificationReport
from .tensor import TensorOperator, TensorShape, compose_blocks, identity, tensor_many


@dataclass(frozen=True)
class Coalgebra:
    """Coproduct and counit matrices, with the cocommutativity flag cached.

    ``candidates`` are the vectors the group-like search is allowed to
    inspect; the default (all basis vectors) covers the set-algebra
    k[X] case, and constructions add their own canonical candidates.
    """

    dim: int
    delta: TensorOperator
    counit: TensorOperator
    mode: str = scalars.EXACT
    cocommutative: bool = None
    candidates: tuple = None

    def __post_init__(self):
        if self.delta.domain_shape.total != self.dim or self.delta.codomain_shape.total != self.dim**2:
            raise SchemaError("coproduct must map C to C (x) C")
        if self.counit.domain_shape.total != self.dim or self.counit.codomain_shape.total != 1:
            raise SchemaError("counit must map C to the ground field")
        delta = self.delta.with_shapes(TensorShape((self.dim,)), tensor.power_shape(self.dim, 2))
        object.__setattr__(self, "delta", delta)
        if self.cocommutative is None:
            object.__setattr__(
                self, "cocommutative", delta.permute_codomain((1, 0)) == delta
            )
        if self.candidates is None:
            one = scalars.one(self.mode)
            object.__setattr__(self, "candidates", tuple({i: one} for i in range(self.dim)))
        else:
            object.__setattr__(self, "candidates", tuple(dict(c) for c in self.candidates))

    def iterated_delta(self, legs: int) -> TensorOperator:
        """The map C -> C^(x)legs splitting one element into `legs` Sweedler legs."""
        if legs < 1:
            raise SchemaError("need at least one leg")
        out = identity(TensorShape((self.dim,)), self.mode)
        for k in range(1, legs):
            out = compose_blocks([self.delta] + [identity(TensorShape((self.dim,)), self.mode)] * (k - 1), out)
        return out


def set_coalgebra(size: int, mode=scalars.EXACT) -> Coalgebra:
    """k[X] for a finite set: Delta x = x (x) x, eps x = 1."""
    one = scalars.one(mode)
    shp = TensorShape((size,))
    delta = TensorOperator(
        shp, tensor.power_shape(size, 2), {(x * size + x, x): one for x in range(size)}, mode, validate=False
    )
    counit = TensorOperator(shp, TensorShape((1,)), {(0, x): one for x in range(size)}, mode, validate=False)
    return Coalgebra(size, delta, counit, mode)


def kplus_coalgebra(dim: int, mode=scalars.EXACT) -> Coalgebra:
    """k (+) L for a dim-dimensional space L, basis 0 = the unit (1,0).

    Delta(1,0) = (1,0)(x)(1,0); Delta(0,x) = (0,x)(x)(1,0) + (1,0)(x)(0,x);
    eps is the scalar part.
    """
    c = dim + 1
    one = scalars.one(mode)
    entries = {(0, 0): one}
    for i in range(1, c):
        entries[(i * c + 0, i)] = one
        entries[(0 * c + i, i)] = one
    delta = TensorOperator(TensorShape((c,)), tensor.power_shape(c, 2), entries, mode, validate=False)
    counit = TensorOperator(TensorShape((c,)), TensorShape((1,)), {(0, 0): one}, mode, validate=False)
    return Coalgebra(c, delta, counit, mode)


def tensor_power_coalgebra(base: Coalgebra, k: int) -> Coalgebra:
    """C^(x)k with the dealt coproduct and the product counit."""
    if k < 1:
        raise SchemaError("need at least one factor")
    if k == 1:
        return base
    delta = tensor_many([base.delta] * k).permute_codomain(tensor.deal_factors(k))
    delta = delta.with_shapes(
        tensor.power_shape(base.dim, k), tensor.power_shape(base.dim**k, 2)
    )
    counit = tensor_many([base.counit] * k).with_shapes(
        tensor.power_shape(base.dim, k), TensorShape((1,))
    )
    candidates = []
    for combo in itertools.product(base.candidates, repeat=k):
        vec = {(): scalars.one(base.mode)}
        prod = {(): scalars.one(base.mode)}
        for v in combo:
            prod = {key + (i,): c * x for key, c in prod.items() for i, x in v.items()}
        shp = tensor.power_shape(base.dim, k)
        candidates.append({shp.flat(key): c for key, c in prod.items()})
    return Coalgebra(base.dim**k, delta, counit, base.mode, None, tuple(candidates))


def check_coalgebra(c: Coalgebra) -> VerificationReport:
    """Coassociativity, both counit laws, and consistency of the cached
    cocommutativity flag."""
    rb = ReportBuilder(f"coalgebra(dim={c.dim}, cocommutative={c.cocommutative})")
    idc = identity(TensorShape((c.dim,)), c.mode)
    left = compose_blocks([c.delta, idc], c.delta)
    right = compose_blocks([idc, c.delta], c.delta)
    rb.record("coassociativity", left == right, _diff_witness(left, right))
    lhs = compose_blocks([c.counit, idc], c.delta)
    rb.record("counit-left", lhs == idc, _diff_witness(lhs, idc))
    rhs = compose_blocks([idc, c.counit], c.delta)
    rb.record("counit-right", rhs == idc, _diff_witness(rhs, idc))
    rb.record(
        "cocommutativity-flag",
        (c.delta.permute_codomain((1, 0)) == c.delta) == c.cocommutative,
    )
    return rb.build()


def _diff_witness(a, b):
    k = a.first_difference(b)
    return None if k is None else {"row": k[0], "col": k[1]}


@dataclass(frozen=True)
class LinearRack:
    """A coalgebra with self-distributive op and its inverse partner."""

    base: Coalgebra
    op: TensorOperator
    inv_op: TensorOperator

    def as_nrack(self) -> "LinearNRack":
        return LinearNRack(self.base, 2, self.op, self.inv_op)


@dataclass(frozen=True)
class LinearNRack:
    """A coalgebra with an n-ary bracket and inverse bracket, both C^(x)n -> C."""

    base: Coalgebra
    arity: int
    bracket: TensorOperator
    inv_bracket: TensorOperator

    def __post_init__(self):
        c, n = self.base.dim, self.arity
        for name, op in (("bracket", self.bracket), ("inv_bracket", self.inv_bracket)):
            if op.domain_shape.total != c**n or op.codomain_shape.total != c:
                raise SchemaError(f"{name} must map C^(x){n} to C")

    def as_rack(self) -> LinearRack:
        if self.arity != 2:
            raise SchemaError("only an arity-2 structure is a linear rack")
        return LinearRack(self.base, self.bracket, self.inv_bracket)


# -- the four defining matrix identities --------------------------------


def _self_distributivity_sides(l: LinearNRack, b: TensorOperator):
    """LHS and RHS of the distributive law for an n-ary coalgebra map b."""
    c, n = l.base.dim, l.arity
    idc = identity(TensorShape((c,)), l.base.mode)
    lhs = b @ tensor_many([b] + [idc] * (n - 1))
    split = tensor_many([idc] * n + [l.base.iterated_delta(n)] * (n - 1))
    perm = [0] * (n + n * (n - 1))
    for i in range(n):
        perm[i] = i * n
    for j in range(n - 1):
        for leg in range(n):
            perm[n + j * n + leg] = leg * n + (j + 1)
    rhs = b @ compose_blocks([b] * n, split.permute_codomain(perm))
    return lhs, rhs


def _inverse_property_sides(l: LinearNRack, first: TensorOperator, second: TensorOperator):
    """second( first(u, v_1^(2)..v_{n-1}^(2)), v_{n-1}^(1)..v_1^(1) ) on C^(x)n."""
    c, n = l.base.dim, l.arity
    idc = identity(TensorShape((c,)), l.base.mode)
    split = tensor_many([idc] + [l.base.delta] * (n - 1))
    perm = [0] * (2 * n - 1)
    for j in range(n - 1):
        perm[1 + 2 * j] = n + (n - 2 - j)  # leg (1), reversed order, applied second
        perm[2 + 2 * j] = 1 + j  # leg (2), feeds the first map
    inner = compose_blocks([first] + [idc] * (n - 1), split.permute_codomain(perm))
    return second @ inner


def check_linear_nrack(l: LinearNRack) -> VerificationReport:
    """The four defining identities, each as an exact matrix equation:

    (a) both maps commute with the coproduct (through the deal shuffle),
    (b) both maps commute with the counit,
    (c) self-distributivity of the bracket on C^(x)(2n-1),
    (d) the inverse property in both application orders.
    """
    base_report = check_coalgebra(l.base)
    if not base_report.passed:
        raise PreconditionError("underlying coalgebra is invalid", base_report.witness)
    c, n = l.base.dim, l.arity
    mode = l.base.mode
    rb = ReportBuilder(f"linear-{n}-rack(dim={c})")

    split_all = tensor_many([l.base.delta] * n).permute_codomain(tensor.deal_factors(n))
    ok, wit = True, None
    for b in (l.bracket, l.inv_bracket):
        lhs = l.base.delta @ b
        rhs = compose_blocks([b, b], split_all)
        if lhs != rhs:
            ok, wit = False, _diff_witness(lhs, rhs)
            break
    rb.record("coproduct-homomorphism", ok, wit)

    eps_n = tensor_many([l.base.counit] * n)
    ok, wit = True, None
    for b in (l.bracket, l.inv_bracket):
        lhs = l.base.counit @ b
        if lhs != eps_n:
            ok, wit = False, _diff_witness(lhs, eps_n)
            break
    rb.record("counit-homomorphism", ok, wit)

    lhs, rhs = _self_distributivity_sides(l, l.bracket)
    rb.record("self-distributivity", lhs == rhs, _diff_witness(lhs, rhs))

    idc = identity(TensorShape((c,)), mode)
    scaled_proj = tensor_many([idc] + [l.base.counit] * (n - 1))
    ok, wit = True, None
    for first, second in ((l.bracket, l.inv_bracket), (l.inv_bracket, l.bracket)):
        side = _inverse_property_sides(l, first, second)
        if side != scaled_proj:
            ok, wit = False, _diff_witness(side, scaled_proj)
            break
    rb.record("inverse-property", ok, wit)
    return rb.build()


def check_linear_rack(r: LinearRack) -> VerificationReport:
    """The arity-2 specialization of check_linear_nrack."""
    return check_linear_nrack(r.as_nrack())


def check_linear_nrack_homomorphism(
    a: LinearNRack, b: LinearNRack, f: TensorOperator
) -> VerificationReport:
    """Whether f is a coalgebra map with f o <...> = <...>' o f^(x)n."""
    if a.arity != b.arity:
        raise SchemaError("arity mismatch")
    rb = ReportBuilder("linear-nrack-homomorphism")
    lhs = b.base.delta @ f
    rhs = compose_blocks([f, f], a.base.delta)
    rb.record("coproduct-compatible", lhs == rhs, _diff_witness(lhs, rhs))
    lhs = b.base.counit @ f
    rb.record("counit-compatible", lhs == a.base.counit, _diff_witness(lhs, a.base.counit))
    lhs = f @ a.bracket
    rhs = b.bracket @ tensor_many([f] * a.arity)
    rb.record("bracket-compatible", lhs == rhs, _diff_witness(lhs, rhs))
    return rb.build()


# -- constructions -----------------------------------------------------


def linearize_set(size: int, mode=scalars.EXACT) -> Coalgebra:
    return set_coalgebra(size, mode)


def linearize_nrack(t: FiniteNRack, mode=scalars.EXACT) -> LinearNRack:
    """Extend a certified finite n-rack linearly to k[X].

    The inverse bracket extends the inverse operation
    <<x, y_1..y_{n-1}>> = (translation by (y_{n-1}, ..., y_1))^{-1} x,
    which is what the inverse property pins down on group-likes.
    """
    if not t.certified:
        raise NotCertifiedError("linearize_nrack needs a certified n-rack")
    if t.side != "right":
        raise SchemaError("linearize right-side tables; reverse a left table first")
    m, n = t.size, t.arity
    base = set_coalgebra(m, mode)
    one = scalars.one(mode)
    dom = tensor.power_shape(m, n)
    cod = TensorShape((m,))
    entries = {}
    inv_entries = {}
    for args in itertools.product(range(m), repeat=n):
        col = dom.flat(args)
        entries[(t.apply(args), col)] = one
        rev = t.translation(tuple(reversed(args[1:])))
        inv = [0] * m
        for i, v in enumerate(rev):
            inv[v] = i
        inv_entries[(inv[args[0]], col)] = one
    bracket = TensorOperator(dom, cod, entries, mode, validate=False)
    inv_bracket = TensorOperator(dom, cod, inv_entries, mode, validate=False)
    return LinearNRack(base, n, bracket, inv_bracket)


def group_like_elements(c: Coalgebra):
    """All candidate vectors v with Delta v = v (x) v and v != 0.

    The search is restricted to the coalgebra's stored candidate set
    (basis vectors by default); solving the full quadratic group-like
    system is out of scope.
    """
    if c.mode != scalars.EXACT:
        raise SchemaError("group-like extraction is exact-mode only")
    found = []
    shp2 = tensor.power_shape(c.dim, 2)
    for v in c.candidates:
        if not v:
            continue
        left = c.delta.apply(v)
        prod = {}
        for i, x in v.items():
            for j, y in v.items():
                prod[shp2.flat((i, j))] = x * y
        if left == prod and not any(f == v for f in found):
            found.append(dict(v))
    return found


def induced_nrack(l: LinearNRack) -> FiniteNRack:
    """Restrict the bracket to the found group-likes; the set must be closed."""
    likes = group_like_elements(l.base)
    if not likes:
        raise NotClosedError("no group-like elements found among the candidates")
    n = l.arity
    m = len(likes)
    dom = tensor.power_shape(l.base.dim, n)
    table = []
    for combo in itertools.product(range(m), repeat=n):
        prod = {(): scalars.one(l.base.mode)}
        for gi in combo:
            prod = {key + (i,): cv * x for key, cv in prod.items() for i, x in likes[gi].items()}
        vec = l.bracket.apply({dom.flat(k): v for k, v in prod.items()})
        hit = None
        for gi, g in enumerate(likes):
            if vec == g:
                hit = gi
                break
        if hit is None:
            raise NotClosedError(f"bracket of group-likes {combo} left the found set")
        table.append(hit)
    return FiniteNRack(m, n, tuple(table))


def linear_nrack_from_linear_rack(r: LinearRack, arity: int, check: bool = True) -> LinearNRack:
    """Fold a linear rack into a linear n-rack:
    <u_1..u_n> = (...((u_1 <| u_2) <| u_3)...) <| u_n, likewise the inverse."""
    if arity < 2:
        raise SchemaError("arity must be at least 2")
    if check:
        report = check_linear_rack(r)
        if not report.passed:
            raise PreconditionError("input fails the linear-rack identities", report.witness)
    if arity == 2:
        return r.as_nrack()
    idc = identity(TensorShape((r.base.dim,)), r.base.mode)

    def fold(op):
        acc = op
        for _ in range(arity - 2):
            acc = op @ tensor_many([acc, idc])
        return acc

    return LinearNRack(r.base, arity, fold(r.op), fold(r.inv_op))


def linear_rack_on_tensor_power(l: LinearNRack, check: bool = False) -> LinearRack:
    """The induced linear rack on C^(x)(n-1) of a cocommutative linear n-rack:

        (u_1..u_{n-1}) <| (v_1..v_{n-1})
            = <u_1, v_1^(1), ..., v_{n-1}^(1)> (x) ... (x) <u_{n-1}, v_1^(n-1), ..., v_{n-1}^(n-1)>

    with the inverse op feeding legs to <<...>> in reversed v-order.
    """
    if not l.base.cocommutative:
        raise PreconditionError("tensor-power rack needs a cocommutative base")
    c, n = l.base.dim, l.arity
    mode = l.base.mode
    if n == 2:
        return l.as_rack()
    idc = identity(TensorShape((c,)), mode)
    width = n - 1
    split = tensor_many([idc] * width + [l.base.iterated_delta(width)] * width)

    def assemble(op, reverse_vs):
        perm = [0] * (width + width * width)
        for i in range(width):
            perm[i] = i * n
        for j in range(width):
            for leg in range(width):
                slot = (width - j) if reverse_vs else (j + 1)
                perm[width + j * width + leg] = leg * n + slot
        out = compose_blocks([op] * width, split.permute_codomain(perm))
        return out.with_shapes(
            tensor.power_shape(c**width, 2), tensor.power_shape(c, width)
        )

    rack = LinearRack(
        tensor_power_coalgebra(l.base, width),
        assemble(l.bracket, False),
        assemble(l.inv_bracket, True),
    )
    if check:
        report = check_linear_rack(rack)
        if not report.passed:
            raise PreconditionError("tensor-power rack failed its recheck", report.witness)
    return rack


def linear_nrack_from_nleibniz(algebra, require_certified: bool = True) -> LinearNRack:
    """The cocommutative linear n-rack on k (+) L of a certified n-Leibniz algebra:

        <(l_1,x_1), ..., (l_n,x_n)> = (l_1...l_n, l_2...l_n x_1 + [x_1..x_n])
        <<(l_1,x_1), ..., (l_n,x_n)>> = (l_1...l_n, l_2...l_n x_1 - [x_1, x_n, ..., x_2])

    with ``require_certified=False`` the formula is instantiated for an
    arbitrary bracket; check_linear_nrack then fails exactly where the
    fundamental identity does.
    """
    from .nleibniz import NLeibnizAlgebra

    if not isinstance(algebra, NLeibnizAlgebra):
        raise SchemaError("expected an n-Leibniz algebra")
    if require_certified and not algebra.certified:
        raise NotCertifiedError("linear_nrack_from_nleibniz needs a certified algebra")
    d, n = algebra.dim, algebra.arity
    mode = algebra.mode
    base = kplus_coalgebra(d, mode)
    c = d + 1
    dom = tensor.power_shape(c, n)
    cod = TensorShape((c,))
    one = scalars.one(mode)

    def build(bracket_terms):
        entries = {(0, dom.flat((0,) * n)): one}
        for i in range(1, c):
            entries[(i, dom.flat((i,) + (0,) * (n - 1)))] = one
        for col_key, out in bracket_terms.items():
            col = dom.flat(tuple(i + 1 for i in col_key))
            for j, v in out.items():
                prev = entries.get((j + 1, col), scalars.zero(mode))
                entries[(j + 1, col)] = prev + v
        return TensorOperator(dom, cod, entries, mode)

    bracket = build(algebra.bracket)
    # [x_1, x_n, ..., x_2] read off at the column (x_1, x_2, ..., x_n):
    # the stored key (k_1, k_2, ..., k_n) contributes to column (k_1, k_n, ..., k_2)
    inv_terms = {}
    for key, out in algebra.bracket.items():
        col_key = (key[0],) + tuple(reversed(key[1:]))
        acc = inv_terms.setdefault(col_key, {})
        for j, v in out.items():
            acc[j] = acc.get(j, scalars.zero(mode)) - v
    inv_bracket = build(inv_terms)
    return LinearNRack(base, n, bracket, inv_bracket)


def lebed_operator(r: LinearRack):
    """The braiding of a cocommutative linear rack and its inverse:

        R(u (x) v) = v^(1) (x) (u <| v^(2))
        R^{-1}(u (x) v) = (v inv<| u^(2)) (x) u^(1)

    Both are returned; their composition is checked to be the identity.
    """
    if not r.base.cocommutative:
        raise PreconditionError("the braiding needs a cocommutative base")
    c = r.base.dim
    mode = r.base.mode
    idc = identity(TensorShape((c,)), mode)
    fwd_split = tensor_many([idc, r.base.delta]).permute_codomain((1, 0, 2))
    fwd = compose_blocks([idc, r.op], fwd_split)
    bwd_split = tensor_many([r.base.delta, idc]).permute_codomain((2, 1, 0))
    bwd = compose_blocks([r.inv_op, idc], bwd_split)
    shp = tensor.power_shape(c, 2)
    fwd = fwd.with_shapes(shp, shp)
    bwd = bwd.with_shapes(shp, shp)
    ident = identity(shp, mode)
    if fwd @ bwd != ident or bwd @ fwd != ident:
        raise PreconditionError(
            "inverse-mismatch: the two maps do not invert each other, so the input is not a linear rack"
        )
    return fwd, bwd
