"""Finite n-racks as operation tables, plus the vector-space n-rack of an
n-Leibniz algebra.

An n-rack is a set with an n-ary operation <x_1, ..., x_n> that is
self-distributive,

    <<x_1..x_n>, y_1..y_{n-1}> = <<x_1, y>, <x_2, y>, ..., <x_n, y>>,

and whose right translations <-, y_1..y_{n-1}> are bijections.  Tables
are total and admit uncertified candidates so that enumeration can
iterate raw tables; `check_nrack` certifies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import scalars, tensor
from .errors import (
    CapExceededError,
    NotCertifiedError,
    NotNilpotentError,
    PreconditionError,
    SchemaError,
    VerdictDisagreementError,
)
from .nleibniz import NLeibnizAlgebra, ad, exp_ad, fundamental_leibniz, vec_equal
from .reports import ReportBuilder, VerificationReport

RIGHT = "right"
LEFT = "left"

#: rack_from_nrack refuses carriers beyond this many elements
CARRIER_CAP = 10**6


@dataclass(frozen=True)
class FiniteNRack:
    """Total n-ary operation table on {0..size-1}; flat, first argument most significant."""

    size: int
    arity: int
    table: tuple
    side: str = RIGHT
    certified: bool = False

    def __post_init__(self):
        if self.size < 1 or self.arity < 2:
            raise SchemaError("need size >= 1 and arity >= 2")
        if self.side not in (RIGHT, LEFT):
            raise SchemaError(f"side must be 'right' or 'left', got {self.side!r}")
        table = tuple(int(v) for v in self.table)
        if len(table) != self.size**self.arity:
            raise SchemaError(
                f"table has {len(table)} entries, expected {self.size**self.arity} (tables must be total)"
            )
        if any(not 0 <= v < self.size for v in table):
            raise SchemaError("table value out of range")
        object.__setattr__(self, "table", table)

    def index(self, args) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return idx

    def apply(self, args) -> int:
        return self.table[self.index(args)]

    def translation(self, ys) -> tuple:
        """The right translation x -> <x, y_1..y_{n-1}> as a tuple over x."""
        base = self.index((0,) + tuple(ys))
        step = self.size ** (self.arity - 1)
        return tuple(self.table[base + x * step] for x in range(self.size))

    def reversed_args(self) -> "FiniteNRack":
        """Swap argument order; turns a right structure into a left one and back."""
        m, n = self.size, self.arity
        new = [0] * len(self.table)
        for args in itertools.product(range(m), repeat=n):
            new[self.index(args)] = self.apply(tuple(reversed(args)))
        return FiniteNRack(m, n, tuple(new), LEFT if self.side == RIGHT else RIGHT, self.certified)

    def as_certified(self) -> "FiniteNRack":
        return FiniteNRack(self.size, self.arity, self.table, self.side, True)


def from_function(size: int, arity: int, fn, side=RIGHT, certified=False) -> FiniteNRack:
    table = [
        fn(*args) for args in itertools.product(range(size), repeat=arity)
    ]
    return FiniteNRack(size, arity, tuple(table), side, certified)


def trivial_nrack(size: int, arity: int) -> FiniteNRack:
    """<x_1, ..., x_n> = x_1."""
    return from_function(size, arity, lambda *a: a[0], certified=True)


def cyclic_rack(size: int) -> FiniteNRack:
    """x <| y = x + 1 mod size; for size 2 this is the flip rack."""
    return from_function(size, 2, lambda x, y: (x + 1) % size, certified=True)


# -- groups ------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table; axioms verified at construction."""

    size: int
    mul: tuple
    inv: tuple = ()
    identity: int = 0
    labels: tuple = ()

    def __post_init__(self):
        m = self.size
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        if len(mul) != m or any(len(row) != m for row in mul):
            raise SchemaError("multiplication table must be size x size")
        if any(not 0 <= v < m for row in mul for v in row):
            raise SchemaError("multiplication table value out of range")
        identity = None
        for e in range(m):
            if all(mul[e][x] == x and mul[x][e] == x for x in range(m)):
                identity = e
                break
        if identity is None:
            raise PreconditionError("no identity element")
        inv = [None] * m
        for x in range(m):
            for y in range(m):
                if mul[x][y] == identity and mul[y][x] == identity:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise PreconditionError(f"element {x} has no inverse")
        for a, b, c in itertools.product(range(m), repeat=3):
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise PreconditionError(f"multiplication not associative at {(a, b, c)}")
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", tuple(inv))
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "labels", tuple(self.labels))

    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a] for a in range(self.size) for b in range(self.size)
        )


def check_group_table(size: int, mul) -> VerificationReport:
    """Group axioms as a report instead of a construction-time error."""
    rb = ReportBuilder(f"group(size={size})")
    mul = tuple(tuple(int(v) for v in row) for row in mul)
    if len(mul) != size or any(len(row) != size for row in mul):
        raise SchemaError("multiplication table must be size x size")
    identity = None
    for e in range(size):
        if all(mul[e][x] == x and mul[x][e] == x for x in range(size)):
            identity = e
            break
    rb.record("identity", identity is not None)
    if identity is not None:
        missing = next(
            (
                x
                for x in range(size)
                if not any(mul[x][y] == identity and mul[y][x] == identity for y in range(size))
            ),
            None,
        )
        rb.record("inverses", missing is None, None if missing is None else {"element": missing})
    else:
        rb.skip("inverses", "no identity")
    bad = next(
        (
            (a, b, c)
            for a in range(size)
            for b in range(size)
            for c in range(size)
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]
        ),
        None,
    )
    rb.record("associativity", bad is None, None if bad is None else {"triple": list(bad)})
    return rb.build()


def cyclic_group(k: int) -> FiniteGroup:
    mul = tuple(tuple((a + b) % k for b in range(k)) for a in range(k))
    return FiniteGroup(k, mul)


def symmetric_group(k: int) -> FiniteGroup:
    """S_k on permutation tuples in lexicographic order; (p*q)(i) = p(q(i))."""
    elems = sorted(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(elems)}
    mul = tuple(
        tuple(index[tuple(p[q[i]] for i in range(k))] for q in elems) for p in elems
    )
    labels = tuple("".join(map(str, p)) for p in elems)
    return FiniteGroup(len(elems), mul, labels=labels)


def conjugation_nrack(group: FiniteGroup, arity: int) -> FiniteNRack:
    """<x_1, ..., x_n> = x_n ... x_2 x_1 x_2^{-1} ... x_n^{-1}."""

    def op(*args):
        acc = args[0]
        for x in args[1:]:
            acc = group.mul[group.mul[x][acc]][group.inv[x]]
        return acc

    return from_function(group.size, arity, op, certified=True)


# -- verification ------------------------------------------------------


def check_nrack(t: FiniteNRack) -> VerificationReport:
    """Self-distributivity over all m^(2n-1) tuples, bijectivity of every right
    translation, and the translation-map assignment being a rack homomorphism
    into the conjugation rack of Sym(X).

    Left-side tables are checked through their argument reversal.
    """
    if t.side == LEFT:
        inner = check_nrack(t.reversed_args())
        return VerificationReport("left-nrack(via reversal)", inner.checks)
    rb = ReportBuilder("nrack")
    m, n = t.size, t.arity
    ok, witness = True, None
    for tpl in itertools.product(range(m), repeat=2 * n - 1):
        xs, ys = tpl[:n], tpl[n:]
        lhs = t.apply((t.apply(xs),) + ys)
        rhs = t.apply(tuple(t.apply((x,) + ys) for x in xs))
        if lhs != rhs:
            ok, witness = False, {"tuple": list(tpl), "lhs": lhs, "rhs": rhs}
            break
    distributive = rb.record("self-distributivity", ok, witness)

    ok, witness = True, None
    for ys in itertools.product(range(m), repeat=n - 1):
        tr = t.translation(ys)
        if len(set(tr)) != m:
            ok, witness = False, {"translation": list(ys), "image": list(tr)}
            break
    bijective = rb.record("translation-bijectivity", ok, witness)

    if not (distributive and bijective):
        rb.skip("translation-rack-homomorphism", "rack axioms failed")
        return rb.build()

    # t_{xbar <| ybar} = t_ybar o t_xbar o t_ybar^{-1} on X, for all xbar, ybar
    ok, witness = True, None
    for xs in itertools.product(range(m), repeat=n - 1):
        tx = t.translation(xs)
        for ys in itertools.product(range(m), repeat=n - 1):
            ty = t.translation(ys)
            ty_inv = [0] * m
            for i, v in enumerate(ty):
                ty_inv[v] = i
            conj = tuple(ty[tx[ty_inv[i]]] for i in range(m))
            moved = tuple(t.apply((x,) + ys) for x in xs)
            if t.translation(moved) != conj:
                ok, witness = False, {"x": list(xs), "y": list(ys)}
                break
        if not ok:
            break
    rb.record("translation-rack-homomorphism", ok, witness)
    return rb.build()


def certify(t: FiniteNRack) -> FiniteNRack:
    report = check_nrack(t)
    if not report.passed:
        raise PreconditionError("table is not an n-rack", report.witness)
    return t.as_certified()


def _require_certified(t: FiniteNRack, what: str):
    if not t.certified:
        raise NotCertifiedError(f"{what} needs a certified n-rack; run check_nrack first")


# -- constructions on tables -------------------------------------------


def nrack_from_rack(r: FiniteNRack, arity: int, recheck: bool = False) -> FiniteNRack:
    """Fold a rack into an n-rack: <x_1..x_n> = (...((x_1 <| x_2) <| x_3)...) <| x_n."""
    if r.arity != 2:
        raise SchemaError("nrack_from_rack starts from a binary rack")
    _require_certified(r, "nrack_from_rack")

    def op(*args):
        acc = args[0]
        for x in args[1:]:
            acc = r.apply((acc, x))
        return acc

    out = from_function(r.size, arity, op, certified=True)
    if recheck:
        _recheck(out)
    return out


def extend_rack_by_op(r: FiniteNRack, b: FiniteNRack, recheck: bool = False) -> FiniteNRack:
    """Extend a rack by an equivariant n-ary operation b into the (n+1)-rack
    <<x_1, ..., x_{n+1}>> = x_1 <| b(x_2, ..., x_{n+1}).

    Equivariance b(x_1..x_n) <| y = b(x_1 <| y, ..., x_n <| y) is checked
    on all tuples first.
    """
    if r.arity != 2:
        raise SchemaError("the extending structure must be a binary rack")
    if r.size != b.size:
        raise SchemaError("rack and operation must share the carrier")
    _require_certified(r, "extend_rack_by_op")
    m = r.size
    for tpl in itertools.product(range(m), repeat=b.arity + 1):
        xs, y = tpl[:-1], tpl[-1]
        lhs = r.apply((b.apply(xs), y))
        rhs = b.apply(tuple(r.apply((x, y)) for x in xs))
        if lhs != rhs:
            raise PreconditionError(
                "operation is not equivariant under the rack action",
                {"tuple": list(xs), "y": y, "lhs": lhs, "rhs": rhs},
            )

    def op(*args):
        return r.apply((args[0], b.apply(args[1:])))

    out = from_function(m, b.arity + 1, op, certified=True)
    if recheck:
        _recheck(out)
    return out


def combine_compatible(rm: FiniteNRack, rn: FiniteNRack, recheck: bool = False) -> FiniteNRack:
    """Merge compatible m-ary and n-ary racks on one carrier into an
    (m+n-1)-rack <<x_1..x_{m+n-1}>> = <<x_1..x_m>_first, x_{m+1}, ...>_second.

    Compatibility: every right translation of each rack is an
    automorphism of the other.
    """
    if rm.size != rn.size:
        raise SchemaError("racks must share the carrier")
    _require_certified(rm, "combine_compatible")
    _require_certified(rn, "combine_compatible")
    m = rm.size
    for a, b in ((rm, rn), (rn, rm)):
        for ys in itertools.product(range(m), repeat=a.arity - 1):
            tr = a.translation(ys)
            for xs in itertools.product(range(m), repeat=b.arity):
                if tr[b.apply(xs)] != b.apply(tuple(tr[x] for x in xs)):
                    raise PreconditionError(
                        "translation is not an automorphism of the other rack",
                        {"translation": list(ys), "tuple": list(xs)},
                    )

    def op(*args):
        head = rm.apply(args[: rm.arity])
        return rn.apply((head,) + args[rm.arity :])

    out = from_function(m, rm.arity + rn.arity - 1, op, certified=True)
    if recheck:
        _recheck(out)
    return out


def rack_from_nrack(t: FiniteNRack, carrier_cap: int = CARRIER_CAP) -> FiniteNRack:
    """The induced rack on X^(n-1):
    (x_1..x_{n-1}) <| (y_1..y_{n-1}) = (<x_i, y_1..y_{n-1}>)_i."""
    _require_certified(t, "rack_from_nrack")
    m, n = t.size, t.arity
    carrier = m ** (n - 1)
    if carrier > carrier_cap:
        raise CapExceededError(f"carrier {carrier} exceeds the cap {carrier_cap}")

    def flat(args):
        idx = 0
        for a in args:
            idx = idx * m + a
        return idx

    tuples = list(itertools.product(range(m), repeat=n - 1))
    table = [0] * (carrier * carrier)
    for xi, xs in enumerate(tuples):
        for yi, ys in enumerate(tuples):
            tr = t.translation(ys)
            table[xi * carrier + yi] = flat(tuple(tr[x] for x in xs))
    return FiniteNRack(carrier, 2, tuple(table), RIGHT, True)


def krack_from_power(t: FiniteNRack, k: int, recheck: bool = False) -> FiniteNRack:
    """Feed an ((n-1)(k-1)+1)-ary rack blockwise to get a k-rack on X^(n-1).

    Block i of the output operation is
    <x_{1,i}, x_{2,1}, ..., x_{2,n-1}, ..., x_{k,1}, ..., x_{k,n-1}>.
    With k = 2 this is rack_from_nrack.
    """
    _require_certified(t, "krack_from_power")
    if k < 2 or (t.arity - 1) % (k - 1) != 0:
        raise SchemaError(f"arity {t.arity} is not of the form (n-1)(k-1)+1 for k={k}")
    width = (t.arity - 1) // (k - 1)  # n-1
    m = t.size
    carrier = m**width
    if carrier**k > CARRIER_CAP:
        raise CapExceededError("output table would exceed the carrier cap")
    tuples = list(itertools.product(range(m), repeat=width))

    def op(*blocks):
        tail = ()
        for b in blocks[1:]:
            tail += tuples[b]
        head = tuples[blocks[0]]
        return flat_tuple(tuple(t.apply((h,) + tail) for h in head))

    def flat_tuple(args):
        idx = 0
        for a in args:
            idx = idx * m + a
        return idx

    out = from_function(carrier, k, op, certified=True)
    if recheck:
        _recheck(out)
    return out


def _recheck(t: FiniteNRack):
    report = check_nrack(t)
    if not report.passed:
        raise VerdictDisagreementError("a theorem-certified table failed its recheck", report.witness)


def homomorphism_check(a: FiniteNRack, b: FiniteNRack, phi) -> bool:
    """Whether the point map phi: X_a -> X_b preserves the operations."""
    if a.arity != b.arity:
        raise SchemaError("arity mismatch")
    for xs in itertools.product(range(a.size), repeat=a.arity):
        if phi[a.apply(xs)] != b.apply(tuple(phi[x] for x in xs)):
            return False
    return True


# -- vector n-racks from n-Leibniz algebras ----------------------------


@dataclass(frozen=True)
class VectorNRack:
    """The n-rack <x_1..x_n> = exp(ad_{x_2..x_n})(x_1) on the space of a
    certified n-Leibniz algebra.

    Universal validation would need symbolic coefficients, so
    self-distributivity is certified on a deterministic sample grid:
    all basis vectors plus all sums of two distinct basis vectors.
    """

    algebra: NLeibnizAlgebra
    mode: str = scalars.EXACT
    _exp_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def sample_grid(self):
        one = scalars.one(self.mode)
        d = self.algebra.dim
        grid = [{i: one} for i in range(d)]
        grid += [{i: one, j: one} for i in range(d) for j in range(i + 1, d)]
        return grid

    def _exp_at(self, ys):
        key = tuple(tuple(sorted(y.items())) for y in ys)
        hit = self._exp_cache.get(key)
        if hit is None:
            hit = exp_ad(self.algebra, ys, self.mode)
            self._exp_cache[key] = hit
        return hit

    def op(self, vectors):
        """<x_1, ..., x_n> on sparse coefficient vectors."""
        if len(vectors) != self.algebra.arity:
            raise SchemaError("wrong number of arguments")
        return self._exp_at(vectors[1:]).apply(vectors[0])

    def translation_inverse(self, ys):
        """exp(-ad_{y_1..y_{n-1}}), the inverse right translation (exact mode)."""
        return tensor.exp_nilpotent(ad(self.algebra, ys).scale(-1))


def nrack_from_nleibniz(a: NLeibnizAlgebra, mode=None) -> VectorNRack:
    """Build and grid-validate the vector n-rack of a certified algebra.

    Exact mode requires every basis adjoint to be nilpotent.
    """
    _require_certified_algebra(a)
    mode = mode or a.mode
    if mode == scalars.EXACT:
        for key in itertools.product(range(a.dim), repeat=a.arity - 1):
            m = ad(a, [{i: scalars.one(a.mode)} for i in key])
            if not tensor.is_nilpotent(m):
                raise NotNilpotentError(f"basis adjoint at {key} is not nilpotent")
    rack = VectorNRack(a, mode)
    report = validate_vector_nrack(rack)
    if not report.passed:
        raise VerdictDisagreementError(
            "vector n-rack failed self-distributivity on the sample grid", report.witness
        )
    return rack


def _require_certified_algebra(a: NLeibnizAlgebra):
    if not a.certified:
        raise NotCertifiedError("needs a certified n-Leibniz algebra")


def validate_vector_nrack(rack: VectorNRack) -> VerificationReport:
    """Self-distributivity of the vector n-rack at every sample-grid tuple."""
    rb = ReportBuilder("vector-nrack")
    a = rack.algebra
    n = a.arity
    grid = rack.sample_grid()
    ok, witness = True, None
    skipped = 0
    for tpl in itertools.product(range(len(grid)), repeat=2 * n - 1):
        xs = [grid[i] for i in tpl[:n]]
        ys = [grid[i] for i in tpl[n:]]
        try:
            lhs = rack.op([rack.op(xs)] + ys)
            rhs = rack.op([rack.op([x] + ys) for x in xs])
        except NotNilpotentError:
            skipped += 1
            continue
        if not vec_equal(lhs, rhs, rack.mode):
            ok, witness = False, {"grid-tuple": list(tpl)}
            break
    rb.record("self-distributivity-on-grid", ok, witness)
    if skipped:
        rb.skip("grid-points", f"{skipped} tuples skipped (non-nilpotent adjoint)")
    return rb.build()


def verify_tensor_embedding(a: NLeibnizAlgebra, mode=None) -> VerificationReport:
    """Check that the pure-tensor map (x_1..x_{n-1}) -> x_1 (x) ... (x) x_{n-1}
    carries the componentwise vector n-rack action to the rack of the
    induced Leibniz bracket on the tensor power, on the sample grid."""
    _require_certified_algebra(a)
    mode = mode or a.mode
    rack = VectorNRack(a, mode)
    fund = fundamental_leibniz(a)
    shp = tensor.power_shape(a.dim, a.arity - 1)
    rb = ReportBuilder("tensor-embedding")
    grid = rack.sample_grid()
    width = a.arity - 1

    def tensor_vec(vecs):
        prod = {(): scalars.one(mode)}
        for v in vecs:
            new = {}
            for key, c in prod.items():
                for i, x in v.items():
                    new[key + (i,)] = c * x
            prod = new
        return {shp.flat(k): v for k, v in prod.items()}

    fund_exp_cache = {}
    ok, witness = True, None
    for xi in itertools.product(range(len(grid)), repeat=width):
        xs = [grid[i] for i in xi]
        for yi in itertools.product(range(len(grid)), repeat=width):
            ys = [grid[i] for i in yi]
            try:
                moved = [rack._exp_at(ys).apply(x) for x in xs]
                lhs = tensor_vec(moved)
                key = yi
                e = fund_exp_cache.get(key)
                if e is None:
                    phi_y = tensor_vec(ys)
                    e = tensor.exp_nilpotent(ad(fund, [phi_y])) if mode == scalars.EXACT else tensor.exp_float(ad(fund, [phi_y]).to_float())
                    fund_exp_cache[key] = e
                rhs = e.apply(tensor_vec(xs))
            except NotNilpotentError:
                continue
            if not vec_equal(lhs, rhs, mode):
                ok, witness = False, {"x": list(xi), "y": list(yi)}
                break
        if not ok:
            break
    rb.record("embedding-homomorphism", ok, witness)
    return rb.build()
