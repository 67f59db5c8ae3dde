"""Set-theoretical solutions of the braid relation and its degree-n analogue.

A set map s: X^n -> X^n satisfies the right degree-n relation when,
writing s_i for s applied at offset i inside an (2n-1)-tuple,

    s_0, s_{n-1}, s_{n-2}, ..., s_1, s_0   (applied first to last)

agrees with

    s_{n-1}, s_{n-2}, ..., s_1, s_0, s_{n-1}

on every tuple; the left variant mirrors the interior order.  A
bijective map satisfying the relation is an n-solution.  Bijectivity is
profiled, never assumed: some natural examples satisfy the relation
without being bijective, and the profile records both facts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceededError, PreconditionError, SchemaError, VerdictDisagreementError
from .nrack import FiniteNRack, check_nrack

#: smallest k <= this with s^k = Id is reported as the involutive order
INVOLUTIVE_ORDER_CAP = 24


@dataclass(frozen=True)
class SetNMap:
    """A total map X^n -> X^n, stored as output tuples indexed by flat input."""

    size: int
    arity: int
    outputs: tuple
    side: str = "right"

    def __post_init__(self):
        m, n = self.size, self.arity
        if m < 1 or n < 2:
            raise SchemaError("need size >= 1 and arity >= 2")
        if self.side not in ("right", "left"):
            raise SchemaError("side must be 'right' or 'left'")
        outs = tuple(tuple(int(v) for v in out) for out in self.outputs)
        if len(outs) != m**n:
            raise SchemaError(f"map must be total: expected {m**n} rows, got {len(outs)}")
        for out in outs:
            if len(out) != n or any(not 0 <= v < m for v in out):
                raise SchemaError(f"bad output tuple {out}")
        object.__setattr__(self, "outputs", outs)

    def index(self, args) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return idx

    def apply(self, args) -> tuple:
        return self.outputs[self.index(args)]

    def is_bijective(self) -> bool:
        return len(set(self.outputs)) == len(self.outputs)

    def mirror(self) -> "SetNMap":
        """Conjugate by argument reversal; swaps the right and left relations."""
        m, n = self.size, self.arity
        outs = [None] * (m**n)
        for args in itertools.product(range(m), repeat=n):
            outs[self.index(args)] = tuple(reversed(self.apply(tuple(reversed(args)))))
        return SetNMap(m, n, tuple(outs), "left" if self.side == "right" else "right")


def from_function(size: int, arity: int, fn, side="right") -> SetNMap:
    outs = [tuple(fn(*args)) for args in itertools.product(range(size), repeat=arity)]
    return SetNMap(size, arity, tuple(outs), side)


def flip_map(size: int, arity: int) -> SetNMap:
    """s(x_1, ..., x_n) = (x_2, ..., x_n, x_1)."""
    return from_function(size, arity, lambda *a: a[1:] + (a[0],))


@dataclass(frozen=True)
class SolutionProfile:
    """Everything the checker can tell about one set map."""

    is_bijective: bool
    satisfies_right: bool
    satisfies_left: bool
    nondegenerate: object = None  # {"left","right","middle"} -> bool, for arity 3 only
    involutive_order: object = None  # smallest k <= cap with s^k = Id, else None
    right_witness: object = None
    left_witness: object = None

    @property
    def is_right_solution(self) -> bool:
        return self.satisfies_right and self.is_bijective

    @property
    def is_left_solution(self) -> bool:
        return self.satisfies_left and self.is_bijective

    def to_json(self):
        out = {
            "is_bijective": self.is_bijective,
            "satisfies_right": self.satisfies_right,
            "satisfies_left": self.satisfies_left,
            "nondegenerate": self.nondegenerate,
            "involutive_order": self.involutive_order,
        }
        if self.right_witness is not None:
            out["right_witness"] = self.right_witness
        if self.left_witness is not None:
            out["left_witness"] = self.left_witness
        return out


def _apply_at(s: SetNMap, tup: tuple, offset: int) -> tuple:
    n = s.arity
    return tup[:offset] + s.apply(tup[offset : offset + n]) + tup[offset + n :]


def _chain_orders(n: int, side: str):
    if side == "right":
        lhs = [0] + list(range(n - 1, 0, -1)) + [0]
        rhs = list(range(n - 1, -1, -1)) + [n - 1]
    else:
        lhs = [0] + list(range(1, n)) + [0]
        rhs = [n - 1] + list(range(n - 1)) + [n - 1]
    return lhs, rhs


def _satisfies(s: SetNMap, side: str):
    """(verdict, first witness tuple) for the chosen relation."""
    m, n = s.size, s.arity
    lhs_order, rhs_order = _chain_orders(n, side)
    for tup in itertools.product(range(m), repeat=2 * n - 1):
        a = tup
        for off in lhs_order:
            a = _apply_at(s, a, off)
        b = tup
        for off in rhs_order:
            b = _apply_at(s, b, off)
        if a != b:
            return False, {"tuple": list(tup), "lhs": list(a), "rhs": list(b)}
    return True, None


def involutive_order(s: SetNMap, cap: int = INVOLUTIVE_ORDER_CAP):
    """Smallest k <= cap with s^k the identity, or None."""
    m, n = s.size, s.arity
    ident = tuple(itertools.product(range(m), repeat=n))
    current = s.outputs
    for k in range(1, cap + 1):
        if current == ident:
            return k
        current = tuple(s.apply(t) for t in current)
    return None


def classify_3solution(s: SetNMap) -> SolutionProfile:
    """Profile a ternary map, including the component families of
    s(x,y,z) = (sigma_{x,z}(y), tau_{x,y}(z), eta_{y,z}(x)):
    middle/left/right nondegeneracy is bijectivity of sigma/tau/eta."""
    if s.arity != 3:
        raise SchemaError("classification of components needs arity 3")
    return check_set_nsolution(s)


def check_set_nsolution(s: SetNMap) -> SolutionProfile:
    """Evaluate both relations on all m^(2n-1) tuples and fill the profile."""
    right_ok, right_wit = _satisfies(s, "right")
    left_ok, left_wit = _satisfies(s, "left")
    nondeg = None
    if s.arity == 3:
        m = s.size
        families = {"middle": True, "left": True, "right": True}
        for a, b in itertools.product(range(m), repeat=2):
            sigma = {s.apply((a, y, b))[0] for y in range(m)}
            tau = {s.apply((a, b, z))[1] for z in range(m)}
            eta = {s.apply((x, a, b))[2] for x in range(m)}
            if len(sigma) != m:
                families["middle"] = False
            if len(tau) != m:
                families["left"] = False
            if len(eta) != m:
                families["right"] = False
        nondeg = families
    return SolutionProfile(
        is_bijective=s.is_bijective(),
        satisfies_right=right_ok,
        satisfies_left=left_ok,
        nondegenerate=nondeg,
        involutive_order=involutive_order(s),
        right_witness=right_wit,
        left_witness=left_wit,
    )


# -- correspondences with n-racks ---------------------------------------


def solution_from_nrack(t: FiniteNRack) -> SetNMap:
    """s(x_1..x_n) = (x_2, ..., x_n, <x_1..x_n>) for a right table, or
    s(x_1..x_n) = (<x_1..x_n>, x_1, ..., x_{n-1}) for a left one.

    Works on raw tables; the relation verdict of s must coincide with
    the n-rack verdict of the table, and a mismatch raises.
    """
    if t.side == "right":
        s = from_function(t.size, t.arity, lambda *a: a[1:] + (t.apply(a),), side="right")
        verdict = check_set_nsolution(s)
        s_ok = verdict.satisfies_right and verdict.is_bijective
    else:
        s = from_function(t.size, t.arity, lambda *a: (t.apply(a),) + a[:-1], side="left")
        verdict = check_set_nsolution(s)
        s_ok = verdict.satisfies_left and verdict.is_bijective
    rack_ok = check_nrack(t).passed
    if s_ok != rack_ok:
        raise VerdictDisagreementError(
            "the induced map's solution verdict disagrees with the table's n-rack verdict"
        )
    return s


def nsolution_from_solution(r: SetNMap, n: int) -> SetNMap:
    """Lift a binary solution to degree n on the same set:
    s_n = r at offset 0, then offset 1, ..., then offset n-2."""
    if r.arity != 2:
        raise SchemaError("nsolution_from_solution starts from a binary map")
    profile = check_set_nsolution(r)
    if not (profile.satisfies_right and profile.is_bijective):
        raise PreconditionError("input is not a set-theoretical solution", profile.to_json())
    if n == 2:
        return r

    def lifted(*args):
        tup = args
        for off in range(n - 1):
            tup = _apply_at(r, tup, off)
        return tup

    return from_function(r.size, n, lifted)


def solution_from_nsolution(s: SetNMap) -> SetNMap:
    """Descend a degree-n solution to a binary solution on X^(n-1):
    s applied at offsets n-2, n-3, ..., 0 of a (2n-2)-tuple, read blockwise."""
    profile = check_set_nsolution(s)
    if not (profile.satisfies_right and profile.is_bijective):
        raise PreconditionError("input is not a set-theoretical n-solution", profile.to_json())
    m, n = s.size, s.arity
    carrier = m ** (n - 1)
    blocks = list(itertools.product(range(m), repeat=n - 1))
    flat = {b: i for i, b in enumerate(blocks)}

    def descended(u, v):
        tup = blocks[u] + blocks[v]
        for off in range(n - 2, -1, -1):
            tup = _apply_at(s, tup, off)
        return flat[tup[: n - 1]], flat[tup[n - 1 :]]

    return from_function(carrier, 2, descended)


# -- exhaustive enumeration ---------------------------------------------


def _check_enumeration_cap(m: int, n: int):
    if n == 2:
        if m > 4:
            raise CapExceededError("binary enumeration is capped at 4 elements")
    elif n == 3:
        if m > 3:
            raise CapExceededError("ternary enumeration is capped at 3 elements")
    else:
        raise CapExceededError("enumeration is capped at arity 3")


def all_tables(m: int, n: int):
    """Every total table X^n -> X in lexicographic order; mind the size."""
    for values in itertools.product(range(m), repeat=m**n):
        yield FiniteNRack(m, n, values)


def enumerate_tables(m: int, n: int, table_filter: str, dump: bool = False):
    """Census of all tables passing the filter, in lexicographic order.

    Filters:
      nshelf    self-distributivity only
      nrack     self-distributivity plus bijective translations
      nsolution the induced map (x_2..x_n, <x>) satisfies the right
                relation and is bijective (checked directly on the map,
                independent of the rack axioms)
    """
    if table_filter not in ("nshelf", "nrack", "nsolution"):
        raise SchemaError(f"unknown filter {table_filter!r}")
    _check_enumeration_cap(m, n)
    if table_filter == "nsolution":
        found = list(_enumerate_nsolution(m, n))
    else:
        found = list(_enumerate_distributive(m, n, bijective=table_filter == "nrack"))
    census = {"filter": table_filter, "m": m, "n": n, "count": len(found)}
    if dump:
        census["tables"] = [list(t.table) for t in found]
    return census, found


def _columns_meta(m: int, n: int):
    contexts = list(itertools.product(range(m), repeat=n - 1))
    ctx_index = {c: i for i, c in enumerate(contexts)}
    return contexts, ctx_index


def _enumerate_distributive(m: int, n: int, bijective: bool):
    """DFS over translation columns with incremental self-distributivity cuts.

    A distributivity instance (xs, ys) needs the columns (x_2..x_n), ys,
    and (t_ys(x_2)..t_ys(x_n)); it is checked as soon as its last needed
    column is assigned.
    """
    contexts, ctx_index = _columns_meta(m, n)
    ncols = len(contexts)
    if bijective:
        candidates = [p for p in itertools.product(range(m), repeat=m) if len(set(p)) == m]
    else:
        candidates = list(itertools.product(range(m), repeat=m))
    columns = [None] * ncols
    xs_all = list(itertools.product(range(m), repeat=n))

    def instance_ok(xs, ys_idx):
        c1 = ctx_index[xs[1:]]
        ty = columns[ys_idx]
        moved = tuple(ty[x] for x in xs[1:])
        c3 = ctx_index[moved]
        if columns[c3] is None or columns[c1] is None:
            return True, False  # not yet checkable
        inner = columns[c1][xs[0]]
        lhs = ty[inner]
        rhs = columns[c3][ty[xs[0]]]
        return lhs == rhs, True

    def newly_checkable_ok(k):
        for ys_idx in range(k + 1):
            if columns[ys_idx] is None:
                continue
            for xs in xs_all:
                c1 = ctx_index[xs[1:]]
                if c1 > k or columns[c1] is None:
                    continue
                ty = columns[ys_idx]
                c3 = ctx_index[tuple(ty[x] for x in xs[1:])]
                if c3 > k:
                    continue
                if max(c1, ys_idx, c3) != k:
                    continue  # checked at an earlier depth
                inner = columns[c1][xs[0]]
                if ty[inner] != columns[c3][ty[xs[0]]]:
                    return False
        return True

    def dfs(k):
        if k == ncols:
            # flat table in storage order (first argument most significant)
            values = tuple(columns[ctx_index[xs[1:]]][xs[0]] for xs in xs_all)
            yield FiniteNRack(m, n, values)
            return
        for cand in candidates:
            columns[k] = cand
            if newly_checkable_ok(k):
                yield from dfs(k + 1)
            columns[k] = None

    yield from dfs(0)


def _enumerate_nsolution(m: int, n: int):
    """DFS over translation columns with incremental relation cuts.

    Bijectivity of the induced map s(x) = (x_2..x_n, <x>) forces every
    column to be a permutation (elementary injectivity in the first
    argument), so candidates are permutations.  Each relation instance
    is simulated lazily: applying s at an offset needs the column of the
    trailing n-1 entries, so an instance is checked at the first depth
    where every application it performs has its column assigned.
    """
    contexts, ctx_index = _columns_meta(m, n)
    ncols = len(contexts)
    perms = list(itertools.permutations(range(m)))
    columns = [None] * ncols
    lhs_order, rhs_order = _chain_orders(n, "right")
    base_tuples = list(itertools.product(range(m), repeat=2 * n - 1))
    xs_all = list(itertools.product(range(m), repeat=n))

    def simulate(tup, order, depth):
        """(final tuple, max column index used) or (None, None) if a needed
        column is not yet assigned."""
        used = -1
        for off in order:
            args = tup[off : off + n]
            ci = ctx_index[args[1:]]
            col = columns[ci]
            if col is None:
                return None, None
            used = max(used, ci)
            tup = tup[:off] + args[1:] + (col[args[0]],) + tup[off + n :]
        return tup, used

    def newly_checkable_ok(depth):
        for tup in base_tuples:
            lhs, lu = simulate(tup, lhs_order, depth)
            if lhs is None:
                continue
            rhs, ru = simulate(tup, rhs_order, depth)
            if rhs is None:
                continue
            if max(lu, ru) != depth:
                continue  # fully determined earlier, already checked
            if lhs != rhs:
                return False
        return True

    def dfs(k):
        if k == ncols:
            values = tuple(columns[ctx_index[xs[1:]]][xs[0]] for xs in xs_all)
            yield FiniteNRack(m, n, values)
            return
        for cand in perms:
            columns[k] = cand
            if newly_checkable_ok(k):
                yield from dfs(k + 1)
            columns[k] = None

    yield from dfs(0)
