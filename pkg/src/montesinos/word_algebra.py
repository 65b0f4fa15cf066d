"""
The free-semigroup algebra of +-1 words used as oriented train-track
weights, together with a small exhaustive solver for the finite systems
of word equations that arise when gluing orientation patterns of
candidate-surface sheets.

A word is a nonempty tuple over {+1, -1}.  The three basic operators are
the cyclic shift rho, the reversal J and letterwise negation; sigma is
the letter sum.  Every relation handled by the solver has the normal
form  lhs = eps * rho^k (J^delta (rhs))  with eps in {+1,-1} and delta
in {0,1}; arbitrary compositions of the basic operators reduce to this
form because rho o J = J o rho^-1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

Word = tuple  # tuple of +1/-1 entries


def _check_word(w: Word) -> Word:
    if len(w) == 0:
        raise ValueError("words are nonempty")
    if any(x not in (1, -1) for x in w):
        raise ValueError("word letters must be +1 or -1")
    return tuple(w)


def rho_pow(w: Word, k: int) -> Word:
    """Cyclic left rotation by k (k may be negative or exceed len(w))."""
    w = _check_word(w)
    k %= len(w)
    return w[k:] + w[:k]


def J(w: Word) -> Word:
    """Reversal."""
    return tuple(reversed(_check_word(w)))


def negate(w: Word) -> Word:
    """Letterwise negation."""
    return tuple(-x for x in _check_word(w))


def concat(w1: Word, w2: Word) -> Word:
    """Concatenation of the two words."""
    return _check_word(w1) + _check_word(w2)


def sigma(w: Word) -> int:
    """Letter sum."""
    return sum(_check_word(w))


def minimal_period(w: Word) -> int:
    """Least t >= 1 with rho^t(w) = w; equals len(w) whenever sigma = +-1."""
    w = _check_word(w)
    for t in range(1, len(w) + 1):
        if len(w) % t == 0 and rho_pow(w, t) == w:
            return t
    raise AssertionError("unreachable: rho^len is the identity")


def all_words(length: int):
    """All 2^length words of the given length."""
    return (tuple(w) for w in itertools.product((1, -1), repeat=length))


@dataclass(frozen=True)
class Transform:
    """The map x -> eps * rho^shift (J^delta (x))."""

    eps: int = 1
    shift: int = 0
    reversed: bool = False

    def apply(self, w: Word) -> Word:
        out = J(w) if self.reversed else w
        out = rho_pow(out, self.shift)
        return negate(out) if self.eps < 0 else out

    def compose(self, other: "Transform") -> "Transform":
        """self o other, renormalized (uses rho o J = J o rho^-1)."""
        eps = self.eps * other.eps
        if not self.reversed:
            return Transform(eps, self.shift + other.shift, other.reversed)
        return Transform(eps, self.shift - other.shift, not other.reversed)

    def invert(self) -> "Transform":
        if self.reversed:
            return Transform(self.eps, self.shift, True)
        return Transform(self.eps, -self.shift, False)


@dataclass(frozen=True)
class WordConstraint:
    """Relation lhs = eps * rho^shift (J^delta (rhs)) between variables."""

    lhs_var: str
    rhs_var: str
    shift: int = 0
    reversed: bool = False
    negated: bool = False

    @property
    def transform(self) -> Transform:
        return Transform(-1 if self.negated else 1, self.shift, self.reversed)


class SystemSizeError(ValueError):
    """The exhaustive search space is too large to enumerate."""


def _structural_ok(w: Word, r: int, s: int) -> bool:
    # w = c (+) d (+) -J(c) with |c| = max(r, s): the first k letters are
    # the negated reversal of the last k.
    k = max(r, s)
    if 2 * k > len(w):
        return False
    return all(w[i] == -w[len(w) - 1 - i] for i in range(k))


def solve_word_system(variables, length, constraints, structural=None, *,
                      sigma_filter=True, max_work=1 << 24):
    """
    Exhaustively solve a system of word equations.

    variables    -- nonempty list of variable names
    length       -- odd word length shared by all variables
    constraints  -- iterable of WordConstraint
    structural   -- optional dict var -> (r, s) enforcing that the first
                    max(r, s) letters equal the negated reversed last ones
    sigma_filter -- when True (the default), keep only assignments where
                    every variable has letter sum +-1, the defining
                    property of the geometric weights.  The unfiltered
                    count (sigma_filter=False) is the orientation-pattern
                    count: it equals 2^(number of surface components)
                    whenever the filtered set is nonempty, i.e. whenever
                    the glued surface is orientable.

    Returns the list of satisfying assignments (dicts var -> word).
    """
    variables = list(variables)
    constraints = list(constraints)
    if not variables:
        raise ValueError("empty variable list")
    if length < 1 or length % 2 == 0:
        raise ValueError("length must be odd and >= 1")
    structural = dict(structural or {})
    for v in structural:
        if v not in variables:
            raise ValueError(f"structural constraint on unknown variable {v}")

    # Group variables into constraint-graph components and express each
    # variable as a transform of its component root; non-tree relations
    # are re-verified on candidate assignments below.
    adj: dict[str, list[tuple[str, Transform]]] = {v: [] for v in variables}
    for c in constraints:
        if c.lhs_var not in adj or c.rhs_var not in adj:
            raise ValueError(f"constraint on unknown variable: {c}")
        t = c.transform
        adj[c.rhs_var].append((c.lhs_var, t))            # lhs = t(rhs)
        adj[c.lhs_var].append((c.rhs_var, t.invert()))   # rhs = t^-1(lhs)

    expr: dict[str, tuple[str, Transform]] = {}  # var -> (root, map)
    roots: list[str] = []
    for v in variables:
        if v in expr:
            continue
        roots.append(v)
        expr[v] = (v, Transform())
        stack = [v]
        while stack:
            u = stack.pop()
            _, t_u = expr[u]
            for w_var, t in adj[u]:
                if w_var not in expr:
                    expr[w_var] = (v, t.compose(t_u))
                    stack.append(w_var)

    if (1 << length) ** len(roots) > max_work:
        raise SystemSizeError(
            f"{len(roots)} free variables of length {length} exceed budget")

    words = list(all_words(length))
    solutions = []
    for combo in itertools.product(words, repeat=len(roots)):
        root_val = dict(zip(roots, combo))
        assignment = {v: t.apply(root_val[root])
                      for v, (root, t) in expr.items()}
        if any(assignment[c.lhs_var] != c.transform.apply(assignment[c.rhs_var])
               for c in constraints):
            continue
        if sigma_filter and any(sigma(w) not in (1, -1)
                                for w in assignment.values()):
            continue
        if any(not _structural_ok(assignment[v], r, s)
               for v, (r, s) in structural.items()):
            continue
        solutions.append(assignment)
    return solutions
