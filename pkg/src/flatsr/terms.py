"""Words, terms and identities over ai-semirings, and exhaustive checking.

A term is a finite sum of words.  Addition is commutative and idempotent,
so a term is stored as the sorted set of its words; multiplication is not
commutative, so each word keeps its letter order.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import DEFAULT_BOUNDS
from .errors import InputError, ResourceError
from .semiring import FiniteSemiring

Word = tuple[int, ...]

# largest block of assignments evaluated in one numpy pass
_CHUNK = 1 << 20


@dataclass(frozen=True)
class Term:
    words: tuple[Word, ...]

    def __post_init__(self):
        words = tuple(sorted({tuple(int(v) for v in w) for w in self.words}))
        if not words:
            raise InputError("a term needs at least one word")
        if any(len(w) == 0 for w in words):
            raise InputError("words must be nonempty")
        object.__setattr__(self, "words", words)

    def variables(self) -> set[int]:
        return {v for w in self.words for v in w}


def _first_occurrence(lhs: Sequence[Word], rhs: Sequence[Word]) -> list[int]:
    order = []
    for w in itertools.chain(lhs, rhs):
        for v in w:
            if v not in order:
                order.append(v)
    return order


def _canonical(lhs, rhs, names):
    """Renumber variables by first occurrence in the printed (sorted) form.

    Re-sorting after a renumbering can change the first-occurrence order, so
    the step is iterated; should it cycle, the least state of the cycle is
    taken, which keeps the result idempotent.
    """
    state = (tuple(sorted(set(lhs))), tuple(sorted(set(rhs))), tuple(names))
    seen: list = []
    while state not in seen:
        seen.append(state)
        l, r, nm = state
        order = _first_occurrence(l, r)
        remap = {old: new for new, old in enumerate(order)}
        l2 = tuple(sorted({tuple(remap[v] for v in w) for w in l}))
        r2 = tuple(sorted({tuple(remap[v] for v in w) for w in r}))
        state = (l2, r2, tuple(nm[old] for old in order))
    cycle = seen[seen.index(state):]
    return min(cycle)


@dataclass(frozen=True)
class Identity:
    """``lhs ≈ rhs``; variable ``i`` is printed as ``names[i]``.

    Variable ids are canonical: they follow first occurrence in the printed
    form, so ``parse_identity(str(e)) == e``.
    """

    lhs: Term
    rhs: Term
    names: tuple[str, ...]

    def __post_init__(self):
        used = self.lhs.variables() | self.rhs.variables()
        if len(self.names) < (max(used) + 1):
            raise InputError("every variable id needs a name")
        if len(set(self.names)) != len(self.names):
            raise InputError("variable names must be distinct")
        l, r, names = _canonical(self.lhs.words, self.rhs.words, self.names)
        object.__setattr__(self, "lhs", Term(l))
        object.__setattr__(self, "rhs", Term(r))
        object.__setattr__(self, "names", names)

    @property
    def var_count(self) -> int:
        return len(self.names)

    def __str__(self):
        return f"{format_term(self.lhs, self.names)} ≈ {format_term(self.rhs, self.names)}"


def make_identity(lhs: Iterable[Sequence[str]], rhs: Iterable[Sequence[str]]) -> Identity:
    """Build an identity from words spelled as sequences of variable names."""
    lhs, rhs = [tuple(w) for w in lhs], [tuple(w) for w in rhs]
    names: list[str] = []
    for w in itertools.chain(lhs, rhs):
        for v in w:
            if v not in names:
                names.append(v)
    idx = {v: i for i, v in enumerate(names)}
    return Identity(
        Term(tuple(tuple(idx[v] for v in w) for w in lhs)),
        Term(tuple(tuple(idx[v] for v in w) for w in rhs)),
        tuple(names),
    )


def format_word(w: Word, names: Sequence[str]) -> str:
    parts = []
    for v, run in itertools.groupby(w):
        k = len(list(run))
        parts.append(names[v] if k == 1 else f"{names[v]}^{k}")
    return " ".join(parts)


def format_term(t: Term, names: Sequence[str]) -> str:
    return " + ".join(format_word(w, names) for w in t.words)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9]*)|(?P<uint>[0-9]+)|(?P<op>[+^≈=]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise InputError(f"unexpected character {text[col]!r} at position {col}")
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_identity(text: str) -> Identity:
    """Parse ``term (≈|=) term``; factors are juxtaposed identifiers with
    optional ``^k`` exponents, summands are joined by ``+``."""
    tokens = _tokenize(text)
    i = 0
    names: list[str] = []

    def peek():
        return tokens[i]

    def var_id(name):
        if name not in names:
            names.append(name)
        return names.index(name)

    def parse_product():
        nonlocal i
        kind, val, pos = peek()
        if kind != "ident":
            raise InputError(f"expected a variable at position {pos}, got {val or 'end of input'!r}")
        word = []
        while peek()[0] == "ident":
            v = var_id(peek()[1])
            i += 1
            power = 1
            if peek()[1] == "^":
                i += 1
                kind, val, pos = peek()
                if kind != "uint" or int(val) < 1:
                    raise InputError(f"expected a positive exponent at position {pos}")
                power = int(val)
                i += 1
            word.extend([v] * power)
        return tuple(word)

    def parse_term():
        nonlocal i
        words = [parse_product()]
        while peek()[1] == "+":
            i += 1
            words.append(parse_product())
        return words

    lhs = parse_term()
    kind, val, pos = peek()
    if val not in ("≈", "="):
        raise InputError(f"expected '≈' or '=' at position {pos}, got {val or 'end of input'!r}")
    i += 1
    if peek()[0] == "end":
        raise InputError(f"empty right-hand side at position {peek()[2]}")
    rhs = parse_term()
    kind, val, pos = peek()
    if kind != "end":
        raise InputError(f"unexpected {val!r} at position {pos}")
    return Identity(Term(tuple(lhs)), Term(tuple(rhs)), tuple(names))


# ---------------------------------------------------------------------------
# evaluation


def eval_word(w: Word, S: FiniteSemiring, a: Mapping[int, int] | Sequence[int]) -> int:
    m = S.mul
    try:
        r = a[w[0]]
        for v in w[1:]:
            r = m[r][a[v]]
    except (KeyError, IndexError) as exc:
        raise InputError(f"variable {exc.args[0]} is unassigned") from None
    return r


def eval_term(t: Term, S: FiniteSemiring, a: Mapping[int, int] | Sequence[int]) -> int:
    """Value of ``t`` in ``S`` under the assignment ``a`` (variable id -> element)."""
    vals = [eval_word(w, S, a) for w in t.words]
    total = vals[0]
    for v in vals[1:]:
        total = S.add[total][v]
    return total


def _term_array(t: Term, S: FiniteSemiring, X: list) -> np.ndarray:
    M, A = S.M, S.A
    total = None
    for w in t.words:
        r = X[w[0]]
        for v in w[1:]:
            r = M[r, X[v]]
        total = r if total is None else A[total, r]
    return total


@dataclass(frozen=True)
class Verdict:
    holds: bool
    counterexample: tuple[int, ...] | None = None

    def __bool__(self):
        return self.holds

    def describe(self, S: FiniteSemiring, e: Identity) -> str:
        if self.holds:
            return "holds"
        pairs = ", ".join(f"{e.names[i]}={S.labels[v]}" for i, v in enumerate(self.counterexample))
        lhs = eval_term(e.lhs, S, self.counterexample)
        rhs = eval_term(e.rhs, S, self.counterexample)
        return f"fails at {pairs}: lhs={S.labels[lhs]}, rhs={S.labels[rhs]}"


def check_budget(order: int, nvars: int, max_vars: int, budget: int) -> int:
    if nvars > max_vars:
        raise ResourceError(f"identity has {nvars} variables, limit is {max_vars}", nvars, max_vars)
    required = order**nvars
    if required > budget:
        raise ResourceError(
            f"exhaustive check needs {required} evaluations, budget is {budget}", required, budget
        )
    return required


def satisfies(
    S: FiniteSemiring,
    e: Identity,
    max_vars: int = DEFAULT_BOUNDS.max_vars,
    budget: int = DEFAULT_BOUNDS.eval_budget,
) -> Verdict:
    """Check ``e`` on every assignment, in lexicographic order.

    Returns the least failing assignment when there is one.  Blocks of
    assignments are evaluated with numpy table lookups; the leading
    variables are enumerated in Python when a block would be too large.
    """
    n, k = S.order, e.var_count
    check_budget(n, k, max_vars, budget)
    inner = 0
    while inner < k and n ** (inner + 1) <= _CHUNK:
        inner += 1
    outer = k - inner
    shape = (n,) * inner
    X: list = [None] * k
    for pos in range(inner):
        ax = [1] * inner
        ax[pos] = n
        X[outer + pos] = np.arange(n, dtype=np.int32).reshape(ax)
    for prefix in itertools.product(range(n), repeat=outer):
        for v, val in enumerate(prefix):
            X[v] = np.int32(val)
        diff = np.broadcast_to(_term_array(e.lhs, S, X) != _term_array(e.rhs, S, X), shape)
        if diff.any():
            flat = int(np.argmax(diff.ravel()))
            tail = np.unravel_index(flat, shape) if inner else ()
            return Verdict(False, tuple(prefix) + tuple(int(t) for t in tail))
    return Verdict(True)


# ---------------------------------------------------------------------------
# named identity families


class Family(str, enum.Enum):
    PN_CN = "PN_CN"
    CN_X3 = "CN_X3"
    PN_X3 = "PN_X3"
    KNIL = "KNIL"
    PATH_SWAP = "PATH_SWAP"
    X2_XY = "X2_XY"
    X2Y2_XY = "X2Y2_XY"
    X2_X3 = "X2_X3"


_MIN_N = {
    Family.PN_CN: 2,
    Family.CN_X3: 1,
    Family.PN_X3: 2,
    Family.KNIL: 1,
    Family.PATH_SWAP: 2,
}


def _path(xs):
    return [(xs[i], xs[i + 1]) for i in range(len(xs) - 1)]


def _cycle(xs):
    return _path(xs) + [(xs[-1], xs[0])]


def identity_family(name: Family | str, n: int | None = None) -> Identity:
    fam = Family(name)
    if fam in _MIN_N:
        if n is None or n < _MIN_N[fam]:
            raise InputError(f"{fam.value} needs n >= {_MIN_N[fam]}, got {n}")
    xs = [f"x{i}" for i in range(1, (n or 0) + 1)]
    ys = [f"y{i}" for i in range(1, (n or 0) + 1)]
    if fam is Family.PN_CN:
        return make_identity(_path(xs), _cycle(xs))
    if fam is Family.CN_X3:
        return make_identity(_cycle(xs), [("x", "x", "x")])
    if fam is Family.PN_X3:
        return make_identity(_path(xs), [("x", "x", "x")])
    if fam is Family.KNIL:
        return make_identity([tuple(xs)], [tuple(ys)])
    if fam is Family.PATH_SWAP:
        swapped_x = xs[:-1] + ys[-1:]
        swapped_y = ys[:-1] + xs[-1:]
        return make_identity(_path(xs) + _path(ys), _path(swapped_x) + _path(swapped_y))
    if fam is Family.X2_XY:
        return make_identity([("x", "x"), ("x", "y")], [("x", "x"), ("y", "y")])
    if fam is Family.X2Y2_XY:
        return make_identity([("x", "x"), ("y", "y")], [("x", "x"), ("y", "y"), ("x", "y")])
    if fam is Family.X2_X3:
        return make_identity([("x", "x")], [("x", "x", "x")])
    raise AssertionError(fam)


def family_var_count(fam: Family, n: int | None) -> int:
    return {
        Family.PN_CN: lambda: n,
        Family.CN_X3: lambda: n + 1,
        Family.PN_X3: lambda: n + 1,
        Family.KNIL: lambda: 2 * n,
        Family.PATH_SWAP: lambda: 2 * n,
    }.get(fam, lambda: 2 if fam is not Family.X2_X3 else 1)()


# ---------------------------------------------------------------------------
# separating identities


def named_candidates(max_vars: int) -> list[tuple[Family, int | None]]:
    """Named identities tried before the general enumeration, in order."""
    out: list[tuple[Family, int | None]] = [(Family.X2_XY, None), (Family.X2Y2_XY, None), (Family.X2_X3, None)]
    for n in range(1, max_vars + 1):
        for fam in (Family.PATH_SWAP, Family.PN_X3, Family.CN_X3, Family.PN_CN, Family.KNIL):
            if n >= _MIN_N[fam] and family_var_count(fam, n) <= max_vars:
                out.append((fam, n))
    return out


def candidate_space_size(max_vars: int, max_word_len: int, max_summands: int) -> int:
    """Ordered pairs of distinct terms: ``T(T-1)`` with ``T = sum_s C(W, s)``
    and ``W = sum_l V^l`` words."""
    W = sum(max_vars**l for l in range(1, max_word_len + 1))
    T = sum(math.comb(W, s) for s in range(1, max_summands + 1))
    return T * (T - 1)


def find_separating_identity(
    A: FiniteSemiring,
    B: FiniteSemiring,
    max_vars: int = 2,
    max_word_len: int = 2,
    max_summands: int = 2,
    budget: int = DEFAULT_BOUNDS.separation_candidates,
    eval_budget: int = 10**6,
) -> Identity | None:
    """First identity that holds in ``A`` and fails in ``B``.

    Named families come first, then every pair of terms over ``max_vars``
    variables with words of length ``<= max_word_len`` and at most
    ``max_summands`` summands, in a fixed order.
    """
    for fam, n in named_candidates(max_vars):
        e = identity_family(fam, n)
        k = e.var_count
        if max(A.order, B.order) ** k > eval_budget:
            continue
        if satisfies(A, e, max_vars=k, budget=eval_budget) and not satisfies(B, e, max_vars=k, budget=eval_budget):
            return e

    total = candidate_space_size(max_vars, max_word_len, max_summands)
    if total > budget:
        raise ResourceError(f"general search space has {total} candidates, budget is {budget}", total, budget)
    for S in (A, B):
        if S.order**max_vars > eval_budget:
            raise ResourceError(
                f"term tables need {S.order ** max_vars} evaluations, budget is {eval_budget}",
                S.order**max_vars, eval_budget,
            )
    words = [w for l in range(1, max_word_len + 1) for w in itertools.product(range(max_vars), repeat=l)]
    terms = [Term(c) for s in range(1, max_summands + 1) for c in itertools.combinations(words, s)]

    def tables(S):
        X = []
        for pos in range(max_vars):
            ax = [1] * max_vars
            ax[pos] = S.order
            X.append(np.arange(S.order, dtype=np.int32).reshape(ax))
        shape = (S.order,) * max_vars
        return np.stack([np.broadcast_to(_term_array(t, S, X), shape).ravel() for t in terms])

    ta, tb = tables(A), tables(B)
    names = tuple(f"x{i}" for i in range(1, max_vars + 1))
    for u in range(len(terms)):
        holds_a = (ta == ta[u]).all(axis=1)
        fails_b = ~(tb == tb[u]).all(axis=1)
        hits = np.flatnonzero(holds_a & fails_b)
        if len(hits):
            v = int(hits[0])
            used = sorted(terms[u].variables() | terms[v].variables())
            remap = {old: new for new, old in enumerate(used)}
            e = Identity(
                Term(tuple(tuple(remap[x] for x in w) for w in terms[u].words)),
                Term(tuple(tuple(remap[x] for x in w) for w in terms[v].words)),
                tuple(names[i] for i in used),
            )
            if not (satisfies(A, e) and not satisfies(B, e)):
                raise AssertionError(f"separating candidate {e} failed re-check")
            return e
    return None
