"""Membership in the named subvarieties of 3-nilpotent flat semirings.

Graph semirings are decided from their component structure; every refusal
comes with an identity of the variety's basis and an assignment on which
it fails.  Flat algebras that are not graph semirings are decided by
checking the basis identities directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .config import DEFAULT_BOUNDS, Bounds
from .constructors import cycle_semiring, from_graph, omega_direct_union
from .errors import InputError, PreconditionError, ResourceError, UnsupportedInputError
from .graphs import DiGraph, ComponentSummary, components, require_valid, semiring_to_graph
from .semiring import FiniteSemiring, flat_profile, nilpotency_class
from .terms import Family, Identity, Verdict, identity_family, satisfies


class Tag(str, enum.Enum):
    NF = "NF"
    VN = "VN"
    VAC = "VAC"
    VCN = "VCN"
    VI = "VI"
    VPN = "VPN"
    VPNPN = "VPNPN"


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q**0.5) + 1))


@dataclass(frozen=True)
class VarietyDescriptor:
    tag: Tag
    n: int | None = None
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        t = self.tag
        if t is Tag.VAC:
            return
        if t is Tag.VI:
            if not self.primes or not all(_is_prime(q) for q in self.primes):
                raise InputError("VI needs a nonempty list of primes")
            object.__setattr__(self, "primes", tuple(sorted(set(self.primes))))
            return
        low = {Tag.NF: 1, Tag.VN: 2, Tag.VCN: 2, Tag.VPN: 1, Tag.VPNPN: 1}[t]
        if self.n is None or self.n < low:
            raise InputError(f"{t.value} needs a parameter >= {low}")

    def __str__(self):
        if self.tag is Tag.VAC:
            return "VAC"
        if self.tag is Tag.VI:
            return "VI:" + ",".join(map(str, self.primes))
        return f"{self.tag.value}:{self.n}"


def parse_descriptor(text: str) -> VarietyDescriptor:
    """``NF:k``, ``VN:n``, ``VAC``, ``VCN:n``, ``VI:2,3,5``, ``VPN:n``, ``VPNPN:n``."""
    head, _, arg = text.strip().partition(":")
    try:
        tag = Tag(head.upper())
    except ValueError:
        raise InputError(f"unknown variety {head!r}") from None
    if tag is Tag.VAC:
        if arg:
            raise InputError("VAC takes no parameter")
        return VarietyDescriptor(tag)
    try:
        nums = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise InputError(f"bad parameter {arg!r}") from None
    if tag is Tag.VI:
        return VarietyDescriptor(tag, primes=tuple(nums))
    if len(nums) != 1:
        raise InputError(f"{tag.value} takes exactly one integer parameter")
    return VarietyDescriptor(tag, nums[0])


@dataclass
class MembershipVerdict:
    member: bool
    reason: str
    identity: Identity | None = None
    counterexample: dict | None = None
    graph: DiGraph | None = None
    summary: ComponentSummary | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.member


def basis(d: VarietyDescriptor, order: int | None = None) -> list[Identity]:
    """Identities defining ``d`` within the flat semirings.

    VAC has an infinite basis; only ``c_q ≈ x^3`` for ``q <= order - 2``
    matter for an algebra of the given order, since the cycles of its
    subdirectly irreducible images are no longer than that.
    """
    if d.tag is Tag.NF:
        return [identity_family(Family.KNIL, d.n)]
    ids = [identity_family(Family.KNIL, 3)]
    n = d.n
    if d.tag is Tag.VN:
        ids.append(identity_family(Family.PN_CN, n))
    elif d.tag is Tag.VCN:
        ids.append(identity_family(Family.PN_CN, n))
        ids += [identity_family(Family.CN_X3, k) for k in range(1, n) if n % k == 0]
    elif d.tag is Tag.VI:
        ids += [identity_family(Family.CN_X3, q) for q in d.primes]
    elif d.tag is Tag.VAC:
        if order is None:
            raise InputError("the VAC basis is infinite; pass the algebra order")
        ids += [identity_family(Family.CN_X3, q) for q in range(1, max(order - 2, 0) + 1)]
    elif d.tag is Tag.VPNPN:
        ids.append(identity_family(Family.PN_X3, n + 1))
    elif d.tag is Tag.VPN:
        ids.append(identity_family(Family.PN_X3, n + 1))
        if n >= 2:
            ids.append(identity_family(Family.PATH_SWAP, n))
    return ids


def _labelled(S: FiniteSemiring, e: Identity, v: Verdict) -> dict:
    return {name: S.labels[x] for name, x in zip(e.names, v.counterexample)}


def _certify(S: FiniteSemiring, e: Identity, bounds: Bounds) -> tuple[Identity, dict | None, str | None]:
    """Run the oracle on a refusal; the identity must genuinely fail."""
    try:
        v = satisfies(S, e, max_vars=bounds.max_vars, budget=bounds.eval_budget)
    except ResourceError as exc:
        return e, None, f"certificate skipped: {exc}"
    if v.holds:
        raise AssertionError(f"structural refusal not confirmed: {e} holds in {S.name}")
    return e, _labelled(S, e, v), None


def in_nf_k(S: FiniteSemiring, k: int, bounds: Bounds = DEFAULT_BOUNDS) -> MembershipVerdict:
    """Does ``S`` satisfy ``x1 .. xk ≈ y1 .. yk``?"""
    e = identity_family(Family.KNIL, k)
    v = satisfies(S, e, max_vars=bounds.max_vars, budget=bounds.eval_budget)
    prof = flat_profile(S)
    if prof.is_flat:
        klass = prof.nilpotency_class
        if v.holds != (klass is not None and klass <= k):
            raise AssertionError(f"k-nilpotent identity disagrees with nilpotency class {klass}")
    if v.holds:
        return MembershipVerdict(True, f"every product of {k} elements is zero")
    return MembershipVerdict(False, f"some product of {k} elements is nonzero", e, _labelled(S, e, v))


def vn_generator(n: int, bound: int = DEFAULT_BOUNDS.vn_n) -> FiniteSemiring:
    """S_c1 ∘ (∘ over k | n of S_ck)."""
    if n < 2:
        raise InputError(f"need n >= 2, got {n}")
    if n > bound:
        raise ResourceError(f"n = {n} exceeds the bound {bound}", n, bound)
    parts = [cycle_semiring(1)] + [cycle_semiring(k) for k in range(1, n + 1) if n % k == 0]
    return omega_direct_union(parts, name=f"VNgen({n})")


# ---------------------------------------------------------------------------
# structural decisions on graphs


def _structural(d: VarietyDescriptor, cs: ComponentSummary) -> tuple[bool, str, tuple | None]:
    """``(member, reason, culprit)`` where culprit picks the failing identity."""
    mp = cs.max_path_edges
    lengths = sorted(cs.cycle_length_set)
    n = d.n
    if d.tag is Tag.VN:
        if mp > n - 2:
            return False, f"path with {mp} edges is longer than {n - 2}", (Family.PN_CN, n)
        bad = [L for L in lengths if n % L]
        if bad:
            return False, f"cycle length {bad[0]} does not divide {n}", (Family.PN_CN, n)
        return True, f"paths have at most {n - 2} edges and every cycle length divides {n}", None
    if d.tag is Tag.VAC:
        if lengths:
            return False, f"graph has a cycle of length {lengths[0]}", (Family.CN_X3, lengths[0])
        return True, "graph is acyclic", None
    if d.tag is Tag.VCN:
        if mp > n - 2:
            return False, f"path with {mp} edges is longer than {n - 2}", (Family.PN_CN, n)
        for L in lengths:
            if n % L:
                return False, f"cycle length {L} does not divide {n}", (Family.PN_CN, n)
            if L != n:
                return False, f"cycle length {L} is a proper divisor of {n}", (Family.CN_X3, L)
        return True, f"paths have at most {n - 2} edges and every cycle has length {n}", None
    if d.tag is Tag.VI:
        for L in lengths:
            for q in d.primes:
                if q % L == 0:
                    return False, f"cycle length {L} divides {q}", (Family.CN_X3, q)
        return True, "no cycle length divides a member of " + ",".join(map(str, d.primes)), None
    if d.tag in (Tag.VPN, Tag.VPNPN):
        if lengths:
            return False, f"graph has a cycle of length {lengths[0]}", (Family.PN_X3, n + 1)
        if mp > n - 1:
            return False, f"path with {mp} edges is longer than {n - 1}", (Family.PN_X3, n + 1)
        if d.tag is Tag.VPN and mp == n - 1 and cs.max_path_multiplicity > 1:
            why = f"{cs.max_path_multiplicity} path components have {n - 1} edges"
            return False, why, ((Family.PATH_SWAP, n) if n >= 2 else None)
        return True, f"acyclic with paths of at most {n - 1} edges", None
    raise AssertionError(d)


def _graph_of(x) -> DiGraph | None:
    if isinstance(x, DiGraph):
        require_valid(x)
        return x
    prof = flat_profile(x)
    if prof.is_flat and prof.is_si and prof.nilpotency_class is not None and prof.nilpotency_class <= 3:
        return semiring_to_graph(x)
    return None


def decide_membership(x: FiniteSemiring | DiGraph, d: VarietyDescriptor, bounds: Bounds = DEFAULT_BOUNDS) -> MembershipVerdict:
    if d.tag is Tag.NF:
        S = from_graph(x) if isinstance(x, DiGraph) else x
        return in_nf_k(S, d.n, bounds)
    G = _graph_of(x)
    if G is None:
        return _by_identities(x, d, bounds)
    cs = components(G)
    member, reason, culprit = _structural(d, cs)
    verdict = MembershipVerdict(member, reason, graph=G, summary=cs)
    if not member:
        S = from_graph(G)
        if culprit is None:
            verdict.notes.append("no basis identity separates this case (both candidate bottoms generate the same variety)")
        else:
            e, cex, note = _certify(S, identity_family(*culprit), bounds)
            verdict.identity, verdict.counterexample = e, cex
            if note:
                verdict.notes.append(note)
    return verdict


_BY_IDS = "decided by identities, not structure"


def _by_identities(S: FiniteSemiring, d: VarietyDescriptor, bounds: Bounds) -> MembershipVerdict:
    prof = flat_profile(S)
    if not prof.is_flat:
        raise UnsupportedInputError(f"{S.name or 'input'} is not flat; only graph semirings and flat algebras are decided")
    for e in basis(d, S.order):
        v = satisfies(S, e, max_vars=bounds.max_vars, budget=bounds.eval_budget)
        if not v.holds:
            return MembershipVerdict(False, f"basis identity fails: {e}", e, _labelled(S, e, v), notes=[_BY_IDS])
    return MembershipVerdict(True, "all basis identities hold", notes=[_BY_IDS])


# ---------------------------------------------------------------------------
# the chain of acyclic varieties


@dataclass(frozen=True)
class ChainPosition:
    descriptor: VarietyDescriptor

    @property
    def rank(self) -> int:
        """VPN(1) < VPNPN(1) < VPN(2) < VPNPN(2) < ... as 0, 1, 2, 3, ..."""
        n = self.descriptor.n
        return 2 * n - 2 if self.descriptor.tag is Tag.VPN else 2 * n - 1

    def __str__(self):
        return str(self.descriptor)


def classify_acyclic(x: FiniteSemiring | DiGraph) -> ChainPosition:
    """Least VPN(n) / VPNPN(n) containing an acyclic graph semiring."""
    G = _graph_of(x)
    if G is None:
        raise PreconditionError("input is not a graph semiring")
    cs = components(G)
    if not cs.is_acyclic:
        raise PreconditionError("graph has a cycle", sorted(cs.cycle_length_set))
    mp = max(cs.max_path_edges, 0)
    n = mp + 1
    tag = Tag.VPN if cs.max_path_multiplicity <= 1 else Tag.VPNPN
    return ChainPosition(VarietyDescriptor(tag, n))


def bottom_readings(bounds: Bounds = DEFAULT_BOUNDS) -> list[dict]:
    """Compare the two candidate meanings of the one-vertex path algebra.

    Reading "S(a)": the 2-element algebra {0, a}.  Reading "isolated": the
    graph algebra of a single isolated vertex {0, ω, v}.  For each reading
    we search for identities separating it from the algebra one step up in
    the chain (two copies glued along 0 and ω) and from the trivial algebra.
    """
    from .constructors import words_semiring
    from .semiring import trivial_semiring
    from .terms import find_separating_identity

    iso1 = from_graph(DiGraph(("v",), frozenset(), allow_isolated=True), name="S_isolated")
    iso2 = from_graph(DiGraph(("u", "v"), frozenset(), allow_isolated=True), name="S_isolated∘S_isolated")
    readings = {"S(a)": words_semiring("a"), "isolated": iso1}
    out = []
    for key, P in readings.items():
        up = iso2 if key == "isolated" else omega_direct_union([P, P])
        row = {"reading": key, "order": P.order}
        for label, lower, upper in (("trivial<P", trivial_semiring(), P), ("P<P∘P", P, up)):
            try:
                e = find_separating_identity(lower, upper, max_vars=2, max_word_len=3, max_summands=2)
            except ResourceError as exc:
                row[label] = f"search exceeded bounds: {exc}"
                continue
            row[label] = str(e) if e is not None else "no separating identity found"
        out.append(row)
    return out
