"""Positivity certificates for Kronecker coefficients via the semigroup property.

A certificate is a tree.  Leaves are triples whose positivity is vouched for
by a named witness (a closed formula, a cited theorem, the character
criterion or the oracle).  Inner nodes add their children's triples with a
combiner: one letter per coordinate, ``H`` for horizontal sum and ``V`` for
vertical sum.  ``HHH`` is the semigroup property itself; ``VVH``, ``VHV`` and
``HVV`` follow from it after transposing two coordinates, which leaves
``g`` unchanged.  Combiners with an odd number of ``V`` are rejected.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import reduce
from itertools import permutations
from typing import Callable, Iterable, Iterator, Sequence, Union

from .characters import CharCache, chi
from .errors import InternalInconsistency
from .kronecker import (
    kron,
    near_two_row_formula,
    square_near_hook_positive,
    thm_nn,
    two_row_formula,
)
from .partitions import (
    Partition,
    PartitionError,
    conjugate,
    format_partition,
    horizontal_sum,
    is_self_conjugate,
    parse_partition,
    principal_hooks,
    vertical_sum,
)

log = logging.getLogger(__name__)

Triple = tuple[Partition, Partition, Partition]

COMBINERS = ("HHH", "VVH", "VHV", "HVV")

# Cheapest to re-check first.
WITNESS_ORDER = (
    "formula-two-row",
    "formula-near-two-row",
    "lemma-3k",
    "lemma-multipleof4",
    "thm-hookpos",
    "cor-square-near-hooks",
    "thm-nn",
    "character-criterion",
    "oracle",
)

ORACLE_CAP = 25


class CertificateError(Exception):
    """Base class for certificate problems that are not a plain ``False``."""


class MalformedCertificate(CertificateError, ValueError):
    """The tree does not follow the certificate schema."""


class WitnessNotApplicable(CertificateError):
    """A leaf names a witness whose hypotheses the leaf triple does not meet."""


class OracleCapExceeded(CertificateError):
    """An oracle leaf is larger than the configured size cap."""


# --- trees -----------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    triple: Triple
    witness: str

    @property
    def claim(self) -> Triple:
        return self.triple


@dataclass(frozen=True)
class Node:
    combiner: str
    children: tuple["Certificate", ...]
    claimed: Triple

    @property
    def claim(self) -> Triple:
        return self.claimed


Certificate = Union[Leaf, Node]


def make_triple(a, b, c) -> Triple:
    return (Partition(a), Partition(b), Partition(c))


def combine(combiner: str, triples: Sequence[Triple]) -> Triple:
    """Add ``triples`` coordinatewise, ``H``/``V`` per letter of ``combiner``."""
    if combiner not in COMBINERS:
        raise MalformedCertificate(f"unknown combiner {combiner!r}; expected one of {', '.join(COMBINERS)}")
    if not triples:
        raise MalformedCertificate("a combiner needs at least one child")
    out = []
    for pos, letter in enumerate(combiner):
        op = horizontal_sum if letter == "H" else vertical_sum
        out.append(reduce(op, (t[pos] for t in triples)))
    return tuple(out)


def leaves(cert: Certificate) -> Iterator[Leaf]:
    if isinstance(cert, Leaf):
        yield cert
        return
    for child in cert.children:
        yield from leaves(child)


def depth(cert: Certificate) -> int:
    if isinstance(cert, Leaf):
        return 0
    return 1 + max(depth(c) for c in cert.children)


def leaf_count(cert: Certificate) -> int:
    return sum(1 for _ in leaves(cert))


# --- equivalent forms of a triple --------------------------------------------------
#
# g is symmetric in its three arguments and unchanged when two of them are
# transposed, so each triple has up to 24 equivalent forms.

_FLIPS = ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))


@dataclass(frozen=True)
class Form:
    """Output coordinate ``j`` is input coordinate ``perm[j]``, conjugated when ``flips[j]``."""

    perm: tuple[int, int, int]
    flips: tuple[int, int, int]

    def triple(self, t: Triple) -> Triple:
        return tuple(
            conjugate(t[p]) if f else t[p] for p, f in zip(self.perm, self.flips)
        )

    def combiner(self, c: str) -> str:
        swap = {"H": "V", "V": "H"}
        return "".join(
            swap[c[p]] if f else c[p] for p, f in zip(self.perm, self.flips)
        )

    def inverse(self) -> "Form":
        perm = [0, 0, 0]
        flips = [0, 0, 0]
        for j, p in enumerate(self.perm):
            perm[p] = j
            flips[p] = self.flips[j]
        return Form(tuple(perm), tuple(flips))

    def certificate(self, cert: Certificate) -> Certificate:
        if isinstance(cert, Leaf):
            return Leaf(self.triple(cert.triple), cert.witness)
        return Node(
            self.combiner(cert.combiner),
            tuple(self.certificate(c) for c in cert.children),
            self.triple(cert.claimed),
        )


IDENTITY = Form((0, 1, 2), (0, 0, 0))
ALL_FORMS = tuple(Form(p, f) for p in permutations(range(3)) for f in _FLIPS)


def equivalent_forms(t: Triple) -> list[tuple[Form, Triple]]:
    """Distinct forms of ``t``, identity first."""
    seen = set()
    out = []
    for form in ALL_FORMS:
        ft = form.triple(t)
        if ft not in seen:
            seen.add(ft)
            out.append((form, ft))
    return out


def canonical_form(t: Triple) -> Triple:
    return min(form.triple(t) for form in ALL_FORMS)


# --- witnesses ------------------------------------------------------------------------

def _rect(p: Partition) -> tuple[int, int] | None:
    if p and len(set(p)) == 1:
        return len(p), p[0]
    return None


def _square_side(p: Partition) -> int | None:
    r = _rect(p)
    return r[0] if r is not None and r[0] == r[1] else None


def _is_hook(p: Partition) -> bool:
    return bool(p) and all(x == 1 for x in p[1:])


def _w_two_row(t: Triple) -> bool | None:
    a, b, c = t
    rect = _rect(a)
    if a != b or rect is None or len(c) > 2:
        return None
    k = c[1] if len(c) == 2 else 0
    return two_row_formula(rect[0], rect[1], k) > 0


def _w_near_two_row(t: Triple) -> bool | None:
    a, b, c = t
    m = _square_side(a)
    if a != b or m is None or len(c) != 3 or c[2] != 1:
        return None
    k = c[1] + 1
    if not 2 <= k <= m:
        return None
    return near_two_row_formula(m, k) > 0


def _w_3k(t: Triple) -> bool | None:
    a, b, c = t
    if a == b == c and len(a) == 3 and len(set(a)) == 1 and a[0] >= 3:
        return True
    return None


def _w_mult4(t: Triple) -> bool | None:
    a, b, c = t
    if a == b and len(a) == 4 and len(set(a)) == 1 and a[0] >= 2 and c == (2 * a[0], 2 * a[0]):
        return True
    return None


_HOOK_EXCEPTIONS = (1, 2, 4, 6)


def _w_hookpos(t: Triple) -> bool | None:
    a, b, c = t
    rect = _rect(a)
    if a != b or rect is None or not _is_hook(c):
        return None
    short = min(rect)
    if short < 7:
        return None
    k = len(c) - 1
    bb = short * short
    if k >= bb:
        return False
    return k not in _HOOK_EXCEPTIONS and k not in (bb - 2, bb - 3, bb - 5, bb - 7)


def _w_square_near_hooks(t: Triple) -> bool | None:
    a, b, c = t
    m = _square_side(a)
    if a != b or m is None or m < 7 or len(c) < 2 or any(x != 1 for x in c[2:]):
        return None
    i, k = c[1], len(c) - 2
    if not 2 <= i <= 7:
        return None
    return square_near_hook_positive(m, i, k)


def _w_nn(t: Triple) -> bool | None:
    a, b, c = t
    if a != b or len(a) != 2 or a[0] != a[1]:
        return None
    return thm_nn(c)


class _Evaluator:
    """Witness evaluation with shared caches."""

    def __init__(self, oracle_cap: int = ORACLE_CAP, oracle_override: bool = False):
        self.oracle_cap = oracle_cap
        self.oracle_override = oracle_override
        self.chars = CharCache()
        self._oracle: dict[Triple, int] = {}

    def oracle_allowed(self, n: int) -> bool:
        return self.oracle_override or n <= self.oracle_cap

    def oracle_value(self, t: Triple) -> int:
        key = canonical_form(t)
        if key not in self._oracle:
            self._oracle[key] = kron(*t, cache=self.chars)
        return self._oracle[key]

    def _character(self, t: Triple) -> bool | None:
        a, b, c = t
        if a != b or not a or not is_self_conjugate(a):
            return None
        return chi(c, principal_hooks(a), self.chars) != 0

    def evaluate(self, witness: str, t: Triple) -> bool:
        """Whether ``witness`` shows ``g(t) > 0``.

        Raises :class:`WitnessNotApplicable` when no equivalent form of ``t``
        meets the witness's hypotheses.
        """
        if witness == "oracle":
            n = sum(t[0])
            if not self.oracle_allowed(n):
                raise OracleCapExceeded(
                    f"oracle leaf of size {n} exceeds the cap n <= {self.oracle_cap}"
                )
            return self.oracle_value(t) > 0
        check = self._checks().get(witness)
        if check is None:
            raise MalformedCertificate(f"unknown witness {witness!r}")
        verdicts = [v for _, ft in equivalent_forms(t) if (v := check(ft)) is not None]
        if not verdicts:
            raise WitnessNotApplicable(
                f"witness {witness} does not apply to ({', '.join(format_partition(p) or '()' for p in t)})"
            )
        return any(verdicts)

    def _checks(self) -> dict[str, Callable[[Triple], bool | None]]:
        return {
            "formula-two-row": _w_two_row,
            "formula-near-two-row": _w_near_two_row,
            "lemma-3k": _w_3k,
            "lemma-multipleof4": _w_mult4,
            "thm-hookpos": _w_hookpos,
            "cor-square-near-hooks": _w_square_near_hooks,
            "thm-nn": _w_nn,
            "character-criterion": self._character,
        }


# --- JSON --------------------------------------------------------------------------------

def _fmt_triple(t: Triple) -> list[str]:
    return [format_partition(p) for p in t]


def to_dict(cert: Certificate) -> dict:
    if isinstance(cert, Leaf):
        return {"leaf": _fmt_triple(cert.triple), "witness": cert.witness}
    return {
        "claim": _fmt_triple(cert.claimed),
        "node": {"combiner": cert.combiner, "children": [to_dict(c) for c in cert.children]},
    }


def to_json(cert: Certificate, indent: int | None = 2) -> str:
    return json.dumps(to_dict(cert), indent=indent)


def _parse_triple(raw, where: str) -> Triple:
    if not isinstance(raw, list) or len(raw) != 3 or not all(isinstance(x, str) for x in raw):
        raise MalformedCertificate(f"{where}: expected a list of three partition strings, got {raw!r}")
    try:
        t = tuple(parse_partition(x) for x in raw)
    except PartitionError as exc:
        raise MalformedCertificate(f"{where}: {exc}") from None
    if len({sum(p) for p in t}) != 1:
        raise MalformedCertificate(f"{where}: partitions of different sizes {raw!r}")
    return t


def from_dict(data, where: str = "$") -> Certificate:
    if not isinstance(data, dict):
        raise MalformedCertificate(f"{where}: expected an object")
    if "leaf" in data:
        extra = set(data) - {"leaf", "witness"}
        if extra or "witness" not in data:
            raise MalformedCertificate(f"{where}: a leaf has exactly the keys 'leaf' and 'witness'")
        witness = data["witness"]
        if witness not in WITNESS_ORDER:
            raise MalformedCertificate(f"{where}: unknown witness {witness!r}")
        return Leaf(_parse_triple(data["leaf"], where), witness)
    if set(data) != {"claim", "node"}:
        raise MalformedCertificate(f"{where}: a node has exactly the keys 'claim' and 'node'")
    node = data["node"]
    if not isinstance(node, dict) or set(node) != {"combiner", "children"}:
        raise MalformedCertificate(f"{where}.node: expected keys 'combiner' and 'children'")
    combiner = node["combiner"]
    if combiner not in COMBINERS:
        raise MalformedCertificate(f"{where}.node: unknown combiner {combiner!r}")
    children = node["children"]
    if not isinstance(children, list) or not children:
        raise MalformedCertificate(f"{where}.node.children: expected a nonempty list")
    kids = tuple(from_dict(c, f"{where}.node.children[{i}]") for i, c in enumerate(children))
    return Node(combiner, kids, _parse_triple(data["claim"], f"{where}.claim"))


def from_json(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not valid JSON: {exc}") from None
    return from_dict(data)


# --- verification --------------------------------------------------------------------------

@dataclass(frozen=True)
class Problem:
    path: str
    kind: str  # "combine-mismatch" or "leaf-not-positive"
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.path}: {self.detail}"


@dataclass
class Verification:
    ok: bool
    problems: list[Problem] = field(default_factory=list)
    leaves: int = 0
    depth: int = 0


def check_certificate(cert: Certificate, oracle_cap: int = ORACLE_CAP,
                      oracle_override: bool = False) -> Verification:
    """Re-check every combination and every leaf witness of ``cert``."""
    ev = _Evaluator(oracle_cap, oracle_override)
    problems: list[Problem] = []

    def walk(c: Certificate, path: str) -> None:
        if isinstance(c, Leaf):
            t = c.triple
            if len({sum(p) for p in t}) != 1:
                raise MalformedCertificate(f"{path}: leaf partitions have different sizes")
            if not ev.evaluate(c.witness, t):
                problems.append(Problem(path, "leaf-not-positive",
                                        f"{c.witness} does not show ({', '.join(_fmt_triple(t))}) positive"))
            return
        if not isinstance(c, Node):
            raise MalformedCertificate(f"{path}: not a certificate node")
        for i, child in enumerate(c.children):
            walk(child, f"{path}.children[{i}]")
        got = combine(c.combiner, [child.claim for child in c.children])
        if got != tuple(c.claimed):
            problems.append(Problem(
                path, "combine-mismatch",
                f"{c.combiner} of the children gives ({', '.join(_fmt_triple(got))}), "
                f"claimed ({', '.join(_fmt_triple(c.claimed))})",
            ))

    walk(cert, "$")
    return Verification(not problems, problems, leaf_count(cert), depth(cert))


def verify_certificate(cert: Certificate, oracle_cap: int = ORACLE_CAP,
                       oracle_override: bool = False) -> bool:
    return check_certificate(cert, oracle_cap, oracle_override).ok


# --- search ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class Split:
    """A planned decomposition: ``parts`` are sub-plans or goal triples."""

    combiner: str
    parts: tuple["Split | Triple", ...]

    def claim(self) -> Triple:
        return combine(self.combiner, [p.claim() if isinstance(p, Split) else p for p in self.parts])

    def goals(self) -> Iterator[Triple]:
        for p in self.parts:
            if isinstance(p, Split):
                yield from p.goals()
            else:
                yield p

    def transformed(self, form: Form) -> "Split":
        return Split(
            form.combiner(self.combiner),
            tuple(p.transformed(form) if isinstance(p, Split) else form.triple(p) for p in self.parts),
        )


@dataclass(frozen=True)
class Strategy:
    name: str
    applies: Callable[[Triple], bool]
    generate: Callable[[Triple], Iterable[Split]]
    source: str = ""

    def plans(self, target: Triple) -> Iterator[Split]:
        """Candidate decompositions of ``target``, each checked to recombine exactly."""
        if not self.applies(target):
            return
        for plan in self.generate(target):
            if plan.claim() != target:
                raise InternalInconsistency(
                    f"strategy {self.name} emitted a plan for ({', '.join(_fmt_triple(plan.claim()))}) "
                    f"while targeting ({', '.join(_fmt_triple(target))})"
                )
            yield plan


@dataclass(frozen=True)
class NotFound:
    """No certificate within the limits; says nothing about ``g`` being zero."""

    reason: str  # "budget" or "exhausted"
    explored: int

    def __bool__(self) -> bool:
        return False


class _OutOfBudget(Exception):
    pass


class _Search:
    def __init__(self, strategies, budget, witnesses, oracle_cap, max_depth):
        self.strategies = list(strategies)
        self.budget = budget
        self.witnesses = [w for w in WITNESS_ORDER if w in set(witnesses)]
        self.max_depth = max_depth
        self.ev = _Evaluator(oracle_cap)
        self.spent = 0
        self.dead: dict[Triple, int] = {}
        self.proved: dict[Triple, Certificate] = {}

    def run(self, target: Triple) -> Certificate | NotFound:
        try:
            for d in range(self.max_depth + 1):
                cert = self.prove(target, d)
                if cert is not None:
                    return cert
        except _OutOfBudget:
            return NotFound("budget", self.spent)
        return NotFound("exhausted", self.spent)

    def leaf(self, t: Triple) -> Leaf | None:
        n = sum(t[0])
        for w in self.witnesses:
            if w == "oracle":
                if self.ev.oracle_allowed(n) and self.ev.oracle_value(t) > 0:
                    return Leaf(t, w)
                continue
            try:
                if self.ev.evaluate(w, t):
                    return Leaf(t, w)
            except WitnessNotApplicable:
                continue
        return None

    def prove(self, t: Triple, d: int) -> Certificate | None:
        self.spent += 1
        if self.spent > self.budget:
            raise _OutOfBudget
        if t in self.proved:
            return self.proved[t]
        key = canonical_form(t)
        if self.dead.get(key, -1) >= d:
            return None
        found = self.leaf(t)
        if found is None and d > 0 and not self._known_zero(t):
            found = self._expand(t, d)
        if found is None:
            self.dead[key] = max(d, self.dead.get(key, -1))
            return None
        self.proved[t] = found
        return found

    def _known_zero(self, t: Triple) -> bool:
        # certificates are sound, so a zero coefficient can never be certified
        n = sum(t[0])
        return self.ev.oracle_allowed(n) and self.ev.oracle_value(t) == 0

    def _expand(self, t: Triple, d: int) -> Certificate | None:
        forms = equivalent_forms(t)
        for strategy in self.strategies:
            for form, ft in forms:
                for plan in strategy.plans(ft):
                    cert = self._realize(plan, d - 1)
                    if cert is not None:
                        log.debug("%s proves %s", strategy.name, _fmt_triple(ft))
                        return form.inverse().certificate(cert)
        return None

    def _realize(self, plan: Split | Triple, d: int) -> Certificate | None:
        if not isinstance(plan, Split):
            return self.prove(plan, d)
        kids = []
        for part in plan.parts:
            c = self._realize(part, d)
            if c is None:
                return None
            kids.append(c)
        return Node(plan.combiner, tuple(kids), combine(plan.combiner, [k.claim for k in kids]))


def certify(lam, mu, nu, strategies: Sequence[Strategy] | None = None, budget: int = 20000,
            witnesses: Iterable[str] = WITNESS_ORDER, oracle_cap: int = ORACLE_CAP,
            max_depth: int = 8) -> Certificate | NotFound:
    """Search for a certificate that ``g(lam, mu, nu) > 0``.

    Iterative deepening on the number of strategy steps; strategies are tried
    in list order, each on every equivalent form of the goal, and candidates
    in the order the strategy emits them.  ``budget`` caps the number of goals
    visited.  The result is deterministic.
    """
    t = make_triple(lam, mu, nu)
    if len({sum(p) for p in t}) != 1:
        raise PartitionError(f"sizes must agree: {', '.join(str(sum(p)) for p in t)}")
    unknown = set(witnesses) - set(WITNESS_ORDER)
    if unknown:
        raise ValueError(f"unknown witnesses: {', '.join(sorted(unknown))}")
    if strategies is None:
        from .strategies import builtin_strategies
        strategies = builtin_strategies()
    return _Search(strategies, budget, witnesses, oracle_cap, max_depth).run(t)
