"""Scenario-driven fusion: route conflicting products by declared
knowledge, adapt results to model changes, and combine incrementally.

The combining engine runs in two stages.  The reliability stage picks
the expansion (conjunctive for reliable sources, disjunctive when only
some source is right, mixing for statistical pooling, discounting
first when reliabilities are graded).  The conflict stage then routes
every contested product term by the attitude declared for its operand
pair, falling back to keeping non-empty intersections and to the union
for model-empty ones.
"""

import math
from dataclasses import dataclass, field

from .errors import FrameMismatchError, RuleError
from .classic import (
    _add,
    _common_frame,
    _expand,
    _intersection_element,
    _union_element,
    conjunctive,
    disjunctive,
    exclusive_disjunctive,
    mixed,
    murphy_average,
    weighted_mixing,
)
from .mass import MassFunction, MassMatrix
from .result import ConflictReport, FusionResult, Partial

_EPS = 1e-12

_ATTITUDE_KINDS = (
    "keep", "split", "union", "ignorance", "empty", "right", "both-wrong",
)

# Scenario case identifiers and the routing they stand for.  Several
# cases share one routing; the case code is kept in the audit trail.
CASE_TO_KIND = {
    "1.1.1": "keep",
    "1.3": "keep",
    "1.1.2": "split",
    "1.2.1": "split",
    "1.2.2": "union",
    "1.2.3": "union",
    "1.2.4": "union",
    "1.2.5.1": "ignorance",
    "1.2.5.2": "empty",
    "1.2.6": "right",
    "1.2.7": "both-wrong",
}

_RELIABILITY_MODES = (
    "all-reliable", "at-least-one", "exactly-one", "mixed", "discounts",
    "statistical",
)


@dataclass(frozen=True)
class Attitude:
    """How a contested product term should be routed."""

    kind: str
    right: object = None
    recipients: tuple = ()

    def __post_init__(self):
        if self.kind not in _ATTITUDE_KINDS:
            raise ValueError(f"unknown attitude kind {self.kind!r}")
        if self.kind == "right" and self.right is None:
            raise ValueError("attitude 'right' needs the right element")
        object.__setattr__(self, "recipients", tuple(self.recipients))


@dataclass(frozen=True)
class ScenarioConfig:
    """Declared knowledge about sources and conflicts.

    ``pair_attitudes`` keys are frozensets of the operand elements of a
    product term; an attitude listed there is applied to that pair
    whether or not its intersection is empty.  ``default_attitude``
    applies to contested pairs without a declared attitude; contested
    means the landing is empty or a proper refinement of every operand.
    """

    reliability: str = "all-reliable"
    world: str = "closed"
    discounts: tuple = None
    mixed_expr: object = None
    pair_attitudes: dict = field(default_factory=dict)
    default_attitude: Attitude = None
    case: str = None

    def __post_init__(self):
        if self.reliability not in _RELIABILITY_MODES:
            raise ValueError(f"unknown reliability mode {self.reliability!r}")
        if self.world not in ("open", "closed"):
            raise ValueError(f"world must be 'open' or 'closed', got {self.world!r}")
        if self.discounts is not None:
            object.__setattr__(self, "discounts", tuple(float(f) for f in self.discounts))

    @classmethod
    def for_case(cls, case, frame=None, right=None, recipients=(), world=None,
                 discounts=None):
        """Build the config a bare scenario case identifier stands for."""
        case = str(case)
        if case == "1":
            return cls(reliability="all-reliable", case=case,
                       world=world or "closed")
        if case == "2":
            return cls(reliability="at-least-one", case=case,
                       world=world or "closed")
        if case == "3":
            if discounts is None:
                raise ValueError("case 3 needs discount factors")
            return cls(reliability="discounts", discounts=discounts, case=case,
                       world=world or "closed")
        kind = CASE_TO_KIND.get(case)
        if kind is None:
            raise ValueError(f"unknown scenario case {case!r}")
        att = Attitude(kind, right=right, recipients=tuple(recipients))
        default_world = "open" if kind == "empty" else "closed"
        return cls(
            reliability="all-reliable", world=world or default_world,
            default_attitude=att, case=case,
        )


def _check_frame_element(frame, el, what):
    if el.frame != frame:
        raise FrameMismatchError(f"{what} element {el.display} is from another frame")


def _split_shares(els, sources, p):
    """PCR5-style proportionalization of one product term."""
    weights = []
    for el, m in zip(els, sources):
        if el.is_empty:
            continue
        w = m.mass(el)
        if w <= 0.0:
            continue
        for i, (seen, acc) in enumerate(weights):
            if seen == el:
                weights[i] = (seen, acc + w)
                break
        else:
            weights.append((el, w))
    total = math.fsum(w for _, w in weights)
    if total <= _EPS:
        return None
    return tuple((el, p * w / total) for el, w in weights)


def uft_combine(sources, config=None):
    """Combine sources under a declared scenario.

    Returns a FusionResult whose conflict report is the audit trail:
    one partial per routed product term, labeled with the scenario case
    and the destination shares.
    """
    sources = tuple(sources)
    config = config or ScenarioConfig()
    frame = _common_frame(sources)
    case = config.case or ""

    # Reliability stage: pick the expansion.
    if config.reliability == "at-least-one":
        inner = disjunctive(*sources)
        return FusionResult(inner.combined, inner.conflict, rule="uft",
                            warnings=inner.warnings, sources=sources)
    if config.reliability == "exactly-one":
        inner = exclusive_disjunctive(*sources)
        return FusionResult(inner.combined, inner.conflict, rule="uft",
                            warnings=inner.warnings, sources=sources)
    if config.reliability == "mixed":
        if config.mixed_expr is None:
            raise ValueError("mixed reliability needs a source combination expression")
        inner = mixed(sources, config.mixed_expr)
        return FusionResult(inner.combined, inner.conflict, rule="uft",
                            warnings=inner.warnings, sources=sources)
    if config.reliability == "statistical":
        if config.discounts is not None:
            combined = weighted_mixing(sources, config.discounts)
        else:
            combined = murphy_average(*sources)
        return FusionResult(combined, ConflictReport(0.0, ()), rule="uft",
                            sources=sources)

    effective = sources
    warnings = []
    if config.reliability == "discounts":
        if config.discounts is None:
            raise ValueError("discount reliability needs the factors")
        if len(config.discounts) != len(sources):
            raise ValueError(
                f"{len(sources)} sources but {len(config.discounts)} discount factors"
            )
        if all(f == 0.0 for f in config.discounts):
            # Nothing trustworthy remains; only full ignorance is honest.
            vba = MassFunction.vacuous(frame)
            return FusionResult(
                vba, ConflictReport(0.0, ()), rule="uft",
                warnings=("all sources fully unreliable; vacuous result",),
                sources=sources,
            )
        effective = tuple(m.discount(f) for m, f in zip(sources, config.discounts))

    for pair, att in config.pair_attitudes.items():
        for el in pair:
            _check_frame_element(frame, el, "attitude pair")
        _validate_attitude(frame, att)
    if config.default_attitude is not None:
        _validate_attitude(frame, config.default_attitude)

    ignorance = frame.ignorance()
    empty = frame.empty()
    acc = {}
    partials = []
    k12 = 0.0
    open_world = 0.0

    for els, p in _expand(effective):
        landing = _intersection_element(els)
        att = config.pair_attitudes.get(frozenset(els))
        contested = landing.is_empty or all(
            landing.atoms != el.atoms for el in els
        )
        if att is None and contested and config.default_attitude is not None:
            att = config.default_attitude
        if att is None and landing.is_empty:
            # Model-empty pair without declared knowledge: the union is
            # the least committal destination that loses nothing.
            att = Attitude("union")
        if att is None:
            _add(acc, landing, p)
            continue

        k12 += p
        basis = f"case {case}" if case else f"attitude {att.kind}"
        if att.kind == "keep":
            dest = empty if landing.is_empty else landing
            if dest.is_empty:
                open_world += p
            note = "kept on intersection"
            if case == "1.3":
                note += " (provisional: model unknown)"
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), basis=basis, note=note))
        elif att.kind == "split":
            shares = _split_shares(els, effective, p)
            if shares is None:
                dest = _union_element([el.disjunctive() for el in els])
                if dest.is_empty:
                    dest = ignorance
                if dest.is_empty:
                    dest = empty
                    open_world += p
                shares = ((dest, p),)
                note = "operands weightless; escalated"
            else:
                note = "split to operands"
            for dest, share in shares:
                _add(acc, dest, share)
            partials.append(Partial(els, p, shares, basis=basis, note=note))
        elif att.kind == "union":
            dest = _union_element(els)
            note = "to union of operands"
            if dest.is_empty:
                dest, note = ignorance, note + "; union empty, to ignorance"
            if dest.is_empty:
                dest = empty
                open_world += p
                note = "model fully degenerate"
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), basis=basis, note=note))
        elif att.kind == "ignorance":
            dest, note = ignorance, "to total ignorance"
            if dest.is_empty:
                dest = empty
                open_world += p
                note = "ignorance empty under this model"
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), basis=basis, note=note))
        elif att.kind == "empty":
            _add(acc, empty, p)
            open_world += p
            partials.append(Partial(els, p, ((empty, p),), basis=basis,
                                    note="declared impossible"))
        elif att.kind == "right":
            dest = att.right
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), basis=basis,
                                    note=f"{dest.display} declared right"))
        else:  # both-wrong
            recipients = att.recipients
            if not recipients:
                if config.world == "open":
                    _add(acc, empty, p)
                    open_world += p
                    partials.append(Partial(els, p, ((empty, p),), basis=basis,
                                            note="no recipients; open world"))
                    continue
                raise RuleError(
                    "both-wrong needs recipient elements in a closed world"
                )
            share = p / len(recipients)
            shares = tuple((r, share) for r in recipients)
            for dest, s in shares:
                _add(acc, dest, s)
            partials.append(Partial(els, p, shares, basis=basis,
                                    note="operands declared wrong"))

    if open_world > 0.0:
        if config.world == "closed":
            warnings.append(
                f"mass on the empty set in a closed world: {open_world:.6f}"
            )
        else:
            warnings.append(f"open-world mass on the empty set: {open_world:.6f}")
    combined = MassFunction(frame, acc)
    return FusionResult(
        combined, ConflictReport(k12, tuple(partials)), rule="uft",
        warnings=tuple(warnings), sources=sources,
    )


def _validate_attitude(frame, att):
    if not isinstance(att, Attitude):
        raise TypeError(f"expected Attitude, got {type(att).__name__}")
    if att.right is not None:
        _check_frame_element(frame, att.right, "right")
    for r in att.recipients:
        _check_frame_element(frame, r, "recipient")
        if r.is_empty:
            raise ValueError("recipient elements must be non-empty")


# -- dynamic model updates -------------------------------------------------

def dynamic_update(state, new_empty, transfer_rule="dsmh", **params):
    """Adapt a fusion result or a bba to newly discovered emptiness.

    ``new_empty`` lists elements now known impossible.  When the state
    is a FusionResult carrying its sources, those are re-evaluated on
    the tightened frame and the transfer rule is re-run; a bare bba is
    re-routed by combining with the vacuous bba under the same rule.
    A rule without a conflict clause leaves mass on the empty set; that
    mass is surfaced with a warning, never dropped.
    """
    from .registry import resolve

    if isinstance(state, FusionResult):
        frame = state.combined.frame
    elif isinstance(state, MassFunction):
        frame = state.frame
    else:
        raise TypeError(f"expected FusionResult or MassFunction, got {type(state).__name__}")
    constraints = [frame.parse(e) if isinstance(e, str) else e for e in new_empty]
    tightened = frame.constrain(*constraints)
    if tightened == frame:
        return state

    spec = resolve(transfer_rule)
    if isinstance(state, FusionResult) and state.sources:
        new_sources = [m.on_frame(tightened) for m in state.sources]
    else:
        m = state.combined if isinstance(state, FusionResult) else state
        new_sources = [m.on_frame(tightened), MassFunction.vacuous(tightened)]
    result = spec.combine(new_sources, dict(params))
    if isinstance(result, MassFunction):
        result = FusionResult(result, ConflictReport(0.0, ()), rule=transfer_rule)
    warnings = list(result.warnings)
    leftover = result.combined.mass(tightened.empty())
    if leftover > _EPS and not any("empty set" in w for w in warnings):
        warnings.append(
            f"transfer rule {transfer_rule!r} left mass on the empty set: {leftover:.6f}"
        )
    total = result.combined.total
    if total < 1.0 - 1e-9:
        warnings.append(f"incomplete: sum={total:.6f}")
    return FusionResult(
        result.combined, result.conflict, rule=result.rule or transfer_rule,
        warnings=tuple(warnings), sources=tuple(new_sources),
        signed_masses=result.signed_masses,
    )


# -- quasi-associative combining ---------------------------------------------

# Rules whose transfer step needs only the running conjunctive product
# (plus the source list for column statistics).
_STORE_RULES = frozenset({
    "conjunctive", "dsmc", "smets", "yager", "dempster", "wo", "inagaki",
    "pcr1", "wao",
})
# Conjunctive-based rules whose transfer needs the per-product conflict
# structure; they are recomputed from the stored source list.
_RECOMPUTE_RULES = frozenset({
    "dubois-prade", "dsmh", "pcr2", "pcr3", "pcr4", "pcr5",
    "minc-a", "minc-b",
})


class QuasiAssociativeState:
    """Running conjunctive product over a growing source sequence.

    The stored product makes conjunctive-based rules incremental: add a
    source, then re-apply the rule's transfer step to the store.  The
    sources themselves are kept for rules whose transfer step needs
    them.
    """

    __slots__ = ("frame", "sources", "product")

    def __init__(self, frame, sources, product):
        self.frame = frame
        self.sources = tuple(sources)
        self.product = product

    @classmethod
    def start(cls, m):
        return cls(m.frame, (m,), m)

    def append(self, m):
        """The state extended by one source; vacuous appends are no-ops
        on the stored product (products with full ignorance keep every
        landing)."""
        if m.frame != self.frame:
            raise FrameMismatchError("new source over a different frame")
        product = conjunctive(self.product, m).combined
        return QuasiAssociativeState(self.frame, self.sources + (m,), product)

    def __eq__(self, other):
        if not isinstance(other, QuasiAssociativeState):
            return NotImplemented
        return (self.frame == other.frame and self.sources == other.sources
                and self.product == other.product)

    def __repr__(self):
        return f"QuasiAssociativeState({len(self.sources)} sources)"


def _transfer_from_store(state, rule, params):
    """Apply a rule's conflict transfer to the stored conjunctive."""
    from . import classic

    frame = state.frame
    product = state.product
    empty = frame.empty()
    k12 = product.mass(empty)
    if rule in ("conjunctive", "dsmc", "smets"):
        return FusionResult(product, ConflictReport(k12, ()), rule=rule)
    if rule == "dempster":
        surviving = {el: v for el, v in product.items() if not el.is_empty}
        total = math.fsum(surviving.values())
        if total <= _EPS:
            from .errors import TotalConflictError

            raise TotalConflictError(
                f"total conflict (k12={k12:.12g}); Dempster's rule is undefined"
            )
        combined = MassFunction(frame, {el: v / total for el, v in surviving.items()})
        return FusionResult(combined, ConflictReport(k12, ()), rule=rule)
    if rule == "yager":
        ignorance = frame.ignorance()
        if ignorance.is_empty:
            raise RuleError("total ignorance is empty under this model")
        acc = {el: v for el, v in product.items() if not el.is_empty}
        if k12 > 0.0:
            _add(acc, ignorance, k12)
        return FusionResult(MassFunction(frame, acc), ConflictReport(k12, ()), rule=rule)
    if rule == "wo":
        weights = params.get("weights")
        if weights is None:
            raise ValueError("wo needs element weights")
        surviving = MassFunction(
            frame, {el: v for el, v in product.items() if not el.is_empty}
        )
        # Reuse the rule itself: combining with the vacuous bba leaves
        # the product unchanged and applies the weight split to k12.
        acc = {el: v for el, v in surviving.items()}
        witems = []
        for el, w in weights.items():
            el = frame.parse(el) if isinstance(el, str) else el
            witems.append((el, float(w)))
        wsum = math.fsum(w for _, w in witems)
        if abs(wsum - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {wsum}")
        for el, w in witems:
            if w > 0.0 and k12 > 0.0:
                _add(acc, frame.empty() if el.is_empty else el, w * k12)
        return FusionResult(MassFunction(frame, acc), ConflictReport(k12, ()), rule=rule)
    if rule == "inagaki":
        p = params.get("p")
        if p is None:
            raise ValueError("inagaki needs the parameter p")
        ignorance = frame.ignorance()
        if ignorance.is_empty:
            raise RuleError("total ignorance is empty under this model")
        m_ign = product.mass(ignorance)
        bound_den = 1.0 - k12 - m_ign
        p = float(p)
        if p < 0.0 or (bound_den > _EPS and p > 1.0 / bound_den + _EPS):
            limit = "unbounded" if bound_den <= _EPS else f"{1.0 / bound_den:.12g}"
            raise ValueError(f"p must lie in [0, {limit}], got {p}")
        scale = 1.0 + p * k12
        acc = {}
        for el, v in product.items():
            if el.is_empty or el == ignorance:
                continue
            acc[el] = v * scale
        acc[ignorance] = scale * m_ign + (scale - p) * k12
        return FusionResult(MassFunction(frame, acc), ConflictReport(k12, ()), rule=rule)
    # pcr1 and wao redistribute by column statistics over the sources.
    matrix = MassMatrix(state.sources)
    acc = {el: v for el, v in product.items() if not el.is_empty}
    if rule == "pcr1":
        entries = [
            (el, c) for el, c in matrix.columns().items()
            if not el.is_empty and c > 0.0
        ]
        d12 = math.fsum(c for _, c in entries)
        if k12 > 0.0 and d12 > _EPS:
            for el, c in entries:
                _add(acc, el, k12 * c / d12)
        return FusionResult(MassFunction(frame, acc), ConflictReport(k12, ()), rule=rule)
    if rule == "wao":
        s = len(state.sources)
        warnings = []
        lost = 0.0
        if k12 > 0.0:
            for el, c in matrix.columns().items():
                w = c / s
                if w <= 0.0:
                    continue
                if el.is_empty:
                    lost += w * k12
                else:
                    _add(acc, el, w * k12)
        if lost > _EPS:
            warnings.append(f"column weight on empty elements lost: {lost:.6f}")
        return FusionResult(
            MassFunction(frame, acc), ConflictReport(k12, ()), rule=rule,
            warnings=tuple(warnings),
        )
    raise RuleError(f"rule {rule!r} has no store-based transfer")


def quasi_associative_combine(state, new, rule="dempster", **params):
    """Add one source to the running state and re-apply the rule.

    Returns (new state, FusionResult).  Equals the direct s-ary
    computation for store-based rules; per-product rules are recomputed
    over the stored source list.
    """
    from .registry import resolve

    if not isinstance(state, QuasiAssociativeState):
        state = QuasiAssociativeState.start(state)
    if rule not in _STORE_RULES and rule not in _RECOMPUTE_RULES:
        raise RuleError(
            f"rule {rule!r} is not conjunctive-based; incremental combining is undefined"
        )
    state = state.append(new)
    if rule in _STORE_RULES:
        result = _transfer_from_store(state, rule, params)
    else:
        spec = resolve(rule)
        result = spec.combine(list(state.sources), dict(params))
        if isinstance(result, MassFunction):
            result = FusionResult(result, ConflictReport(0.0, ()), rule=rule)
    return state, FusionResult(
        result.combined, result.conflict, rule=result.rule or rule,
        warnings=result.warnings, sources=state.sources,
        signed_masses=result.signed_masses,
    )
