"""Classic combination rules: conjunctive and disjunctive families.

Every rule takes two or more sources over one frame and returns a
FusionResult whose conflict report accounts for all redistributed or
retained conflicting mass.  Sources may be subnormal or carry mass on
the empty element; that mass flows through the product expansions
literally.
"""

import itertools
import math

from .errors import FrameMismatchError, RuleError, TotalConflictError
from .frame import Element, parse_expression_text
from .mass import MassFunction
from .result import ConflictReport, FusionResult, Partial

_CONFLICT_EPS = 1e-12


def _common_frame(sources, minimum=2):
    if len(sources) < minimum:
        raise ValueError(f"need at least {minimum} sources, got {len(sources)}")
    frame = sources[0].frame
    for m in sources[1:]:
        if m.frame != frame:
            raise FrameMismatchError("sources over different frames")
    return frame


def _expand(sources):
    """Yield (operand tuple, product mass) over all focal combinations."""
    focal_lists = [list(m.items()) for m in sources]
    for combo in itertools.product(*focal_lists):
        mass = 1.0
        for _, v in combo:
            mass *= v
        if mass == 0.0:
            continue
        yield tuple(el for el, _ in combo), mass


def _add(acc, element, mass):
    acc[element] = acc.get(element, 0.0) + mass


def _intersection_element(els):
    """The operands' intersection with an absorption-reduced expression."""
    atoms = els[0].atoms
    for el in els[1:]:
        atoms = atoms & el.atoms
    expr = ("and", tuple(el.expr for el in els))
    return Element(els[0].frame, atoms, expr).canonical()


def _union_element(els):
    atoms = els[0].atoms
    for el in els[1:]:
        atoms = atoms | el.atoms
    expr = ("or", tuple(el.expr for el in els))
    return Element(els[0].frame, atoms, expr).canonical()


def _add_landing(acc, frame, element, mass):
    # Pool every empty landing under the one canonical empty element so
    # the combined bba shows a single conflict row.
    _add(acc, frame.empty() if element.is_empty else element, mass)


def _conflict_operands(els, ignorance):
    """Non-empty operands of a conflicting product that may receive mass.

    Total ignorance is exonerated whenever any other non-empty operand
    exists: it intersects everything, so it never causes the emptiness,
    and charging it would break the vacuous source's neutrality.
    """
    nonempty = [el for el in els if not el.is_empty]
    narrowed = [el for el in nonempty if el != ignorance]
    return narrowed or nonempty


def _result(frame, acc, partials, rule, sources, warnings=(), k12=None):
    # k12 is the total conjunctive mass that landed empty.  Rules that
    # retain conflict on the empty element can leave it implicit; rules
    # that move it elsewhere must pass what they measured.
    empty = frame.empty()
    if k12 is None:
        k12 = acc.get(empty, 0.0)
    combined = MassFunction(frame, acc)
    return FusionResult(
        combined,
        ConflictReport(k12, tuple(partials)),
        rule=rule,
        warnings=tuple(warnings),
        sources=tuple(sources),
    )


# -- conjunctive family -------------------------------------------------

def conjunctive(*sources):
    """Intersect focal elements pairwise; conflict stays on the empty set."""
    frame = _common_frame(sources)
    acc = {}
    partials = []
    empty = frame.empty()
    for els, p in _expand(sources):
        landing = _intersection_element(els)
        _add_landing(acc, frame, landing, p)
        if landing.is_empty:
            partials.append(Partial(els, p, ((empty, p),), note="retained"))
    return _result(frame, acc, partials, "conjunctive", sources)


def dsm_classic(*sources):
    """Conjunctive combination on the free model: intersections are kept
    as elements in their own right, so nothing needs transferring."""
    result = conjunctive(*sources)
    return FusionResult(
        result.combined, result.conflict, rule="dsmc", sources=result.sources
    )


def smets_tbm(*sources):
    """Open-world conjunctive rule: conflicting mass stays on the empty set."""
    result = conjunctive(*sources)
    warnings = ()
    if result.conflict.k12 > 0.0:
        warnings = (f"open-world mass on the empty set: {result.conflict.k12:.6f}",)
    return FusionResult(
        result.combined, result.conflict, rule="smets",
        warnings=warnings, sources=result.sources,
    )


def dempster(*sources):
    """Conjunctive rule with conflict normalized away.

    Division is by the surviving (non-empty) mass, which equals
    1 - k12 for normal sources but stays meaningful for subnormal ones.
    Total conflict has no defined result and raises.
    """
    frame = _common_frame(sources)
    acc = {}
    partials = []
    k12 = 0.0
    for els, p in _expand(sources):
        landing = _intersection_element(els)
        if landing.is_empty:
            k12 += p
            partials.append(
                Partial(els, p, ((None, 0.0),), basis="normalization", note="divided out")
            )
        else:
            _add(acc, landing, p)
    total = math.fsum(acc.values())
    if total <= _CONFLICT_EPS:
        raise TotalConflictError(f"total conflict: k12={k12:g}; the rule is undefined")
    scale = 1.0 / total
    acc = {el: v * scale for el, v in acc.items()}
    return _result(frame, acc, partials, "dempster", sources, k12=k12)


def yager(*sources):
    """Conjunctive rule with all conflicting mass moved to total ignorance."""
    frame = _common_frame(sources)
    ignorance = frame.ignorance()
    if ignorance.is_empty:
        raise RuleError("total ignorance is empty under this model")
    acc = {}
    partials = []
    k12 = 0.0
    for els, p in _expand(sources):
        landing = _intersection_element(els)
        if landing.is_empty:
            k12 += p
            _add(acc, ignorance, p)
            partials.append(Partial(els, p, ((ignorance, p),), note="to ignorance"))
        else:
            _add(acc, landing, p)
    return _result(frame, acc, partials, "yager", sources, k12=k12)


def dubois_prade(*sources):
    """Conjunctive rule with conflicting products moved to the operands' union.

    The union is taken over the operands responsible for the conflict:
    a vacuous operand contributes nothing (keeping the vacuous source
    neutral).  When the union itself is empty under the model the mass
    has nowhere admissible to go and is lost; the result is then
    subnormal and the loss is flagged.
    """
    frame = _common_frame(sources)
    ignorance = frame.ignorance()
    acc = {}
    partials = []
    lost = 0.0
    k12 = 0.0
    for els, p in _expand(sources):
        landing = _intersection_element(els)
        if not landing.is_empty:
            _add(acc, landing, p)
            continue
        k12 += p
        recipients = _conflict_operands(els, ignorance)
        union = _union_element(recipients) if recipients else frame.empty()
        if union.is_empty:
            lost += p
            partials.append(Partial(els, p, ((None, p),), note="union also empty; lost"))
        else:
            _add(acc, union, p)
            partials.append(Partial(els, p, ((union, p),), note="to union"))
    warnings = []
    if lost > 0.0:
        warnings.append(f"mass lost on fully empty products: {lost:.6f}")
    return _result(frame, acc, partials, "dubois-prade", sources, warnings, k12=k12)


def dsm_hybrid(*sources):
    """Conjunctive rule adapted to emptiness constraints.

    Non-empty intersections keep their mass.  A product of sources that
    are themselves empty goes to the union of their disjunctive forms.
    Any other empty intersection goes to the disjunctive form of its
    absorption-reduced expression.  Either way total ignorance catches
    what is left, and only a fully degenerate model leaks to the empty
    set (open world, flagged).
    """
    frame = _common_frame(sources)
    ignorance = frame.ignorance()
    empty = frame.empty()
    acc = {}
    partials = []
    open_world = 0.0
    k12 = 0.0
    for els, p in _expand(sources):
        landing = _intersection_element(els)
        if not landing.is_empty:
            _add(acc, landing, p)
            continue
        k12 += p
        if all(el.is_empty for el in els):
            dest = _union_element([el.disjunctive() for el in els])
            note = "operands empty; to joint disjunctive form"
        else:
            dest = landing.disjunctive()
            note = "to disjunctive form of the conflict"
        if dest.is_empty:
            dest, note = ignorance, note + "; fell back to ignorance"
        if dest.is_empty:
            _add(acc, empty, p)
            open_world += p
            partials.append(Partial(els, p, ((empty, p),), note="model fully degenerate"))
        else:
            _add(acc, dest, p)
            partials.append(Partial(els, p, ((dest, p),), note=note))
    warnings = []
    if open_world > 0.0:
        warnings.append(f"open-world mass on the empty set: {open_world:.6f}")
    return _result(frame, acc, partials, "dsmh", sources, warnings, k12=k12)


def weighted_operator(*sources, weights):
    """Conjunctive rule with conflict split by caller-chosen element weights.

    ``weights`` maps elements (the empty element allowed) to shares
    summing to one.  Putting the whole weight on the empty element
    recovers the open-world rule; on total ignorance, Yager's rule.
    """
    frame = _common_frame(sources)
    witems = []
    for el, w in weights.items():
        el = frame.parse(el) if isinstance(el, str) else el
        if el.frame != frame:
            raise FrameMismatchError("weight element from another frame")
        w = float(w)
        if not 0.0 <= w <= 1.0:
            raise ValueError(f"weight for {el.display} must be in [0, 1], got {w}")
        witems.append((el, w))
    wsum = math.fsum(w for _, w in witems)
    if abs(wsum - 1.0) > 1e-9:
        raise ValueError(f"weights must sum to 1, got {wsum}")
    acc = {}
    partials = []
    k12 = 0.0
    empties = []
    for els, p in _expand(sources):
        landing = _intersection_element(els)
        if landing.is_empty:
            k12 += p
            empties.append((els, p))
        else:
            _add(acc, landing, p)
    if k12 > 0.0:
        for el, w in witems:
            if w == 0.0:
                continue
            _add_landing(acc, frame, el, w * k12)
        for els, p in empties:
            shares = tuple((frame.empty() if el.is_empty else el, w * p)
                           for el, w in witems if w > 0.0)
            partials.append(Partial(els, p, shares, basis="declared weights"))
    return _result(frame, acc, partials, "wo", sources, k12=k12)


def inagaki(*sources, p):
    """Inagaki's parametrized family between Yager and Dempster.

    Every non-ignorance landing is scaled by (1 + p*k12); ignorance
    additionally receives (1 + p*k12 - p) * k12.  p = 0 is Yager's
    rule; when nothing lands on ignorance, p = 1/(1 - k12) is
    Dempster's.
    """
    frame = _common_frame(sources)
    ignorance = frame.ignorance()
    if ignorance.is_empty:
        raise RuleError("total ignorance is empty under this model")
    acc = {}
    partials = []
    k12 = 0.0
    for els, pm in _expand(sources):
        landing = _intersection_element(els)
        if landing.is_empty:
            k12 += pm
            partials.append(Partial(els, pm, (), basis="inagaki scaling"))
        else:
            _add(acc, landing, pm)
    m_ign = acc.get(ignorance, 0.0)
    bound_den = 1.0 - k12 - m_ign
    p = float(p)
    if p < 0.0 or (bound_den > _CONFLICT_EPS and p > 1.0 / bound_den + _CONFLICT_EPS):
        limit = "unbounded" if bound_den <= _CONFLICT_EPS else f"{1.0 / bound_den:.12g}"
        raise ValueError(f"p must lie in [0, {limit}], got {p}")
    scale = 1.0 + p * k12
    out = {}
    for el, v in acc.items():
        if el == ignorance:
            continue
        out[el] = v * scale
    # Non-negative for every p inside the validated range; at the upper
    # bound the cancellation can leave -1ulp, which must not reach the
    # bba constructor.
    out[ignorance] = max(0.0, scale * m_ign + (scale - p) * k12)
    return _result(frame, out, partials, "inagaki", sources, k12=k12)


# -- disjunctive family ----------------------------------------------------

def disjunctive(*sources):
    """Combine by unions: right when at least one source is reliable."""
    frame = _common_frame(sources)
    acc = {}
    partials = []
    for els, p in _expand(sources):
        landing = _union_element(els)
        _add_landing(acc, frame, landing, p)
        if landing.is_empty:
            partials.append(Partial(els, p, ((frame.empty(), p),), note="all operands empty"))
    return _result(frame, acc, partials, "disjunctive", sources)


def exclusive_disjunctive(*sources):
    """Combine by symmetric difference: exactly one source is right.

    Products of semantically equal operands land on the empty set and
    are flagged as degenerate rather than silently dropped.
    """
    frame = _common_frame(sources)
    acc = {}
    partials = []
    for els, p in _expand(sources):
        atoms = els[0].atoms
        for el in els[1:]:
            atoms = atoms ^ el.atoms
        landing = Element(frame, atoms, ("xor", tuple(el.expr for el in els)))
        _add_landing(acc, frame, landing, p)
        if landing.is_empty:
            partials.append(
                Partial(els, p, ((frame.empty(), p),), note="xor-degenerate")
            )
    return _result(frame, acc, partials, "xor", sources)


# -- mixed connective combinations ----------------------------------------

def parse_source_expr(text):
    """Parse a source-combination expression such as "(1&2)|3".

    Leaves are 1-based source positions; connectives are the same as in
    element expressions, complement excluded.
    """
    raw = parse_expression_text(text)

    def convert(node):
        op = node[0]
        if op == "label":
            if not node[1].isdigit() or int(node[1]) < 1:
                raise ValueError(f"source reference must be a positive integer, got {node[1]!r}")
            return ("src", int(node[1]))
        if op == "not":
            raise ValueError("complement has no meaning over sources")
        if op == "empty":
            raise ValueError("empty node has no meaning over sources")
        return (op, tuple(convert(child) for child in node[1]))

    return convert(raw)


def _source_expr_leaves(expr, acc):
    if expr[0] == "src":
        acc.append(expr[1])
    else:
        for child in expr[1]:
            _source_expr_leaves(child, acc)


def _eval_source_expr(expr, els):
    if expr[0] == "src":
        return els[expr[1] - 1]
    kids = [_eval_source_expr(child, els) for child in expr[1]]
    acc = kids[0]
    for k in kids[1:]:
        if expr[0] == "and":
            acc = acc & k
        elif expr[0] == "or":
            acc = acc | k
        else:
            acc = acc ^ k
    return acc


def mixed(sources, expr):
    """Combine sources along a caller-supplied connective tree.

    The tree's leaves must reference each provided source exactly once.
    """
    if isinstance(expr, str):
        expr = parse_source_expr(expr)
    sources = tuple(sources)
    frame = _common_frame(sources)
    leaves = []
    _source_expr_leaves(expr, leaves)
    if sorted(leaves) != list(range(1, len(sources) + 1)):
        raise ValueError(
            f"expression must use each of sources 1..{len(sources)} exactly once, got {sorted(leaves)}"
        )
    acc = {}
    partials = []
    for els, p in _expand(sources):
        landing = _eval_source_expr(expr, els).canonical()
        _add_landing(acc, frame, landing, p)
        if landing.is_empty:
            partials.append(Partial(els, p, ((frame.empty(), p),), note="empty landing"))
    return _result(frame, acc, partials, "mixed", sources)


def conditional(m, hypothesis, rule="conjunctive", **params):
    """Condition a bba on a hypothesis by fusing it with certainty in it."""
    if hypothesis.frame != m.frame:
        raise FrameMismatchError("hypothesis from another frame")
    if hypothesis.is_empty:
        raise ValueError("cannot condition on an empty hypothesis")
    from .registry import resolve

    spec = resolve(rule)
    certain = MassFunction.certain(hypothesis)
    result = spec.combine([m, certain], dict(params))
    if isinstance(result, MassFunction):
        result = FusionResult(result, ConflictReport(0.0), rule=rule)
    return FusionResult(
        result.combined, result.conflict, rule=f"conditional[{rule}]",
        warnings=result.warnings, sources=(m, certain),
        signed_masses=result.signed_masses,
    )


# -- mixing family -----------------------------------------------------------

def murphy_average(*sources):
    """The plain average of the sources' masses."""
    frame = _common_frame(sources)
    s = len(sources)
    acc = {}
    for m in sources:
        for el, v in m.items():
            _add(acc, el, v / s)
    return MassFunction(frame, acc)


def weighted_mixing(sources, weights):
    """Convex mixing of sources with caller-chosen importance weights."""
    sources = tuple(sources)
    frame = _common_frame(sources, minimum=1)
    weights = [float(w) for w in weights]
    if len(weights) != len(sources):
        raise ValueError(f"{len(sources)} sources but {len(weights)} weights")
    if any(w < 0.0 for w in weights):
        raise ValueError("mixing weights must be non-negative")
    wsum = math.fsum(weights)
    if wsum <= 0.0:
        raise ValueError("mixing weights must not all be zero")
    acc = {}
    for m, w in zip(sources, weights):
        if w == 0.0:
            continue
        for el, v in m.items():
            _add(acc, el, v * w / wsum)
    return MassFunction(frame, acc)
